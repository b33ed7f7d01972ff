#include "ata/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace ata {

namespace {

struct Token {
    enum class Kind { Ident, Number, Rational, Symbol, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }
    bool at(std::string_view sym) const {
        return current_.kind == Token::Kind::Symbol && current_.text == sym;
    }
    bool at_ident(std::string_view word) const {
        return current_.kind == Token::Kind::Ident && current_.text == word;
    }
    Token expect_symbol(std::string_view sym) {
        if (!at(sym))
            throw ParseError("expected '" + std::string(sym) + "', got '" +
                                 current_.text + "'",
                             current_.line, current_.col);
        return take();
    }
    Token expect_ident() {
        if (current_.kind != Token::Kind::Ident)
            throw ParseError("expected identifier, got '" + current_.text + "'",
                             current_.line, current_.col);
        return take();
    }

private:
    void advance() {
        skip_space();
        current_ = Token{};
        current_.line = line_;
        current_.col = col_;
        if (pos_ >= text_.size()) {
            current_.kind = Token::Kind::End;
            current_.text = "<end>";
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_' || text_[pos_] == '.'))
                step();
            current_.kind = Token::Kind::Ident;
            current_.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '.' || text_[pos_] == '/'))
                step();
            current_.kind = Token::Kind::Number;
            current_.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        // multi-char symbols
        static const char* two[] = {"->", "<=", ">=", "!="};
        for (const char* sym : two) {
            if (text_.substr(pos_, 2) == sym) {
                current_.kind = Token::Kind::Symbol;
                current_.text = sym;
                step();
                step();
                return;
            }
        }
        current_.kind = Token::Kind::Symbol;
        current_.text = std::string(1, c);
        step();
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') step();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                step();
            } else {
                break;
            }
        }
    }

    void step() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_;
};

long long parse_constant(Lexer& lex) {
    Token t = lex.take();
    if (t.kind != Token::Kind::Number || t.text.find('.') != std::string::npos ||
        t.text.find('/') != std::string::npos)
        throw ParseError("expected a nonnegative integer constant, got '" + t.text +
                             "'",
                         t.line, t.col);
    return std::stoll(t.text);
}

// guard := gor ; gor := gand ('|' gand)* ; gand := gprim ('&' gprim)*
// gprim := '!' gprim | '(' gor ')' | 'tt' | x <op> NUM
GuardExpr parse_gor(Lexer& lex, const std::string& clock);

GuardExpr parse_gprim(Lexer& lex, const std::string& clock) {
    if (lex.at("!")) {
        lex.take();
        return GuardExpr::neg(parse_gprim(lex, clock));
    }
    if (lex.at("(")) {
        lex.take();
        GuardExpr inner = parse_gor(lex, clock);
        lex.expect_symbol(")");
        return inner;
    }
    if (lex.at_ident("tt")) {
        lex.take();
        return GuardExpr::tt();
    }
    Token name = lex.expect_ident();
    if (name.text != clock)
        throw ParseError("unknown clock '" + name.text + "'", name.line, name.col);
    Token op = lex.take();
    using K = GuardExpr::Kind;
    K kind;
    if (op.text == "<") kind = K::Lt;
    else if (op.text == "<=") kind = K::Le;
    else if (op.text == "=") kind = K::Eq;
    else if (op.text == "!=") kind = K::Ne;
    else if (op.text == ">") kind = K::Gt;
    else if (op.text == ">=") kind = K::Ge;
    else
        throw ParseError("expected comparison operator, got '" + op.text + "'",
                         op.line, op.col);
    return GuardExpr::atom(kind, parse_constant(lex));
}

GuardExpr parse_gand(Lexer& lex, const std::string& clock) {
    GuardExpr e = parse_gprim(lex, clock);
    while (lex.at("&")) {
        lex.take();
        e = GuardExpr::conj(std::move(e), parse_gprim(lex, clock));
    }
    return e;
}

GuardExpr parse_gor(Lexer& lex, const std::string& clock) {
    GuardExpr e = parse_gand(lex, clock);
    while (lex.at("|")) {
        lex.take();
        e = GuardExpr::disj(std::move(e), parse_gand(lex, clock));
    }
    return e;
}

} // namespace

GuardExpr parse_guard_expr(std::string_view text) {
    Lexer lex(text);
    GuardExpr e = parse_gor(lex, "x");
    if (lex.peek().kind != Token::Kind::End)
        throw ParseError("trailing input after guard", lex.peek().line,
                         lex.peek().col);
    return e;
}

namespace {

struct AtaBuilder {
    std::vector<std::string> names; // location registry, first-mention order
    std::map<std::string, LocId> locs;

    LocId loc(const Token& t) {
        auto it = locs.find(t.text);
        if (it != locs.end()) return it->second;
        LocId q = static_cast<LocId>(names.size());
        names.push_back(t.text);
        locs.emplace(t.text, q);
        return q;
    }
};

// formula := for ; for := fand ('|' fand)* ; fand := fprim ('&' fprim)*
// fprim := '(' IDENT [',' reset] ')' | '(' for ')'
PosBool parse_for(Lexer& lex, AtaBuilder& b);

PosBool parse_fprim(Lexer& lex, AtaBuilder& b) {
    Token open = lex.expect_symbol("(");
    if (lex.peek().kind == Token::Kind::Ident && !lex.at_ident("reset")) {
        // Could be a leaf "(q)" / "(q,reset)"; anything else restarts as a
        // nested formula, which always begins with '('.
        Token name = lex.take();
        if (lex.at(")")) {
            lex.take();
            return PosBool::leaf(b.loc(name), false);
        }
        if (lex.at(",")) {
            lex.take();
            Token r = lex.expect_ident();
            if (r.text != "reset")
                throw ParseError("expected 'reset'", r.line, r.col);
            lex.expect_symbol(")");
            return PosBool::leaf(b.loc(name), true);
        }
        throw ParseError("expected ')' or ',reset' after location", open.line,
                         open.col);
    }
    PosBool inner = parse_for(lex, b);
    lex.expect_symbol(")");
    return inner;
}

PosBool parse_fand(Lexer& lex, AtaBuilder& b) {
    std::vector<PosBool> kids;
    kids.push_back(parse_fprim(lex, b));
    while (lex.at("&")) {
        lex.take();
        kids.push_back(parse_fprim(lex, b));
    }
    return PosBool::conj(std::move(kids));
}

PosBool parse_for(Lexer& lex, AtaBuilder& b) {
    std::vector<PosBool> kids;
    kids.push_back(parse_fand(lex, b));
    while (lex.at("|")) {
        lex.take();
        kids.push_back(parse_fand(lex, b));
    }
    return PosBool::disj(std::move(kids));
}

} // namespace

Ata parse_ata(std::string_view text) {
    Lexer lex(text);
    AtaBuilder b;
    std::string clock = "x";
    std::vector<std::string> alphabet;
    LocId initial = -1;
    bool saw_alphabet = false;

    Token kw = lex.expect_ident();
    if (kw.text != "ata") throw ParseError("expected 'ata'", kw.line, kw.col);
    lex.expect_symbol("{");

    struct PendingRule {
        LocId loc;
        Token letter;
        GuardExpr guard;
        PosBool formula;
        int line;
    };
    std::vector<PendingRule> pending;
    std::vector<LocId> accepting_ids;

    while (!lex.at("}")) {
        if (lex.peek().kind == Token::Kind::End)
            throw ParseError("unterminated 'ata' block", lex.peek().line,
                             lex.peek().col);
        if (lex.at_ident("clock")) {
            lex.take();
            clock = lex.expect_ident().text;
            lex.expect_symbol(";");
        } else if (lex.at_ident("locations")) {
            // optional: pins location ids to the declared order
            lex.take();
            while (!lex.at(";")) b.loc(lex.expect_ident());
            lex.take();
        } else if (lex.at_ident("alphabet")) {
            lex.take();
            while (!lex.at(";")) {
                Token t = lex.expect_ident();
                if (std::find(alphabet.begin(), alphabet.end(), t.text) !=
                    alphabet.end())
                    throw ParseError("duplicate letter '" + t.text + "'", t.line,
                                     t.col);
                alphabet.push_back(t.text);
            }
            lex.take();
            saw_alphabet = true;
        } else if (lex.at_ident("init")) {
            lex.take();
            initial = b.loc(lex.expect_ident());
            lex.expect_symbol(";");
        } else if (lex.at_ident("accepting")) {
            lex.take();
            while (!lex.at(";")) accepting_ids.push_back(b.loc(lex.expect_ident()));
            lex.take();
        } else {
            // rule: LOC LETTER '[' guard ']' -> formula ';'
            Token loc_tok = lex.expect_ident();
            LocId q = b.loc(loc_tok);
            Token letter_tok = lex.expect_ident();
            lex.expect_symbol("[");
            GuardExpr guard = parse_gor(lex, clock);
            lex.expect_symbol("]");
            lex.expect_symbol("->");
            PosBool formula = parse_for(lex, b);
            lex.expect_symbol(";");
            pending.push_back({q, letter_tok, std::move(guard), std::move(formula),
                               loc_tok.line});
        }
    }
    lex.take(); // '}'

    if (!saw_alphabet)
        throw ParseError("missing 'alphabet' declaration", 1, 1);
    if (initial < 0) throw ParseError("missing 'init' declaration", 1, 1);

    Ata a;
    a.alphabet = std::move(alphabet);
    for (const auto& name : b.names) a.add_location(name, false);
    a.initial = initial;
    for (LocId q : accepting_ids) a.accepting[q] = true;
    for (auto& p : pending) {
        LetterId l = a.find_letter(p.letter.text);
        if (l < 0)
            throw ParseError("letter '" + p.letter.text + "' not in alphabet",
                             p.letter.line, p.letter.col);
        Rule r{normalize_guard(p.guard), p.guard, p.formula, p.line};
        a.add_rule(p.loc, l, std::move(r));
    }
    return a;
}

namespace {

void print_formula(const PosBool& f, const Ata& a, std::ostringstream& out,
                   int parent_prec) {
    // precedence: Or = 1, And = 2, leaf = 3
    if (f.kind == PosBool::Kind::Leaf) {
        out << "(" << a.locations[f.loc] << (f.reset ? ",reset)" : ")");
        return;
    }
    int prec = f.kind == PosBool::Kind::And ? 2 : 1;
    bool paren = prec < parent_prec;
    if (paren) out << "(";
    for (size_t i = 0; i < f.kids.size(); ++i) {
        if (i) out << (f.kind == PosBool::Kind::And ? " & " : " | ");
        print_formula(f.kids[i], a, out, prec);
    }
    if (paren) out << ")";
}

} // namespace

std::string print_ata(const Ata& a) {
    std::ostringstream out;
    out << "ata {\n";
    out << "  clock x;\n";
    out << "  alphabet";
    for (const auto& l : a.alphabet) out << " " << l;
    out << ";\n";
    out << "  locations";
    for (const auto& q : a.locations) out << " " << q;
    out << ";\n";
    out << "  init " << a.locations[a.initial] << ";\n";
    out << "  accepting";
    for (size_t q = 0; q < a.locations.size(); ++q)
        if (a.accepting[q]) out << " " << a.locations[q];
    out << ";\n";
    for (size_t q = 0; q < a.locations.size(); ++q) {
        for (size_t l = 0; l < a.alphabet.size(); ++l) {
            for (const auto& r : a.rules[q][l]) {
                out << "  " << a.locations[q] << " " << a.alphabet[l] << " ["
                    << r.guard_text.to_string() << "] -> ";
                std::ostringstream ftext;
                print_formula(r.formula, a, ftext, 0);
                out << ftext.str() << ";\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

TimedWord parse_timed_word(std::string_view text) {
    TimedWord w;
    int line_no = 1;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line_no;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        std::string_view tok = text.substr(start, i - start);
        auto at = tok.find('@');
        if (at == std::string_view::npos || at == 0 || at + 1 >= tok.size())
            throw ParseError("expected 'letter@time', got '" + std::string(tok) + "'",
                             line_no, 1);
        auto time = rat_from_string(tok.substr(at + 1));
        if (!time)
            throw ParseError("malformed timestamp in '" + std::string(tok) + "'",
                             line_no, 1);
        w.items.push_back({std::string(tok.substr(0, at)), *time});
    }
    try {
        validate_timed_word(w);
    } catch (const Error& e) {
        throw ParseError(e.what(), line_no, 1);
    }
    return w;
}

std::string print_timed_word(const TimedWord& w) {
    return w.to_string();
}

} // namespace ata
