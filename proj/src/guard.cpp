#include "ata/guard.hpp"

#include <algorithm>
#include <sstream>

namespace ata {

// Set algebra runs over the elementary pieces w.r.t. a bound M: points
// {0}..{M}, open gaps (0,1)..(M-1,M) and the tail (M,inf). Every guard
// with constants <= M is a union of pieces, so membership of one probe
// value per piece determines the whole set.

namespace {

// piece 2k = {k}, piece 2k+1 = (k,k+1) for k < M, piece 2M+1 = (M,inf)
Rat piece_probe(long long piece, long long bound) {
    long long k = piece / 2;
    if (piece % 2 == 0) return Rat(k);
    (void)bound;
    return Rat(2 * k + 1, 2);
}

std::vector<bool> guard_pieces(const Guard& g, long long bound) {
    std::vector<bool> bits(static_cast<size_t>(2 * bound + 2));
    for (size_t i = 0; i < bits.size(); ++i)
        bits[i] = g.contains(piece_probe(static_cast<long long>(i), bound));
    return bits;
}

Guard guard_from_pieces(const std::vector<bool>& bits, long long bound) {
    std::vector<Interval> parts;
    size_t i = 0;
    const size_t n = bits.size();
    while (i < n) {
        if (!bits[i]) { ++i; continue; }
        Interval iv;
        long long k = static_cast<long long>(i) / 2;
        iv.lo = k;
        iv.lo_open = (i % 2 == 1);
        size_t j = i;
        while (j + 1 < n && bits[j + 1]) ++j;
        if (j == n - 1) {
            iv.hi_unbounded = true;
        } else {
            long long m = static_cast<long long>(j) / 2;
            if (j % 2 == 0) {
                iv.hi = m;
                iv.hi_open = false;
            } else {
                iv.hi = m + 1;
                iv.hi_open = true;
            }
        }
        parts.push_back(iv);
        i = j + 1;
    }
    (void)bound;
    return Guard::make(parts);
}

long long interval_max_constant(const Interval& iv) {
    long long m = iv.lo;
    if (!iv.hi_unbounded) m = std::max(m, iv.hi);
    return m;
}

long long raw_bound(const std::vector<Interval>& raw) {
    long long m = 0;
    for (const auto& iv : raw) m = std::max(m, interval_max_constant(iv));
    return m;
}

bool interval_contains(const Interval& iv, const Rat& v) {
    Rat lo(iv.lo);
    if (iv.lo_open ? !(v > lo) : !(v >= lo)) return false;
    if (iv.hi_unbounded) return true;
    Rat hi(iv.hi);
    return iv.hi_open ? v < hi : v <= hi;
}

} // namespace

Guard Guard::empty_set() { return Guard{}; }

Guard Guard::full() {
    Interval iv;
    iv.lo = 0;
    iv.lo_open = false;
    iv.hi_unbounded = true;
    Guard g;
    g.parts_.push_back(iv);
    return g;
}

Guard Guard::point(long long c) {
    Interval iv;
    iv.lo = c;
    iv.lo_open = false;
    iv.hi = c;
    iv.hi_open = false;
    Guard g;
    g.parts_.push_back(iv);
    return g;
}

Guard Guard::make(const std::vector<Interval>& raw) {
    // Membership probe against the raw list, then reassemble canonically.
    long long bound = raw_bound(raw);
    std::vector<bool> bits(static_cast<size_t>(2 * bound + 2), false);
    for (size_t i = 0; i < bits.size(); ++i) {
        Rat probe = piece_probe(static_cast<long long>(i), bound);
        for (const auto& iv : raw) {
            if (interval_contains(iv, probe)) { bits[i] = true; break; }
        }
    }
    std::vector<Interval> parts;
    size_t i = 0;
    const size_t n = bits.size();
    while (i < n) {
        if (!bits[i]) { ++i; continue; }
        Interval iv;
        long long k = static_cast<long long>(i) / 2;
        iv.lo = k;
        iv.lo_open = (i % 2 == 1);
        size_t j = i;
        while (j + 1 < n && bits[j + 1]) ++j;
        if (j == n - 1) {
            iv.hi_unbounded = true;
        } else {
            long long m = static_cast<long long>(j) / 2;
            if (j % 2 == 0) {
                iv.hi = m;
                iv.hi_open = false;
            } else {
                iv.hi = m + 1;
                iv.hi_open = true;
            }
        }
        parts.push_back(iv);
        i = j + 1;
    }
    Guard g;
    g.parts_ = std::move(parts);
    return g;
}

bool Guard::is_full() const {
    return parts_.size() == 1 && parts_[0].lo == 0 && !parts_[0].lo_open &&
           parts_[0].hi_unbounded;
}

bool Guard::contains(const Rat& v) const {
    for (const auto& iv : parts_)
        if (interval_contains(iv, v)) return true;
    return false;
}

long long Guard::max_constant() const {
    long long m = 0;
    for (const auto& iv : parts_) m = std::max(m, interval_max_constant(iv));
    return m;
}

Guard Guard::intersect(const Guard& other) const {
    long long bound = std::max(max_constant(), other.max_constant());
    auto a = guard_pieces(*this, bound);
    auto b = guard_pieces(other, bound);
    for (size_t i = 0; i < a.size(); ++i) a[i] = a[i] && b[i];
    return guard_from_pieces(a, bound);
}

Guard Guard::unite(const Guard& other) const {
    long long bound = std::max(max_constant(), other.max_constant());
    auto a = guard_pieces(*this, bound);
    auto b = guard_pieces(other, bound);
    for (size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
    return guard_from_pieces(a, bound);
}

Guard Guard::complement() const {
    long long bound = max_constant();
    auto a = guard_pieces(*this, bound);
    for (size_t i = 0; i < a.size(); ++i) a[i] = !a[i];
    return guard_from_pieces(a, bound);
}

std::string Guard::to_string() const {
    if (parts_.empty()) return "{}";
    std::ostringstream out;
    bool first = true;
    for (const auto& iv : parts_) {
        if (!first) out << " u ";
        first = false;
        if (!iv.hi_unbounded && iv.lo == iv.hi) {
            out << "{" << iv.lo << "}";
            continue;
        }
        out << (iv.lo_open ? "(" : "[") << iv.lo << ",";
        if (iv.hi_unbounded)
            out << "inf)";
        else
            out << iv.hi << (iv.hi_open ? ")" : "]");
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// GuardExpr
// ---------------------------------------------------------------------------

GuardExpr GuardExpr::tt() { return GuardExpr{}; }

GuardExpr GuardExpr::atom(Kind k, long long c) {
    GuardExpr e;
    e.kind = k;
    e.constant = c;
    return e;
}

GuardExpr GuardExpr::conj(GuardExpr a, GuardExpr b) {
    GuardExpr e;
    e.kind = Kind::And;
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
}

GuardExpr GuardExpr::disj(GuardExpr a, GuardExpr b) {
    GuardExpr e;
    e.kind = Kind::Or;
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
}

GuardExpr GuardExpr::neg(GuardExpr a) {
    GuardExpr e;
    e.kind = Kind::Not;
    e.kids.push_back(std::move(a));
    return e;
}

bool GuardExpr::is_atom() const {
    switch (kind) {
        case Kind::Lt: case Kind::Le: case Kind::Eq:
        case Kind::Ne: case Kind::Gt: case Kind::Ge:
            return true;
        default:
            return false;
    }
}

bool GuardExpr::eval(const Rat& v) const {
    Rat c(constant);
    switch (kind) {
        case Kind::True: return true;
        case Kind::Lt: return v < c;
        case Kind::Le: return v <= c;
        case Kind::Eq: return v == c;
        case Kind::Ne: return v != c;
        case Kind::Gt: return v > c;
        case Kind::Ge: return v >= c;
        case Kind::And: return kids[0].eval(v) && kids[1].eval(v);
        case Kind::Or: return kids[0].eval(v) || kids[1].eval(v);
        case Kind::Not: return !kids[0].eval(v);
    }
    return false;
}

long long GuardExpr::max_constant() const {
    if (is_atom()) return constant;
    long long m = 0;
    for (const auto& k : kids) m = std::max(m, k.max_constant());
    return m;
}

namespace {

const char* atom_op(GuardExpr::Kind k) {
    switch (k) {
        case GuardExpr::Kind::Lt: return "<";
        case GuardExpr::Kind::Le: return "<=";
        case GuardExpr::Kind::Eq: return "=";
        case GuardExpr::Kind::Ne: return "!=";
        case GuardExpr::Kind::Gt: return ">";
        case GuardExpr::Kind::Ge: return ">=";
        default: return "?";
    }
}

void expr_text(const GuardExpr& e, std::ostringstream& out, int parent_prec) {
    // precedence: Or = 1, And = 2, Not/atom = 3
    if (e.kind == GuardExpr::Kind::True) {
        out << "tt";
        return;
    }
    if (e.is_atom()) {
        out << "x" << atom_op(e.kind) << e.constant;
        return;
    }
    if (e.kind == GuardExpr::Kind::Not) {
        out << "!(";
        expr_text(e.kids[0], out, 0);
        out << ")";
        return;
    }
    int prec = e.kind == GuardExpr::Kind::And ? 2 : 1;
    bool paren = prec < parent_prec;
    if (paren) out << "(";
    expr_text(e.kids[0], out, prec);
    out << (e.kind == GuardExpr::Kind::And ? " & " : " | ");
    expr_text(e.kids[1], out, prec);
    if (paren) out << ")";
}

} // namespace

std::string GuardExpr::to_string() const {
    std::ostringstream out;
    expr_text(*this, out, 0);
    return out.str();
}

Guard normalize_guard(const GuardExpr& e) {
    long long bound = e.max_constant();
    // Evaluate once per elementary piece; atoms are constant on pieces.
    std::vector<bool> bits(static_cast<size_t>(2 * bound + 2));
    for (size_t i = 0; i < bits.size(); ++i)
        bits[i] = e.eval(piece_probe(static_cast<long long>(i), bound));
    return guard_from_pieces(bits, bound);
}

namespace {

GuardExpr interval_to_expr(const Interval& iv) {
    using K = GuardExpr::Kind;
    if (!iv.hi_unbounded && iv.lo == iv.hi)
        return GuardExpr::atom(K::Eq, iv.lo);
    GuardExpr lo_part = GuardExpr::tt();
    bool has_lo = !(iv.lo == 0 && !iv.lo_open);
    if (has_lo)
        lo_part = GuardExpr::atom(iv.lo_open ? K::Gt : K::Ge, iv.lo);
    if (iv.hi_unbounded)
        return has_lo ? lo_part : GuardExpr::tt();
    GuardExpr hi_part = GuardExpr::atom(iv.hi_open ? K::Lt : K::Le, iv.hi);
    if (!has_lo) return hi_part;
    return GuardExpr::conj(std::move(lo_part), std::move(hi_part));
}

} // namespace

GuardExpr guard_to_expr(const Guard& g) {
    using K = GuardExpr::Kind;
    const auto& parts = g.intervals();
    if (parts.empty())
        return GuardExpr::conj(GuardExpr::atom(K::Lt, 0), GuardExpr::tt());
    if (g.is_full()) return GuardExpr::tt();
    // Common complement-of-a-point shape: [0,c) u (c,inf)  ->  x!=c
    if (parts.size() == 2 && parts[0].lo == 0 && !parts[0].lo_open &&
        !parts[0].hi_unbounded && parts[0].hi_open && parts[1].hi_unbounded &&
        parts[1].lo_open && parts[0].hi == parts[1].lo)
        return GuardExpr::atom(K::Ne, parts[0].hi);
    GuardExpr out = interval_to_expr(parts[0]);
    for (size_t i = 1; i < parts.size(); ++i)
        out = GuardExpr::disj(std::move(out), interval_to_expr(parts[i]));
    return out;
}

} // namespace ata
