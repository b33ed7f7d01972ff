#pragma once

#include "ata/automaton.hpp"
#include "ata/semantics.hpp"

#include <string>
#include <string_view>

namespace ata {

/// Parses the automaton block format:
///   ata {
///     clock x;
///     alphabet a b;
///     init q0;
///     accepting q0 q1;
///     q0 a [tt] -> (q0) & (q1,reset);
///     q1 a [x=1] -> (q2);
///   }
/// Guards use x<c, x<=c, x=c, x!=c, x>c, x>=c, tt with & | ! and parens.
/// Formula leaves are (loc) or (loc,reset). '#' starts a comment.
/// Locations register in order of first mention. Referential errors throw
/// ParseError; the guard partition is not checked here.
Ata parse_ata(std::string_view text);

/// Inverse of parse_ata up to whitespace; guard text is reproduced from
/// the stored source syntax.
std::string print_ata(const Ata& a);

/// Guard constraint parser, exposed for tests ("x>=1 & x<2").
GuardExpr parse_guard_expr(std::string_view text);

/// "a@0.3 a@13/10" with exact rational conversion; empty input (after
/// comments) is the empty word. Enforces nondecreasing timestamps.
TimedWord parse_timed_word(std::string_view text);

std::string print_timed_word(const TimedWord& w);

} // namespace ata
