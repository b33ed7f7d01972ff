#pragma once

#include "ata/rational.hpp"

#include <compare>
#include <string>
#include <vector>

namespace ata {

/// One maximal interval of a guard. Endpoints are nonnegative integers;
/// the upper end may be +infinity.
struct Interval {
    long long lo = 0;
    bool lo_open = false;
    long long hi = 0;        // ignored when hi_unbounded
    bool hi_open = true;     // ignored when hi_unbounded
    bool hi_unbounded = false;

    bool operator==(const Interval&) const = default;
};

/// Denotation of a one-clock constraint: a canonical finite union of
/// disjoint intervals over the nonnegative reals. Canonical means sorted by
/// left endpoint with no two adjacent intervals mergeable, so structural
/// equality coincides with semantic equality.
class Guard {
public:
    Guard() = default; // empty set

    static Guard empty_set();
    static Guard full();
    static Guard point(long long c);
    /// Canonicalizes an arbitrary interval list (may overlap, touch, be
    /// unsorted or contain empty pieces).
    static Guard make(const std::vector<Interval>& raw);

    bool is_empty() const { return parts_.empty(); }
    bool is_full() const;
    bool contains(const Rat& v) const;

    /// Largest integer endpoint mentioned in the canonical form, 0 if none.
    long long max_constant() const;

    Guard intersect(const Guard& other) const;
    Guard unite(const Guard& other) const;
    Guard complement() const; // within R+

    const std::vector<Interval>& intervals() const { return parts_; }

    /// Set notation, e.g. "[0,1) u {1} u (2,inf)".
    std::string to_string() const;

    bool operator==(const Guard&) const = default;

private:
    std::vector<Interval> parts_;
};

/// Syntax tree of a clock constraint as written in input files. Kept next
/// to the canonical Guard so printed automata reproduce their source text.
struct GuardExpr {
    enum class Kind { True, Lt, Le, Eq, Ne, Gt, Ge, And, Or, Not };

    Kind kind = Kind::True;
    long long constant = 0;        // atoms only
    std::vector<GuardExpr> kids;   // And/Or: 2, Not: 1

    static GuardExpr tt();
    static GuardExpr atom(Kind k, long long c);
    static GuardExpr conj(GuardExpr a, GuardExpr b);
    static GuardExpr disj(GuardExpr a, GuardExpr b);
    static GuardExpr neg(GuardExpr a);

    bool is_atom() const;
    /// Direct syntax-tree evaluation; the independent oracle for
    /// normalize_guard.
    bool eval(const Rat& v) const;
    long long max_constant() const;
    std::string to_string() const;

    bool operator==(const GuardExpr&) const = default;
};

/// Canonical denotation of a constraint tree.
Guard normalize_guard(const GuardExpr& e);

/// Resynthesizes constraint text for a canonical guard ("tt", "x=1",
/// "x!=1", "x>=1 & x<2", disjunctions of those). Parsing it back
/// normalizes to the same guard.
GuardExpr guard_to_expr(const Guard& g);

} // namespace ata
