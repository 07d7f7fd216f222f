#pragma once

// Monomial calculus over the indeterminates s_{u,v} and the infinitesimal
// valuation driving the divisibility bounds:
//
//   v(s_{j,j}) = j,   v(s_{j,j-1}) = j - 1 - eps,   v(s_{j,i}) = 0 otherwise,
//
// with eps an arbitrarily small positive real, extended additively over
// products. The minimal-evaluation terms of the coefficient polynomials
// P/Q/R/T propagate by a one-step recurrence per level and admit closed
// forms; both are implemented here and checked against each other.

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rmp/binom.hpp"
#include "rmp/int.hpp"

namespace rmp {

/// Index of the indeterminate s_{u,v}; valid for 1 <= v <= u.
using SIndex = std::pair<unsigned, unsigned>;

/// Monomial in the s_{u,v}: a canonical (sorted, zero-free) exponent map.
/// The empty monomial is 1. Indices with v = 0 or v > u are rejected: the
/// valuation is only defined on 1 <= v <= u, and the recurrences never
/// produce anything else.
class SMonomial {
public:
    SMonomial() = default;

    static SMonomial indeterminate(unsigned u, unsigned v, unsigned long exp = 1);

    /// Validating constructor from a raw exponent map (zero exponents are
    /// dropped, bad indices throw std::invalid_argument).
    explicit SMonomial(const std::map<SIndex, unsigned long>& exps);

    SMonomial& operator*=(const SMonomial& rhs);
    friend SMonomial operator*(SMonomial lhs, const SMonomial& rhs) { return lhs *= rhs; }
    bool operator==(const SMonomial&) const = default;

    bool is_one() const noexcept { return exps_.empty(); }
    unsigned long degree() const;
    unsigned max_u() const;  // 0 for the empty monomial
    bool has_factor(unsigned u, unsigned v) const;

    /// Quotient by one power of s_{u,v}; throws if the factor is absent.
    SMonomial without_one_factor(unsigned u, unsigned v) const;

    const std::map<SIndex, unsigned long>& exponents() const noexcept { return exps_; }

    /// Rendering such as "s[1,1]*s[2,1]^2"; "1" for the empty monomial.
    std::string str() const;

private:
    std::map<SIndex, unsigned long> exps_;
};

/// Exact value int_part - eps_count * eps. Valuations of monomials carry
/// eps_count >= 0; differences of valuations may carry a negative eps_count,
/// meaning an +eps surplus.
struct Valuation {
    long long int_part = 0;
    long long eps_count = 0;

    friend Valuation operator+(Valuation a, Valuation b) {
        return {a.int_part + b.int_part, a.eps_count + b.eps_count};
    }
    friend Valuation operator-(Valuation a, Valuation b) {
        return {a.int_part - b.int_part, a.eps_count - b.eps_count};
    }
    friend bool operator==(const Valuation&, const Valuation&) = default;
    /// Numeric order with eps infinitesimal: larger int part wins, ties go
    /// to the smaller eps count.
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (auto c = a.int_part <=> b.int_part; c != 0) return c;
        return b.eps_count <=> a.eps_count;
    }
};

/// v(p), additive over the factors of p.
Valuation valuation(const SMonomial& p);

/// Exact test int_part - eps_count*eps > ell: true iff int_part > ell, or
/// int_part == ell with an +eps surplus (negative eps_count).
constexpr bool val_exceeds(const Valuation& v, long long ell) {
    return v.int_part > ell || (v.int_part == ell && v.eps_count < 0);
}

/// Numeric value of p at a concrete base: the product of table entries
/// raised to the exponents. Indices outside the table throw.
Int substitute(const SMonomial& p, const SCoeffTable& table);

/// Divisibility bound: requires v(p) > ell (std::invalid_argument
/// otherwise); true iff the value of p at base m is divisible by m^{ell+1}
/// for odd m, resp. (m/2)^{ell+1} for even m.
bool lemma22_check(const SMonomial& p, unsigned m, long long ell);

/// Minimal-evaluation terms at level j, columns 1..j+1 of each of the four
/// coefficient families. p_bar equals r_bar and q_bar equals t_bar
/// throughout; both equalities are stored redundantly and tested, not
/// assumed. Column i lives at index i-1.
struct MinimalTermTable {
    unsigned level = 0;
    std::vector<SMonomial> p_bar, q_bar, r_bar, t_bar;

    const SMonomial& p(unsigned i) const { return column(p_bar, i); }
    const SMonomial& q(unsigned i) const { return column(q_bar, i); }
    const SMonomial& r(unsigned i) const { return column(r_bar, i); }
    const SMonomial& t(unsigned i) const { return column(t_bar, i); }

private:
    const SMonomial& column(const std::vector<SMonomial>& row, unsigned i) const;
};

/// Build the table for level j >= 1 by iterating the one-step recurrence
/// from the level-1 base: column 1 gains a factor s_{2,1}, column i >= 2 is
/// the previous level's column i-1 times s_{i,i}.
MinimalTermTable minimal_terms(unsigned j);

/// Compare a table against the closed forms
///   p_bar[i] = s_{1,1} s_{2,2} ... s_{i,i} * s_{2,1}^{j-i+1}
///   q_bar[i] = s_{1,1} s_{2,2} ... s_{i,i} * s_{2,1}^{max(j-i, 0)}
/// (r_bar and t_bar identical to p_bar and q_bar).
bool closed_form_check(const MinimalTermTable& table);
bool closed_form_check(unsigned j);

/// Valuation gaps between adjacent columns: v(p_bar[i+1]) - v(p_bar[i]) > i
/// for 1 <= i <= j, and the same for q_bar.
bool gap_check(const MinimalTermTable& table);
bool gap_check(unsigned j);

/// q_bar[1] = s_{1,1} s_{2,1}^{j-1} has strictly minimal valuation among all
/// stored terms (ties only with its own structural copies).
bool overall_minimum_check(const MinimalTermTable& table);

/// Factor-out-s_{1,1} divisibility: requires s_{1,1} | p and
/// v(p / s_{1,1}) > j - 2; true iff the value of p at base m is divisible by
/// m^j for odd m, resp. m^j / 2^{j-1} for even m.
bool theorem_divisor_check(const SMonomial& p, unsigned j, unsigned m);

}  // namespace rmp
