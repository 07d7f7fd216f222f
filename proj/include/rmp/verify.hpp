#pragma once

// End-to-end numeric verification of the congruence family
//
//   c_m(m^{j+2} n + m^{j+1} + ... + m^2)  ==  0   (mod m^j / c_j),
//
// with c_j = 1 for odd m and 2^{j-1} for even m, together with the exact
// recovery of the h-basis decomposition of the extracted subsequence and the
// closed recurrences its coefficients satisfy across consecutive levels.

#include <vector>

#include "rmp/binom.hpp"
#include "rmp/int.hpp"
#include "rmp/series_cache.hpp"

namespace rmp {

/// N = m^{j+2} n + sum_{t=2}^{j+1} m^t. Requires m >= 2 and j >= 1 (at
/// j = 0 the offset sum is empty and the even-m modulus is not an integer).
Int theorem_target(unsigned m, unsigned j, unsigned long n);

/// m^j / c_j: m^j for odd m, m^j / 2^{j-1} for even m (exact).
Int theorem_modulus(unsigned m, unsigned j);

/// One verified congruence instance.
struct CongruenceCase {
    unsigned m = 0;
    unsigned j = 0;
    unsigned long n = 0;
    unsigned long target = 0;  // N
    Int count;                 // c_m(N)
    Int modulus;               // m^j / c_j
    bool ok = false;
    /// Informational sharpness: the exact m-adic valuation of count when m
    /// is prime, otherwise the exact multiplicity of modulus in count.
    unsigned long padic = 0;
};

/// One case per n in 0..n_max. Throws ResourceLimitError when the required
/// series truncation exceeds the store budget.
std::vector<CongruenceCase> verify_theorem(unsigned m, unsigned j, unsigned long n_max,
                                           SeriesStore& store);

/// a_j(n) = c_m(theorem_target(m, j, n)) for n in 0..n_max.
std::vector<Int> extract_subsequence(unsigned m, unsigned j, unsigned long n_max,
                                     SeriesStore& store);

/// Exact h-basis decomposition of the subsequence, recovered by an integer-
/// valued rational solve:
///   a_j(n) = sum_{i=0}^{j+1} D[i] C(n,i)
///          + sum_{k=1}^{n} (-c_m(k)) sum_{i=1}^{j+1} E[i] C(n-k,i).
struct HFitResult {
    unsigned m = 0;
    unsigned j = 0;
    std::vector<Int> d;  // D[0..j+1]
    std::vector<Int> e;  // E[0..j+1] with E[0] = 0 by convention
    bool holdout_verified = false;
    unsigned long extra_rows = 0;  // rows added beyond the square system
};

/// Number of rows the fit may add beyond the square system before reporting
/// DegenerateSystemError. The convolution columns mimic binomial columns
/// until n exceeds roughly m + i + 1 (c_m(k) = 1 for all k <= m), so the
/// cap grows with the base.
constexpr unsigned long fit_retry_cap(unsigned m, unsigned j) { return 2ul * j + m + 4; }

/// Solve rows n = 0..2j+2, extending one row at a time on rank deficiency
/// up to fit_retry_cap. Requires holdout_max >= 4j + 8; the returned
/// coefficients are asserted integral and divisible by theorem_modulus
/// (TheoremViolationError otherwise), and holdout_verified records whether
/// the model reproduces a_j(n) exactly for every n <= holdout_max.
HFitResult fit_lemma21(unsigned m, unsigned j, unsigned long holdout_max, SeriesStore& store);

/// Closed recurrence between consecutive fits (levels j and j+1):
///   E'[t] = sum_{i=t}^{j+2}  E[i-1]          * s_{i,t}
///   D'[t] = sum_{i=t}^{j+2} (D[i] - E[i-1])  * s_{i,t}
/// for t = 1..j+2, with out-of-range entries zero. The t = 0 column is not
/// determined by the differences D and E and is not checked. The table must
/// carry the same base and rows up to j+2.
bool cross_check_recurrences(const HFitResult& fit_j, const HFitResult& fit_j1,
                             const SCoeffTable& table);

}  // namespace rmp
