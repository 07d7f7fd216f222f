#pragma once

// Exact binomial coefficients, the change-of-basis integers s_{j,i}, and the
// h-basis utilities. The s_{j,i} are defined by the k-independent identity
//
//   C(k*m + 1, j) = sum_{i=0}^{j} s_{j,i} * C(k, i)   for all k >= 0.

#include <vector>

#include "rmp/int.hpp"

namespace rmp {

/// Exact C(n, k); zero for k < 0 or k > n.
Int binomial(unsigned long n, long long k);

/// Coefficient of q^n in h_i = q^i / (1-q)^{i+1}, namely C(n, i).
Int h_coefficient(unsigned i, unsigned long n);

/// Triangular table of the s_{j,i} for a fixed base m, rows 0..max_j.
/// Built by forward substitution of the defining identity at k = 0..j: the
/// system is triangular since C(k, i) = 0 for i > k. The solve runs over
/// rationals and asserts integrality of every entry (InconsistencyError
/// otherwise).
class SCoeffTable {
public:
    SCoeffTable(unsigned m, unsigned max_j);

    /// Adopts raw rows (shape-checked only). Intended for serialization and
    /// perturbation tests; construction from (m, max_j) is the normal path.
    static SCoeffTable from_rows(unsigned m, std::vector<std::vector<Int>> rows);

    unsigned base() const noexcept { return m_; }
    unsigned max_j() const noexcept { return static_cast<unsigned>(s_.size()) - 1; }
    const Int& at(unsigned j, unsigned i) const;
    const std::vector<std::vector<Int>>& rows() const noexcept { return s_; }

private:
    explicit SCoeffTable(unsigned m) : m_(m) {}
    unsigned m_;
    std::vector<std::vector<Int>> s_;  // s_[j][i], 0 <= i <= j
};

/// Re-evaluate the defining identity at one k across every row of the table,
/// including k far beyond the construction points.
bool check_s_identity(const SCoeffTable& table, unsigned long k);

}  // namespace rmp
