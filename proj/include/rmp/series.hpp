#pragma once

// Restricted m-ary partition counts c_m(n): a partition of n into powers of
// m is restricted ("gap-free") when the presence of m^i forces the presence
// of every lower power m^0..m^{i-1}. Two independent routes are provided:
// the generating function
//
//   C_m(q) = 1 + sum_{L>=0} q^{1+m+...+m^L} / ((1-q)(1-q^m)...(1-q^{m^L}))
//
// realized on truncated series, and a level-decomposition counting oracle
// that shares no code with the series route.

#include <cstddef>
#include <vector>

#include "rmp/int.hpp"

namespace rmp {

/// Formal power series known modulo q^trunc with exact integer coefficients.
/// coeff(n) is the coefficient of q^n. Every operation preserves trunc.
class TruncatedSeries {
public:
    /// The zero series with `trunc` stored coefficients; trunc >= 1.
    explicit TruncatedSeries(std::size_t trunc);

    /// Adopts a full coefficient vector (its size is the truncation order).
    explicit TruncatedSeries(std::vector<Int> coeffs);

    /// The series 1.
    static TruncatedSeries one(std::size_t trunc);

    std::size_t trunc() const noexcept { return coeffs_.size(); }
    const Int& coeff(std::size_t n) const;
    void set_coeff(std::size_t n, Int value);
    const std::vector<Int>& coeffs() const noexcept { return coeffs_; }

    /// Termwise sum; both operands must have the same truncation order.
    TruncatedSeries& operator+=(const TruncatedSeries& rhs);

    /// Multiply by q^k, dropping coefficients pushed past the truncation.
    void shift_up(std::size_t k);

    /// In-place division by (1 - q^k): the stride-k prefix sum
    /// c[i] += c[i-k]. k >= 1.
    void divide_by_one_minus_qk_inplace(std::size_t k);

    /// Multiply by (1 - q^k) mod q^trunc.
    TruncatedSeries multiply_by_one_minus_qk(std::size_t k) const;

    bool operator==(const TruncatedSeries&) const = default;

private:
    std::vector<Int> coeffs_;
};

/// The quotient t with t * (1 - q^k) = s mod q^trunc.
TruncatedSeries divide_by_one_minus_qk(const TruncatedSeries& s, std::size_t k);

/// Base and target of one restricted partition count; m >= 2.
struct PartitionSpec {
    unsigned m;
    unsigned long n;
    PartitionSpec(unsigned m, unsigned long n);
};

/// Series route: coefficients of C_m(q) to order trunc, so coeff(n) = c_m(n)
/// for every n < trunc.
TruncatedSeries restricted_series(unsigned m, std::size_t trunc);

/// c_m(n), read off restricted_series(m, n + 1).
Int count_restricted(const PartitionSpec& spec);

/// Largest n brute_force_count accepts.
inline constexpr unsigned long kBruteForceLimit = 10000;

/// Largest n enumerate_count accepts.
inline constexpr unsigned long kEnumerationLimit = 64;

/// Inputs up to this size are counted by both oracles and compared.
inline constexpr unsigned long kEnumerationCrossCheckLimit = 40;

/// Counting oracle independent of the series route: for each top level L
/// with 1 + m + ... + m^L <= n, count partitions of the remainder into parts
/// {m^0..m^L} by a coin-counting DP and sum over L (plus the empty partition
/// for n = 0). For n <= kEnumerationCrossCheckLimit the result is
/// cross-checked against enumerate_count; a mismatch throws
/// InconsistencyError. n above kBruteForceLimit throws ResourceLimitError.
Int brute_force_count(const PartitionSpec& spec);

/// Literal recursive enumeration of gap-free partitions, the slowest and
/// most direct route. n above kEnumerationLimit throws ResourceLimitError.
Int enumerate_count(const PartitionSpec& spec);

}  // namespace rmp
