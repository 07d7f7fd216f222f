#include "rmp/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "rmp/errors.hpp"

namespace rmp {

TruncatedSeries::TruncatedSeries(std::size_t trunc) : coeffs_(trunc) {
    if (trunc == 0) throw std::invalid_argument("TruncatedSeries: trunc must be >= 1");
}

TruncatedSeries::TruncatedSeries(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("TruncatedSeries: trunc must be >= 1");
}

TruncatedSeries TruncatedSeries::one(std::size_t trunc) {
    TruncatedSeries s(trunc);
    s.coeffs_[0] = 1;
    return s;
}

const Int& TruncatedSeries::coeff(std::size_t n) const {
    if (n >= coeffs_.size()) throw std::out_of_range("TruncatedSeries::coeff: index past truncation");
    return coeffs_[n];
}

void TruncatedSeries::set_coeff(std::size_t n, Int value) {
    if (n >= coeffs_.size()) throw std::out_of_range("TruncatedSeries::set_coeff: index past truncation");
    coeffs_[n] = std::move(value);
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
    if (rhs.trunc() != trunc())
        throw std::invalid_argument("TruncatedSeries: mixed truncation orders");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

void TruncatedSeries::shift_up(std::size_t k) {
    if (k == 0) return;
    const std::size_t n = coeffs_.size();
    if (k >= n) {
        std::fill(coeffs_.begin(), coeffs_.end(), Int(0));
        return;
    }
    std::move_backward(coeffs_.begin(), coeffs_.begin() + (n - k), coeffs_.end());
    std::fill(coeffs_.begin(), coeffs_.begin() + k, Int(0));
}

void TruncatedSeries::divide_by_one_minus_qk_inplace(std::size_t k) {
    if (k == 0) throw std::invalid_argument("divide_by_one_minus_qk: k must be >= 1");
    for (std::size_t i = k; i < coeffs_.size(); ++i) coeffs_[i] += coeffs_[i - k];
}

TruncatedSeries TruncatedSeries::multiply_by_one_minus_qk(std::size_t k) const {
    if (k == 0) throw std::invalid_argument("multiply_by_one_minus_qk: k must be >= 1");
    TruncatedSeries out(*this);
    // highest indices first so subtrahends are the original coefficients
    for (std::size_t i = coeffs_.size(); i-- > k;) out.coeffs_[i] -= coeffs_[i - k];
    return out;
}

TruncatedSeries divide_by_one_minus_qk(const TruncatedSeries& s, std::size_t k) {
    TruncatedSeries out(s);
    out.divide_by_one_minus_qk_inplace(k);
    return out;
}

PartitionSpec::PartitionSpec(unsigned m_, unsigned long n_) : m(m_), n(n_) {
    if (m < 2) throw std::invalid_argument("PartitionSpec: base m must be >= 2");
}

TruncatedSeries restricted_series(unsigned m, std::size_t trunc) {
    if (m < 2) throw std::invalid_argument("restricted_series: base m must be >= 2");
    if (trunc == 0) throw std::invalid_argument("restricted_series: trunc must be >= 1");

    TruncatedSeries total = TruncatedSeries::one(trunc);
    // Running level term: after iteration L it equals
    // q^{sigma_L} / prod_{i=0}^{L} (1 - q^{m^i}),  sigma_L = 1 + m + ... + m^L.
    // Each level multiplies the previous term by q^{m^L}/(1 - q^{m^L}).
    TruncatedSeries level = TruncatedSeries::one(trunc);
    std::size_t power = 1;  // m^L
    std::size_t sigma = 0;
    for (;;) {
        sigma += power;
        if (sigma >= trunc) break;  // q^{sigma} vanishes mod q^trunc
        level.shift_up(power);
        level.divide_by_one_minus_qk_inplace(power);
        total += level;
        power *= m;
    }
    return total;
}

Int count_restricted(const PartitionSpec& spec) {
    return restricted_series(spec.m, spec.n + 1).coeff(spec.n);
}

namespace {

// Partitions of `amount` into parts drawn from `parts` (unrestricted
// multiplicities), the classic coin-counting DP.
Int coin_partition_count(unsigned long amount, const std::vector<unsigned long>& parts) {
    std::vector<Int> dp(amount + 1);
    dp[0] = 1;
    for (unsigned long p : parts)
        for (unsigned long v = p; v <= amount; ++v) dp[v] += dp[v - p];
    return dp[amount];
}

// Gap-free partitions of rem using levels 0..level, each at least once.
// lower_min[i] = 1 + m + ... + m^{i-1}, the least sum levels < i consume.
Int enumerate_rec(unsigned long rem, unsigned level, const std::vector<unsigned long>& powers,
                  const std::vector<unsigned long>& lower_min) {
    if (level == 0) return 1;  // rem copies of 1; rem >= 1 by construction
    Int total = 0;
    const unsigned long p = powers[level];
    for (unsigned long used = p; rem >= used + lower_min[level]; used += p)
        total += enumerate_rec(rem - used, level - 1, powers, lower_min);
    return total;
}

}  // namespace

Int brute_force_count(const PartitionSpec& spec) {
    if (spec.n > kBruteForceLimit)
        throw ResourceLimitError("brute_force_count: n exceeds the oracle budget");

    Int total = spec.n == 0 ? 1 : 0;
    std::vector<unsigned long> parts;  // m^0 .. m^L
    unsigned long power = 1;
    unsigned long sigma = 1;  // 1 + m + ... + m^L
    while (sigma <= spec.n) {
        parts.push_back(power);
        total += coin_partition_count(spec.n - sigma, parts);
        power *= spec.m;
        sigma += power;
    }

    if (spec.n <= kEnumerationCrossCheckLimit && total != enumerate_count(spec))
        throw InconsistencyError("brute_force_count: DP and enumeration oracles disagree");
    return total;
}

Int enumerate_count(const PartitionSpec& spec) {
    if (spec.n > kEnumerationLimit)
        throw ResourceLimitError("enumerate_count: n exceeds the enumeration budget");
    if (spec.n == 0) return 1;

    std::vector<unsigned long> powers{1};
    std::vector<unsigned long> lower_min{0};
    while (lower_min.back() + powers.back() <= spec.n) {
        lower_min.push_back(lower_min.back() + powers.back());
        powers.push_back(powers.back() * spec.m);
    }
    // powers[L] is usable as top level iff lower_min[L] + powers[L] <= n
    Int total = 0;
    for (unsigned level = 0; level + 1 < powers.size(); ++level)
        total += enumerate_rec(spec.n, level, powers, lower_min);
    return total;
}

}  // namespace rmp
