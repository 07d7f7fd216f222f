#include "rmp/symbolic.hpp"

#include <algorithm>
#include <stdexcept>

#include "rmp/errors.hpp"

namespace rmp {

namespace {

void check_index(unsigned u, unsigned v) {
    if (v == 0 || v > u)
        throw std::invalid_argument("SMonomial: index s_{" + std::to_string(u) + "," +
                                    std::to_string(v) + "} outside 1 <= v <= u");
}

}  // namespace

SMonomial SMonomial::indeterminate(unsigned u, unsigned v, unsigned long exp) {
    check_index(u, v);
    SMonomial p;
    if (exp > 0) p.exps_[{u, v}] = exp;
    return p;
}

SMonomial::SMonomial(const std::map<SIndex, unsigned long>& exps) {
    for (const auto& [idx, e] : exps) {
        check_index(idx.first, idx.second);
        if (e > 0) exps_[idx] = e;
    }
}

SMonomial& SMonomial::operator*=(const SMonomial& rhs) {
    for (const auto& [idx, e] : rhs.exps_) exps_[idx] += e;
    return *this;
}

unsigned long SMonomial::degree() const {
    unsigned long d = 0;
    for (const auto& [idx, e] : exps_) d += e;
    return d;
}

unsigned SMonomial::max_u() const {
    unsigned u = 0;
    for (const auto& [idx, e] : exps_) u = std::max(u, idx.first);
    return u;
}

bool SMonomial::has_factor(unsigned u, unsigned v) const { return exps_.contains({u, v}); }

SMonomial SMonomial::without_one_factor(unsigned u, unsigned v) const {
    auto it = exps_.find({u, v});
    if (it == exps_.end())
        throw std::invalid_argument("SMonomial: s_{" + std::to_string(u) + "," +
                                    std::to_string(v) + "} is not a factor");
    SMonomial out(*this);
    auto target = out.exps_.find({u, v});
    if (--target->second == 0) out.exps_.erase(target);
    return out;
}

std::string SMonomial::str() const {
    if (exps_.empty()) return "1";
    std::string out;
    for (const auto& [idx, e] : exps_) {
        if (!out.empty()) out += '*';
        out += "s[" + std::to_string(idx.first) + "," + std::to_string(idx.second) + "]";
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

Valuation valuation(const SMonomial& p) {
    Valuation v{};
    for (const auto& [idx, e] : p.exponents()) {
        const auto [u, i] = idx;
        check_index(u, i);
        if (i == u) {
            v.int_part += static_cast<long long>(u) * static_cast<long long>(e);
        } else if (i + 1 == u) {
            v.int_part += static_cast<long long>(i) * static_cast<long long>(e);
            v.eps_count += static_cast<long long>(e);
        }
        // 1 <= i < u-1 contributes zero
    }
    return v;
}

Int substitute(const SMonomial& p, const SCoeffTable& table) {
    Int result = 1;
    for (const auto& [idx, e] : p.exponents()) {
        if (idx.first > table.max_j())
            throw std::invalid_argument("substitute: s_{" + std::to_string(idx.first) + "," +
                                        std::to_string(idx.second) + "} outside the table");
        result *= pow_ui(table.at(idx.first, idx.second), e);
    }
    return result;
}

bool lemma22_check(const SMonomial& p, unsigned m, long long ell) {
    if (m < 2) throw std::invalid_argument("lemma22_check: base m must be >= 2");
    if (!val_exceeds(valuation(p), ell))
        throw std::invalid_argument("lemma22_check: hypothesis v(p) > ell does not hold");
    if (ell + 1 < 0)
        throw std::invalid_argument("lemma22_check: divisor exponent ell+1 is negative");
    const auto e = static_cast<unsigned long>(ell + 1);
    const Int divisor = (m % 2 == 1) ? pow_ui(m, e) : pow_ui(m / 2, e);
    const SCoeffTable table(m, std::max(p.max_u(), 1u));
    return divisible(substitute(p, table), divisor);
}

const SMonomial& MinimalTermTable::column(const std::vector<SMonomial>& row, unsigned i) const {
    if (i < 1 || i > row.size())
        throw std::out_of_range("MinimalTermTable: column " + std::to_string(i) +
                                " outside 1.." + std::to_string(row.size()));
    return row[i - 1];
}

namespace {

SMonomial ind(unsigned u, unsigned v, unsigned long e = 1) {
    return SMonomial::indeterminate(u, v, e);
}

// One level step. Column 1 gains a factor s_{2,1}; column i >= 2 is the
// previous column i-1 times s_{i,i}. The p/r families advance from r_bar,
// the q/t families from t_bar.
void advance(MinimalTermTable& t) {
    const std::size_t cols = t.p_bar.size() + 1;
    std::vector<SMonomial> np(cols), nq(cols);
    np[0] = t.r_bar[0] * ind(2, 1);
    nq[0] = t.t_bar[0] * ind(2, 1);
    for (unsigned i = 2; i <= cols; ++i) {
        np[i - 1] = t.r_bar[i - 2] * ind(i, i);
        nq[i - 1] = t.t_bar[i - 2] * ind(i, i);
    }
    t.p_bar = np;
    t.r_bar = std::move(np);
    t.q_bar = nq;
    t.t_bar = std::move(nq);
    ++t.level;
}

}  // namespace

MinimalTermTable minimal_terms(unsigned j) {
    if (j == 0) throw std::invalid_argument("minimal_terms: level j must be >= 1");
    MinimalTermTable t;
    t.level = 1;
    t.p_bar = {ind(1, 1) * ind(2, 1), ind(1, 1) * ind(2, 2)};
    t.q_bar = {ind(1, 1), ind(1, 1) * ind(2, 2)};
    t.r_bar = t.p_bar;
    t.t_bar = t.q_bar;
    while (t.level < j) advance(t);
    return t;
}

bool closed_form_check(const MinimalTermTable& table) {
    const unsigned j = table.level;
    if (j == 0 || table.p_bar.size() != j + 1 || table.q_bar.size() != j + 1 ||
        table.r_bar.size() != j + 1 || table.t_bar.size() != j + 1)
        return false;
    SMonomial diag;  // s_{1,1} s_{2,2} ... s_{i,i}
    for (unsigned i = 1; i <= j + 1; ++i) {
        diag *= ind(i, i);
        const SMonomial p_cf = diag * ind(2, 1, j + 1 - i);
        const SMonomial q_cf = diag * ind(2, 1, i <= j ? j - i : 0);
        if (table.p(i) != p_cf || table.r(i) != p_cf) return false;
        if (table.q(i) != q_cf || table.t(i) != q_cf) return false;
    }
    return true;
}

bool closed_form_check(unsigned j) { return closed_form_check(minimal_terms(j)); }

bool gap_check(const MinimalTermTable& table) {
    const unsigned j = table.level;
    if (j == 0 || table.p_bar.size() < j + 1 || table.q_bar.size() < j + 1) return false;
    for (unsigned i = 1; i <= j; ++i) {
        if (!val_exceeds(valuation(table.p(i + 1)) - valuation(table.p(i)), i)) return false;
        if (!val_exceeds(valuation(table.q(i + 1)) - valuation(table.q(i)), i)) return false;
    }
    return true;
}

bool gap_check(unsigned j) { return gap_check(minimal_terms(j)); }

bool overall_minimum_check(const MinimalTermTable& table) {
    if (table.q_bar.empty()) return false;
    const SMonomial& least = table.q(1);
    const Valuation v_least = valuation(least);
    for (const auto* row : {&table.p_bar, &table.q_bar, &table.r_bar, &table.t_bar})
        for (const SMonomial& term : *row)
            if (term != least && !(v_least < valuation(term))) return false;
    return true;
}

bool theorem_divisor_check(const SMonomial& p, unsigned j, unsigned m) {
    if (j == 0) throw std::invalid_argument("theorem_divisor_check: level j must be >= 1");
    if (m < 2) throw std::invalid_argument("theorem_divisor_check: base m must be >= 2");
    if (!p.has_factor(1, 1))
        throw std::invalid_argument("theorem_divisor_check: p lacks the factor s_{1,1}");
    const SMonomial rest = p.without_one_factor(1, 1);
    if (!val_exceeds(valuation(rest), static_cast<long long>(j) - 2))
        throw std::invalid_argument("theorem_divisor_check: v(p/s_{1,1}) > j-2 does not hold");
    // m^j / c_j: the even case divides out 2^{j-1} exactly.
    const Int divisor =
        (m % 2 == 1) ? pow_ui(m, j) : exact_div(pow_ui(m, j), pow_ui(2ul, j - 1));
    const SCoeffTable table(m, std::max(p.max_u(), 1u));
    return divisible(substitute(p, table), divisor);
}

}  // namespace rmp
