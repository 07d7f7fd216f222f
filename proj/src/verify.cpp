#include "rmp/verify.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

#include "rmp/errors.hpp"

namespace rmp {

namespace {

void check_mj(unsigned m, unsigned j, const char* who) {
    if (m < 2) throw std::invalid_argument(std::string(who) + ": base m must be >= 2");
    if (j == 0) throw std::invalid_argument(std::string(who) + ": level j must be >= 1");
}

bool is_prime(unsigned m) {
    const Int v(m);
    return mpz_probab_prime_p(v.get_mpz_t(), 32) != 0;
}

unsigned long target_as_index(unsigned m, unsigned j, unsigned long n, const SeriesStore& store) {
    const Int big = theorem_target(m, j, n);
    if (!big.fits_ulong_p() || big.get_ui() >= store.budget())
        throw ResourceLimitError("theorem target " + big.get_str() +
                                 " needs a series past the budget of " +
                                 std::to_string(store.budget()) + " coefficients");
    return big.get_ui();
}

}  // namespace

Int theorem_target(unsigned m, unsigned j, unsigned long n) {
    check_mj(m, j, "theorem_target");
    Int total = pow_ui(static_cast<unsigned long>(m), j + 2) * Int(n);
    for (unsigned t = 2; t <= j + 1; ++t) total += pow_ui(static_cast<unsigned long>(m), t);
    return total;
}

Int theorem_modulus(unsigned m, unsigned j) {
    check_mj(m, j, "theorem_modulus");
    const Int mj = pow_ui(static_cast<unsigned long>(m), j);
    return (m % 2 == 1) ? mj : exact_div(mj, pow_ui(2ul, j - 1));
}

std::vector<CongruenceCase> verify_theorem(unsigned m, unsigned j, unsigned long n_max,
                                           SeriesStore& store) {
    const unsigned long max_target = target_as_index(m, j, n_max, store);
    const TruncatedSeries& s = store.series(m, max_target + 1);
    const Int modulus = theorem_modulus(m, j);
    const Int padic_base = is_prime(m) ? Int(m) : modulus;

    std::vector<CongruenceCase> cases;
    cases.reserve(n_max + 1);
    for (unsigned long n = 0; n <= n_max; ++n) {
        CongruenceCase c;
        c.m = m;
        c.j = j;
        c.n = n;
        c.target = target_as_index(m, j, n, store);
        c.count = s.coeff(c.target);
        c.modulus = modulus;
        c.ok = divisible(c.count, modulus);
        c.padic = divisibility_multiplicity(c.count, padic_base);
        cases.push_back(std::move(c));
    }
    return cases;
}

std::vector<Int> extract_subsequence(unsigned m, unsigned j, unsigned long n_max,
                                     SeriesStore& store) {
    const unsigned long max_target = target_as_index(m, j, n_max, store);
    const TruncatedSeries& s = store.series(m, max_target + 1);
    std::vector<Int> out;
    out.reserve(n_max + 1);
    for (unsigned long n = 0; n <= n_max; ++n)
        out.push_back(s.coeff(target_as_index(m, j, n, store)));
    return out;
}

namespace {

// Exact Gauss-Jordan over the rationals with deterministic pivoting: for
// each column take the first still-unused row with a nonzero entry. Returns
// the unique solution when the column rank is full, nullopt otherwise.
// `mat` holds rows of size cols+1 (augmented).
std::optional<std::vector<Rat>> solve_full_column_rank(std::vector<std::vector<Rat>> mat,
                                                       std::size_t cols) {
    const std::size_t rows = mat.size();
    std::vector<bool> used(rows, false);
    std::vector<std::size_t> pivot_row(cols);
    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t piv = rows;
        for (std::size_t r = 0; r < rows; ++r)
            if (!used[r] && mat[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv == rows) return std::nullopt;
        used[piv] = true;
        pivot_row[col] = piv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == piv || mat[r][col] == 0) continue;
            const Rat f = mat[r][col] / mat[piv][col];
            for (std::size_t c = col; c <= cols; ++c) mat[r][c] -= f * mat[piv][c];
        }
    }
    std::vector<Rat> x(cols);
    for (std::size_t col = 0; col < cols; ++col)
        x[col] = mat[pivot_row[col]][cols] / mat[pivot_row[col]][col];
    return x;
}

}  // namespace

HFitResult fit_lemma21(unsigned m, unsigned j, unsigned long holdout_max, SeriesStore& store) {
    check_mj(m, j, "fit_lemma21");
    if (holdout_max < 4ul * j + 8)
        throw std::invalid_argument("fit_lemma21: holdout_max must be at least 4j + 8");

    const std::size_t cols = 2ul * j + 3;  // D[0..j+1] then E[1..j+1]
    const Int modulus = theorem_modulus(m, j);

    for (unsigned long extra = 0; extra <= fit_retry_cap(m, j); ++extra) {
        const unsigned long rows = cols + extra;
        const unsigned long need_n = std::max(rows - 1, holdout_max);

        const unsigned long max_target = target_as_index(m, j, need_n, store);
        const TruncatedSeries& s = store.series(m, max_target + 1);
        std::vector<Int> a;
        a.reserve(need_n + 1);
        for (unsigned long n = 0; n <= need_n; ++n)
            a.push_back(s.coeff(target_as_index(m, j, n, store)));

        std::vector<std::vector<Rat>> mat;
        mat.reserve(rows);
        for (unsigned long n = 0; n < rows; ++n) {
            std::vector<Rat> row;
            row.reserve(cols + 1);
            for (unsigned i = 0; i <= j + 1; ++i) row.emplace_back(binomial(n, i));
            for (unsigned i = 1; i <= j + 1; ++i) {
                Int w = 0;
                for (unsigned long k = 1; k <= n; ++k) w -= s.coeff(k) * binomial(n - k, i);
                row.emplace_back(w);
            }
            row.emplace_back(a[n]);
            mat.push_back(std::move(row));
        }

        auto solution = solve_full_column_rank(std::move(mat), cols);
        if (!solution) continue;

        HFitResult fit;
        fit.m = m;
        fit.j = j;
        fit.extra_rows = extra;
        fit.d.reserve(j + 2);
        fit.e.assign(1, Int(0));
        for (std::size_t i = 0; i < cols; ++i) {
            const Rat& v = (*solution)[i];
            if (v.get_den() != 1)
                throw TheoremViolationError("fit_lemma21: non-integer coefficient " +
                                            v.get_str() + " at m=" + std::to_string(m) +
                                            ", j=" + std::to_string(j));
            (i <= j + 1 ? fit.d : fit.e).push_back(v.get_num());
        }
        for (const auto* block : {&fit.d, &fit.e})
            for (const Int& v : *block)
                if (!divisible(v, modulus))
                    throw TheoremViolationError("fit_lemma21: coefficient " + v.get_str() +
                                                " not divisible by " + modulus.get_str() +
                                                " at m=" + std::to_string(m) +
                                                ", j=" + std::to_string(j));

        // Holdout: re-predict the whole subsequence from the coefficients.
        // g(t) = sum_i E[i] C(t,i) so the convolution term is
        // -sum_{k=1}^{n} c_m(k) g(n-k).
        std::vector<Int> g(holdout_max + 1);
        for (unsigned long t = 0; t <= holdout_max; ++t)
            for (unsigned i = 1; i <= j + 1; ++i) g[t] += fit.e[i] * binomial(t, i);
        fit.holdout_verified = true;
        for (unsigned long n = 0; n <= holdout_max && fit.holdout_verified; ++n) {
            Int model = 0;
            for (unsigned i = 0; i <= j + 1; ++i) model += fit.d[i] * binomial(n, i);
            for (unsigned long k = 1; k <= n; ++k) model -= s.coeff(k) * g[n - k];
            fit.holdout_verified = (model == a[n]);
        }
        return fit;
    }
    throw DegenerateSystemError("fit_lemma21: row system still rank-deficient after " +
                                std::to_string(fit_retry_cap(m, j)) + " extra rows at m=" +
                                std::to_string(m) + ", j=" + std::to_string(j));
}

bool cross_check_recurrences(const HFitResult& fit_j, const HFitResult& fit_j1,
                             const SCoeffTable& table) {
    if (fit_j1.j != fit_j.j + 1 || fit_j1.m != fit_j.m)
        throw std::invalid_argument("cross_check_recurrences: fits are not consecutive levels");
    if (table.base() != fit_j.m)
        throw std::invalid_argument("cross_check_recurrences: table base mismatch");
    const unsigned j = fit_j.j;
    if (table.max_j() < j + 2)
        throw std::invalid_argument("cross_check_recurrences: table needs rows up to j + 2");

    auto d_at = [&](unsigned i) { return i < fit_j.d.size() ? fit_j.d[i] : Int(0); };
    auto e_at = [&](unsigned i) { return (i >= 1 && i < fit_j.e.size()) ? fit_j.e[i] : Int(0); };

    for (unsigned t = 1; t <= j + 2; ++t) {
        Int e_next = 0, d_next = 0;
        for (unsigned i = t; i <= j + 2; ++i) {
            const Int& s = table.at(i, t);
            e_next += e_at(i - 1) * s;
            d_next += (d_at(i) - e_at(i - 1)) * s;
        }
        if (e_next != fit_j1.e[t] || d_next != fit_j1.d[t]) return false;
    }
    return true;
}

}  // namespace rmp
