#include "rmp/binom.hpp"

#include <stdexcept>
#include <utility>

#include "rmp/errors.hpp"

namespace rmp {

Int binomial(unsigned long n, long long k) {
    if (k < 0 || static_cast<unsigned long long>(k) > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
    return r;
}

Int h_coefficient(unsigned i, unsigned long n) { return binomial(n, i); }

SCoeffTable::SCoeffTable(unsigned m, unsigned max_j) : m_(m) {
    if (m < 2) throw std::invalid_argument("SCoeffTable: base m must be >= 2");
    if (max_j < 1) throw std::invalid_argument("SCoeffTable: max_j must be >= 1");
    s_.reserve(max_j + 1);
    for (unsigned j = 0; j <= max_j; ++j) {
        std::vector<Int> row(j + 1);
        for (unsigned long t = 0; t <= j; ++t) {
            // At k = t only columns i <= t survive, so s_{j,t} is pinned by
            // the previously solved columns.
            Rat acc(binomial(t * m + 1, j));
            for (unsigned long i = 0; i < t; ++i) acc -= Rat(row[i]) * Rat(binomial(t, i));
            acc /= Rat(binomial(t, t));
            if (acc.get_den() != 1)
                throw InconsistencyError("SCoeffTable: non-integer s coefficient at j=" +
                                         std::to_string(j) + ", i=" + std::to_string(t));
            row[t] = acc.get_num();
        }
        s_.push_back(std::move(row));
    }
}

SCoeffTable SCoeffTable::from_rows(unsigned m, std::vector<std::vector<Int>> rows) {
    if (m < 2) throw std::invalid_argument("SCoeffTable: base m must be >= 2");
    if (rows.size() < 2) throw std::invalid_argument("SCoeffTable: need rows 0..max_j with max_j >= 1");
    for (std::size_t j = 0; j < rows.size(); ++j)
        if (rows[j].size() != j + 1)
            throw std::invalid_argument("SCoeffTable: row " + std::to_string(j) + " is not triangular");
    SCoeffTable table(m);
    table.s_ = std::move(rows);
    return table;
}

const Int& SCoeffTable::at(unsigned j, unsigned i) const {
    if (j >= s_.size() || i > j)
        throw std::out_of_range("SCoeffTable::at: index (" + std::to_string(j) + ", " +
                                std::to_string(i) + ") outside the triangle");
    return s_[j][i];
}

bool check_s_identity(const SCoeffTable& table, unsigned long k) {
    for (unsigned j = 0; j <= table.max_j(); ++j) {
        Int rhs = 0;
        for (unsigned i = 0; i <= j; ++i) rhs += table.at(j, i) * binomial(k, i);
        if (rhs != binomial(k * table.base() + 1, j)) return false;
    }
    return true;
}

}  // namespace rmp
