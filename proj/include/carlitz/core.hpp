#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "carlitz/types.hpp"

namespace carlitz {

// An ordered tuple of positive parts. The composed total is derived from the
// parts, so sum(parts) == n holds by construction.
class Composition {
public:
    Composition() = default;
    explicit Composition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
        for (unsigned p : parts_) {
            if (p == 0) throw std::invalid_argument("composition parts must be positive");
            n_ += p;
        }
    }
    Composition(std::initializer_list<unsigned> parts) : Composition(std::vector<unsigned>(parts)) {}

    const std::vector<unsigned>& parts() const noexcept { return parts_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t size() const noexcept { return parts_.size(); }

    friend bool operator==(const Composition&, const Composition&) = default;
    friend auto operator<=>(const Composition& a, const Composition& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<unsigned> parts_;
    std::size_t n_ = 0;
};

inline std::string to_string(const Composition& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.parts().size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c.parts()[i]);
    }
    return s + ")";
}

inline bool is_carlitz(const Composition& comp) {
    const auto& p = comp.parts();
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i] == p[i - 1]) return false;
    return true;
}

inline std::size_t distinct_sizes(const Composition& comp) {
    return std::set<unsigned>(comp.parts().begin(), comp.parts().end()).size();
}

inline constexpr std::size_t kDefaultEnumerationCap = 25;

namespace detail {

inline void enumerate_from(std::size_t remaining, unsigned previous, std::vector<unsigned>& prefix,
                           std::vector<Composition>& out) {
    if (remaining == 0) {
        out.emplace_back(prefix);
        return;
    }
    for (unsigned m = 1; m <= remaining; ++m) {
        if (m == previous) continue;
        prefix.push_back(m);
        enumerate_from(remaining - m, m, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace detail

// All Carlitz compositions of n in lexicographic order of their part lists.
inline std::vector<Composition> enumerate_carlitz(std::size_t n, std::size_t cap = kDefaultEnumerationCap) {
    if (n > cap)
        throw ResourceGuardError("enumeration of n=" + std::to_string(n) + " exceeds the cap of " +
                                 std::to_string(cap) + " (2^(n-1) candidate compositions)");
    std::vector<Composition> out;
    if (n == 0) return out;
    std::vector<unsigned> prefix;
    detail::enumerate_from(n, 0, prefix, out);
    return out;
}

// c[n][m]: Carlitz compositions of n whose last part is m, with one part size
// optionally forbidden everywhere. Built by the last-part recurrence
//   c[n][m] = a[n-m] - c[n-m][m]   (m != forbidden),  a[0] = 1,
// which sums the k-part recurrence over k. Immutable once built.
class CountTable {
public:
    explicit CountTable(std::size_t n_max, std::optional<std::size_t> forbidden = std::nullopt)
        : n_max_(n_max), forbidden_(forbidden) {
        if (forbidden_ && *forbidden_ == 0) throw std::invalid_argument("forbidden part size must be positive");
        rows_.resize(n_max_ + 1);
        totals_.assign(n_max_ + 1, BigInt(0));
        totals_[0] = 1;
        for (std::size_t n = 1; n <= n_max_; ++n) {
            auto& row = rows_[n];
            row.assign(n + 1, BigInt(0));
            BigInt& total = totals_[n];
            for (std::size_t m = 1; m <= n; ++m) {
                if (forbidden_ && m == *forbidden_) continue;
                const std::size_t rest = n - m;
                BigInt& cell = row[m];
                cell = totals_[rest];
                if (m <= rest) cell -= rows_[rest][m];
                total += cell;
            }
        }
    }

    std::size_t n_max() const noexcept { return n_max_; }
    const std::optional<std::size_t>& forbidden() const noexcept { return forbidden_; }

    // a[n]; a[0] = 1 counts the empty composition.
    const BigInt& total(std::size_t n) const {
        check(n);
        return totals_[n];
    }

    // c[n][m]; zero for m == 0, m > n or m == forbidden.
    const BigInt& last_part(std::size_t n, std::size_t m) const {
        check(n);
        static const BigInt zero(0);
        if (m == 0 || m > n) return zero;
        return rows_[n][m];
    }

    // By reversal symmetry the number with first part m equals c[n][m].
    const BigInt& first_part(std::size_t n, std::size_t m) const { return last_part(n, m); }

private:
    void check(std::size_t n) const {
        if (n > n_max_)
            throw std::out_of_range("count table covers n <= " + std::to_string(n_max_) + ", requested " +
                                    std::to_string(n));
    }

    std::size_t n_max_;
    std::optional<std::size_t> forbidden_;
    std::vector<std::vector<BigInt>> rows_;
    std::vector<BigInt> totals_;
};

inline BigInt count_carlitz(std::size_t n) { return CountTable(n).total(n); }

// a_{n,j}: Carlitz compositions of n that never use part size j.
inline BigInt count_carlitz_avoiding(std::size_t n, std::size_t j) {
    if (j == 0) throw std::invalid_argument("part size j must be positive");
    if (j > n) return count_carlitz(n);
    return CountTable(n, j).total(n);
}

// All (not necessarily Carlitz) compositions of n with every part >= 2:
// b(1) = 0, b(2) = b(3) = 1, b(n) = b(n-1) + b(n-2).
inline BigInt count_compositions_avoiding_one(std::size_t n) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    BigInt prev(1), cur(0);  // b(0) = 1 (empty), b(1) = 0
    for (std::size_t k = 2; k <= n; ++k) {
        BigInt next = cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

struct ExactExpectation {
    std::size_t n = 0;
    Rational value;
    // per_j[j-1] = P(I_j) = 1 - a_{n,j}/a_n, the probability that part size j occurs.
    std::vector<Rational> per_j;
};

// E[D_n] = sum_{j=1}^n (1 - a_{n,j}/a_n), exactly.
inline ExactExpectation expected_distinct_exact(std::size_t n) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    ExactExpectation out;
    out.n = n;
    const BigInt a = count_carlitz(n);
    out.per_j.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const BigInt avoid = CountTable(n, j).total(n);
        Rational p = Rational(a - avoid, a);
        out.value += p;
        out.per_j.push_back(std::move(p));
    }
    return out;
}

}  // namespace carlitz
