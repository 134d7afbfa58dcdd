#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "carlitz/core.hpp"
#include "carlitz/types.hpp"

namespace carlitz {

// Reproducible 64-bit stream: mt19937_64 (period 2^19937 - 1) keyed by
// (seed, stream_id) through std::seed_seq, whose mixing is fully specified.
// Every draw below is derived from raw 64-bit words, so results are
// bit-identical across standard library implementations.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) : seed_(seed), stream_id_(stream_id) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next() { return engine_(); }

    // P(G = k) = 2^{-k}, k >= 1: one plus the number of leading one bits.
    std::uint64_t geometric_half() {
        std::uint64_t k = 1;
        for (;;) {
            const std::uint64_t w = next();
            const int ones = std::countr_one(w);
            k += static_cast<std::uint64_t>(ones);
            if (ones < 64) return k;
        }
    }

    // Uniform on [0, bound) by rejection on the bit length of bound.
    BigInt uniform_below(const BigInt& bound) {
        if (bound <= 0) throw std::invalid_argument("uniform_below needs a positive bound");
        const std::size_t bits = boost::multiprecision::msb(bound) + 1;
        for (;;) {
            BigInt x(0);
            std::size_t have = 0;
            while (have < bits) {
                x <<= 64;
                x |= BigInt(next());
                have += 64;
            }
            x >>= static_cast<unsigned>(have - bits);
            if (x < bound) return x;
        }
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

struct SampleStats {
    std::uint64_t trials = 0;
    double mean = 0;
    double std_error = 0;  // sample standard deviation / sqrt(trials)
    std::map<std::string, double> extra;
};

// A uniform random composition of n: i.i.d. geometric(1/2) parts until the
// running sum reaches n, the last part cut down to n minus the previous parts.
inline Composition sample_composition_geometric(std::size_t n, RngStream& rng) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    std::vector<unsigned> parts;
    std::size_t sum = 0;
    for (;;) {
        const std::uint64_t g = rng.geometric_half();
        if (g >= n - sum) {
            parts.push_back(static_cast<unsigned>(n - sum));
            return Composition(std::move(parts));
        }
        parts.push_back(static_cast<unsigned>(g));
        sum += g;
    }
}

// Uniform Carlitz composition of n read off the count table. The first part is
// m with probability c[n][m]/a_n (first-part counts equal last-part counts by
// reversal); after a part m the remainder r is a Carlitz composition of r
// whose first part differs from m, of which there are a_r - c[r][m].
inline Composition sample_carlitz_exact(std::size_t n, RngStream& rng, const CountTable& table) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    if (table.forbidden()) throw std::invalid_argument("exact sampling needs a table without forbidden sizes");
    if (n > table.n_max())
        throw std::invalid_argument("count table covers n <= " + std::to_string(table.n_max()) + ", need " +
                                    std::to_string(n));
    std::vector<unsigned> parts;
    std::size_t rest = n;
    std::size_t previous = 0;
    while (rest > 0) {
        BigInt weight_total = table.total(rest) - table.first_part(rest, previous);
        BigInt u = rng.uniform_below(weight_total);
        std::size_t m = 1;
        for (;; ++m) {
            if (m == previous) continue;
            const BigInt& w = table.first_part(rest, m);
            if (u < w) break;
            u -= w;
        }
        parts.push_back(static_cast<unsigned>(m));
        rest -= m;
        previous = m;
    }
    return Composition(std::move(parts));
}

struct RejectionDraw {
    Composition composition;
    std::uint64_t attempts = 0;
};

inline constexpr std::size_t kRejectionMaxN = 60;

// Geometric sampling conditioned on the Carlitz property.
inline RejectionDraw sample_carlitz_rejection(std::size_t n, RngStream& rng, std::uint64_t max_attempts = 100'000'000) {
    if (n > kRejectionMaxN)
        throw ResourceGuardError("rejection sampling is limited to n <= " + std::to_string(kRejectionMaxN));
    for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
        Composition c = sample_composition_geometric(n, rng);
        if (is_carlitz(c)) return {std::move(c), attempt};
    }
    throw ResourceGuardError("retry budget of " + std::to_string(max_attempts) +
                             " exhausted; measured acceptance rate below " + std::to_string(1.0 / max_attempts));
}

namespace detail {

struct Moments {
    std::uint64_t count = 0;
    // Integer sums keep the merge exact and independent of worker order.
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
    void add(std::uint64_t x) {
        ++count;
        sum += x;
        sum_sq += x * x;
    }
    void merge(const Moments& o) {
        count += o.count;
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
};

inline SampleStats to_stats(const Moments& m) {
    SampleStats s;
    s.trials = m.count;
    const double n = static_cast<double>(m.count);
    s.mean = static_cast<double>(m.sum) / n;
    const double var =
        m.count > 1 ? (static_cast<double>(m.sum_sq) - n * s.mean * s.mean) / (n - 1) : 0.0;
    s.std_error = std::sqrt(std::max(var, 0.0) / n);
    return s;
}

// Worker w draws trials w, w + workers, ... from stream (seed, w).
template <class Draw>
Moments run_trials(std::uint64_t trials, std::uint64_t seed, unsigned workers, Draw&& draw) {
    if (workers == 0) workers = 1;
    std::vector<Moments> parts(workers);
    auto job = [&](unsigned w) {
        RngStream rng(seed, w);
        for (std::uint64_t t = w; t < trials; t += workers) parts[w].add(draw(rng));
    };
    if (workers == 1) {
        job(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
    }
    Moments total;
    for (const auto& p : parts) total.merge(p);
    return total;
}

inline void require_trials(std::uint64_t trials) {
    if (trials < 100) throw std::invalid_argument("at least 100 trials are required");
}

}  // namespace detail

// Mean and standard error of D_n over exact uniform Carlitz draws.
inline SampleStats estimate_expected_distinct(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                              unsigned workers = 1) {
    detail::require_trials(trials);
    const CountTable table(n);
    auto m = detail::run_trials(trials, seed, workers, [&](RngStream& rng) {
        return static_cast<std::uint64_t>(distinct_sizes(sample_carlitz_exact(n, rng, table)));
    });
    return detail::to_stats(m);
}

// Fraction of uniform compositions of n with no part equal to 1.
inline SampleStats estimate_avoid1_prob(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                        unsigned workers = 1) {
    detail::require_trials(trials);
    auto m = detail::run_trials(trials, seed, workers, [&](RngStream& rng) {
        const Composition c = sample_composition_geometric(n, rng);
        for (unsigned p : c.parts())
            if (p == 1) return std::uint64_t{0};
        return std::uint64_t{1};
    });
    return detail::to_stats(m);
}

// Fraction of uniform compositions of n that are Carlitz, i.e. a_n / 2^{n-1}.
inline SampleStats estimate_acceptance_rate(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                            unsigned workers = 1) {
    detail::require_trials(trials);
    auto m = detail::run_trials(trials, seed, workers, [&](RngStream& rng) {
        return std::uint64_t{is_carlitz(sample_composition_geometric(n, rng)) ? 1u : 0u};
    });
    return detail::to_stats(m);
}

// Mean number of parts of a uniform composition of n; exactly 1 + (n-1)/2.
inline SampleStats estimate_part_count(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                       unsigned workers = 1) {
    detail::require_trials(trials);
    auto m = detail::run_trials(trials, seed, workers, [&](RngStream& rng) {
        return static_cast<std::uint64_t>(sample_composition_geometric(n, rng).size());
    });
    return detail::to_stats(m);
}

// Both exponential bounds in the part-size-1 argument beat 0.875:
// e^{-2 alpha^2} < 0.875 and e^{-(1/2 - alpha) ln 2} < 0.875.
inline bool verify_appendix_inequalities(double alpha) {
    if (!(alpha > 0 && alpha < 0.5)) throw std::invalid_argument("alpha must lie in (0, 1/2)");
    return std::exp(-2 * alpha * alpha) < 0.875 && std::exp(-(0.5 - alpha) * std::log(2.0)) < 0.875;
}

// min over n <= n_max of (a_n / 2^{n-1}) / 0.875^n: an empirical value for the
// unspecified constant in Q(Omega_n) >= c 0.875^n.
inline double acceptance_constant_estimate(std::size_t n_max = 60) {
    const CountTable table(n_max);
    double best = INFINITY;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double rate = static_cast<double>(Rational(table.total(n), BigInt(1) << (n - 1)));
        best = std::min(best, rate / std::pow(0.875, static_cast<double>(n)));
    }
    return best;
}

}  // namespace carlitz
