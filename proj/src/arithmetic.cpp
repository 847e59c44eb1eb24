#include "modp/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "modp/errors.hpp"

namespace modp {

std::uint32_t Sieve::smallest_prime_factor(std::int64_t k) const {
    if (k < 2 || k > limit_) {
        throw DomainError("sieve query " + std::to_string(k) + " outside [2, limit]");
    }
    return spf_[static_cast<std::size_t>(k)];
}

bool Sieve::is_prime(std::int64_t k) const {
    return k >= 2 && smallest_prime_factor(k) == static_cast<std::uint32_t>(k);
}

Sieve build_sieve(std::int64_t limit, std::int64_t max_limit) {
    if (limit < 2 || limit > max_limit) {
        throw CapacityError("build_sieve: limit " + std::to_string(limit) +
                            " outside [2, " + std::to_string(max_limit) + "]");
    }
    Sieve s;
    s.limit_ = limit;
    s.spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
    // Linear sieve: every composite is struck once, by its smallest prime factor.
    for (std::int64_t i = 2; i <= limit; ++i) {
        auto& spf_i = s.spf_[static_cast<std::size_t>(i)];
        if (spf_i == 0) {
            spf_i = static_cast<std::uint32_t>(i);
            s.primes_.push_back(spf_i);
        }
        for (const std::uint32_t p : s.primes_) {
            if (p > spf_i || i * p > limit) {
                break;
            }
            s.spf_[static_cast<std::size_t>(i * p)] = p;
        }
    }
    return s;
}

std::shared_ptr<const Sieve> shared_sieve(std::int64_t limit) {
    static std::mutex guard;
    static std::shared_ptr<const Sieve> cached;
    const std::lock_guard lock(guard);
    if (!cached || cached->limit() < limit) {
        cached = std::make_shared<const Sieve>(build_sieve(std::max<std::int64_t>(limit, 1000)));
    }
    return cached;
}

FactorStats factor_stats(std::int64_t k, const Sieve& sieve) {
    if (k < 1 || k > sieve.limit()) {
        throw DomainError("factor_stats: " + std::to_string(k) + " outside [1, limit]");
    }
    FactorStats out;
    while (k > 1) {
        const std::uint32_t p = sieve.smallest_prime_factor(k);
        int e = 0;
        while (k % p == 0) {
            k /= p;
            ++e;
        }
        out.factorization.emplace_back(p, e);
        out.omega += 1;
        out.big_omega += e;
    }
    out.squarefree = out.omega == out.big_omega;
    out.moebius = out.squarefree ? (out.omega % 2 == 0 ? 1 : -1) : 0;
    return out;
}

namespace {

void bump(std::vector<std::int64_t>& counts, int index) {
    if (counts.size() <= static_cast<std::size_t>(index)) {
        counts.resize(static_cast<std::size_t>(index) + 1, 0);
    }
    ++counts[static_cast<std::size_t>(index)];
}

}  // namespace

std::vector<StatsTable> stats_tables_at(std::span<const std::int64_t> checkpoints,
                                        const Sieve& sieve) {
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
        throw DomainError("stats_tables_at: checkpoints must be increasing");
    }
    for (const auto n : checkpoints) {
        if (n < 1 || n > sieve.limit()) {
            throw DomainError("stats_table: " + std::to_string(n) + " outside [1, limit]");
        }
    }
    std::vector<StatsTable> out;
    out.reserve(checkpoints.size());
    StatsTable running;
    std::size_t next = 0;
    std::int64_t k = 1;
    const auto snapshot_up_to = [&](std::int64_t upto) {
        for (; k <= upto; ++k) {
            int omega = 0;
            int big_omega = 0;
            std::int64_t m = k;
            while (m > 1) {
                const std::uint32_t p = sieve.smallest_prime_factor(m);
                ++omega;
                do {
                    m /= p;
                    ++big_omega;
                } while (m % p == 0);
            }
            bump(running.by_omega, omega);
            bump(running.by_big_omega, big_omega);
            running.squarefree += omega == big_omega ? 1 : 0;
        }
        running.n = upto;
    };
    for (; next < checkpoints.size(); ++next) {
        snapshot_up_to(checkpoints[next]);
        out.push_back(running);
    }
    return out;
}

StatsTable stats_table(std::int64_t n, const Sieve& sieve) {
    const std::int64_t points[] = {n};
    return stats_tables_at(points, sieve).front();
}

std::int64_t squarefree_count(std::int64_t x, const Sieve& sieve) {
    if (x < 1 || x > sieve.limit()) {
        throw DomainError("squarefree_count: " + std::to_string(x) + " outside [1, limit]");
    }
    std::int64_t total = x;  // d = 1
    for (std::int64_t d = 2; d * d <= x; ++d) {
        const int mu = factor_stats(d, sieve).moebius;
        total += mu * (x / (d * d));
    }
    return total;
}

namespace {

const std::vector<std::uint32_t>& trial_primes() {
    // Covers cube roots of every 64-bit integer.
    static const std::vector<std::uint32_t> primes = [] {
        const Sieve s = build_sieve(2'700'000);
        return std::vector<std::uint32_t>(s.primes().begin(), s.primes().end());
    }();
    return primes;
}

bool is_perfect_square(std::uint64_t m) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(m)));
    using wide = unsigned __int128;
    while (wide(r) * r > m) --r;
    while (wide(r + 1) * (r + 1) <= m) ++r;
    return wide(r) * r == m;
}

}  // namespace

bool is_squarefree_u64(std::uint64_t n) {
    if (n == 0) {
        throw DomainError("is_squarefree_u64: zero");
    }
    for (const std::uint32_t p : trial_primes()) {
        const std::uint64_t pp = p;
        if (pp * pp > n / pp) {
            break;
        }
        if (n % pp == 0) {
            n /= pp;
            if (n % pp == 0) {
                return false;
            }
        }
    }
    // What remains has at most two prime factors, both above the cube root.
    return n == 1 || !is_perfect_square(n);
}

}  // namespace modp
