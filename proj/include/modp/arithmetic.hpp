#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace modp {

// Smallest-prime-factor table on [2, limit] plus the list of primes.
class Sieve {
public:
    static constexpr std::int64_t kDefaultMaxLimit = 100'000'000;

    std::int64_t limit() const { return limit_; }
    std::uint32_t smallest_prime_factor(std::int64_t k) const;
    bool is_prime(std::int64_t k) const;
    std::span<const std::uint32_t> primes() const { return primes_; }

private:
    friend Sieve build_sieve(std::int64_t limit, std::int64_t max_limit);
    std::int64_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

Sieve build_sieve(std::int64_t limit, std::int64_t max_limit = Sieve::kDefaultMaxLimit);

// Process-wide sieve covering at least `limit`, rebuilt only when a larger one is needed.
std::shared_ptr<const Sieve> shared_sieve(std::int64_t limit);

struct FactorStats {
    std::vector<std::pair<std::uint32_t, int>> factorization;
    int omega = 0;
    int big_omega = 0;
    int moebius = 1;
    bool squarefree = true;
};

FactorStats factor_stats(std::int64_t k, const Sieve& sieve);

// Counts of k <= n by omega(k) and by Omega(k), and the number of square-free k <= n.
struct StatsTable {
    std::int64_t n = 0;
    std::vector<std::int64_t> by_omega;
    std::vector<std::int64_t> by_big_omega;
    std::int64_t squarefree = 0;
};

StatsTable stats_table(std::int64_t n, const Sieve& sieve);

// The same counts at every checkpoint of an increasing list, in a single pass.
std::vector<StatsTable> stats_tables_at(std::span<const std::int64_t> checkpoints,
                                        const Sieve& sieve);

// #{k <= x : k square-free} through sum_{d <= sqrt x} mu(d) floor(x / d^2).
std::int64_t squarefree_count(std::int64_t x, const Sieve& sieve);

// Square-free test for arbitrary 64-bit n, by trial division up to the cube root.
bool is_squarefree_u64(std::uint64_t n);

}  // namespace modp
