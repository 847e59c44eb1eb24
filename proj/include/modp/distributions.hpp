#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modp/numerics.hpp"
#include "modp/rng.hpp"

namespace modp {

enum class Family {
    bernoulli,
    binomial,
    geometric,
    negbin,
    poisson,
    exponential,
    gamma_dist,
    zeta,
    delta_zeta,
    sf_zeta,
    sf_delta_zeta,
    y_alpha,
};

Family parse_family(std::string_view name);
std::string_view family_name(Family family);

// Parameter names: bernoulli {p}, binomial {n, p}, geometric {t}, negbin {t, s},
// poisson {gamma}, exponential {rate}, gammaDist {alpha}, zeta-type and yAlpha {alpha}.
struct DistSpec {
    Family family;
    std::map<std::string, double> params;
};

std::string describe(const DistSpec& spec);

class Distribution {
public:
    virtual ~Distribution() = default;

    virtual std::string name() const = 0;
    virtual bool is_discrete() const = 0;

    // Smallest point of the support (discrete laws only).
    virtual std::int64_t support_min() const { return 0; }
    virtual double pmf(std::int64_t k) const;
    virtual double density(double t) const;
    // P(X <= t).
    virtual double cdf(double t) const = 0;
    // E[x^X]; throws DomainError outside the region of convergence.
    virtual Complex pgf(Complex x) const = 0;
    virtual double mean() const = 0;

    virtual double draw(RngState& rng) const = 0;
    // log of a draw; stays finite where the draw itself would overflow.
    virtual double draw_log(RngState& rng) const;
    // Integer draw, exact below 2^53 and carried as a logarithm above.
    struct IntegerDraw {
        bool exact = true;
        std::uint64_t value = 0;
        double log_value = 0.0;
    };
    virtual IntegerDraw draw_integer(RngState& rng) const;

    std::vector<double> sample(RngState& rng, std::int64_t n) const;

    // sum_{n >= m} P(X = n) / weight(n), weight(n) = n, or the number of
    // square-free integers in [1, n] when `squarefree_base`. Empty when no
    // closed form is known.
    virtual std::optional<double> uniform_mix_tail(std::int64_t m, bool squarefree_base) const;
};

using DistPtr = std::shared_ptr<const Distribution>;

DistPtr make_dist(const DistSpec& spec);

// Finite law on {first, first + 1, ...} with the given (normalized) weights.
DistPtr finite_dist(std::vector<double> weights, std::int64_t first);

// Law of U_X with U_n uniform on [1, n] (or on the square-free integers of
// [1, n]) independent of X: P(k) = sum_{n >= k} P(X = n) / weight(n).
enum class UniformBase { integers, squarefree };
DistPtr mix_uniform(DistPtr randomizer, UniformBase base = UniformBase::integers);

struct PmfComparison {
    double max_abs_diff = 0.0;
    std::int64_t argmax = 0;
    double tail_mass_bound = 0.0;
};

PmfComparison pmf_equality(const Distribution& a, const Distribution& b, std::int64_t window);

// Draws m from the mixer, then the family with parameter scale(m), plus a constant offset.
enum class MixFamily { poisson, geometric, negbin };

class ParameterMixture {
public:
    ParameterMixture(MixFamily family, std::function<double(double)> scale, DistPtr mixer,
                     double negbin_shape, std::int64_t offset);
    double draw(RngState& rng) const;
    std::vector<double> sample(RngState& rng, std::int64_t n) const;

private:
    MixFamily family_;
    std::function<double(double)> scale_;
    DistPtr mixer_;
    double negbin_shape_;
    std::int64_t offset_;
};

ParameterMixture randomize_parameter(MixFamily family, std::function<double(double)> scale,
                                     const DistSpec& mixer, double negbin_shape = 1.0,
                                     std::int64_t offset = 0);

// Product over primes p <= max_prime of p^{G_p}, G_p ~ Geometric(p^{-alpha}) independent.
struct KhintchinDraw {
    mpz_class value;
    std::vector<std::pair<std::uint32_t, int>> valuations;
};

class KhintchinSampler {
public:
    KhintchinSampler(double alpha, std::int64_t max_prime);
    KhintchinDraw draw(RngState& rng) const;
    // Probability mass of the discarded primes, sum_{p > max_prime} p^{-alpha} bound.
    double truncation_bound() const { return truncation_bound_; }

private:
    double alpha_;
    std::vector<std::uint32_t> primes_;
    std::vector<double> success_;  // p^{-alpha}
    double truncation_bound_;
};

KhintchinDraw khintchin_sample(double alpha, std::int64_t max_prime, RngState& rng);

// X_{k+1} = 1 + floor(R X_k) with R = Exp(1) / Gamma(alpha); saturates at 2^62.
std::uint64_t markov_zeta_sample(double alpha, std::int64_t iters, std::uint64_t start,
                                 RngState& rng);

// Elementary samplers shared by the modules above.
double sample_geometric(double t, RngState& rng);
double sample_poisson(double mean, RngState& rng);
double sample_gamma(double shape, RngState& rng);
double sample_negbin(double t, double s, RngState& rng);

// Square-free helpers for the square-free laws.
std::uint64_t next_squarefree_after(std::uint64_t n);
std::uint64_t squarefree_count_u64(std::uint64_t n);

}  // namespace modp
