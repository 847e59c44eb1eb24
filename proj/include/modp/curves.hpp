#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modp/numerics.hpp"

namespace modp {

struct CurveRow {
    double grid = 0.0;
    Complex ratio;
    Complex reference;
    double abs_gap = 0.0;
};

struct ModPoissonCurve {
    std::string model;
    Complex x;
    std::string speed;          // description of gamma_n
    double kappa = 0.0;         // fitted exp(kappa (x - 1)) correction, 0 when not fitted
    std::optional<std::uint64_t> seed;
    std::vector<CurveRow> rows;
};

enum class CurveModel { perm_C, int_omega, int_bigOmega, poly_omega_q, gl_C };
enum class Speed { log_n, loglog_n };

CurveModel parse_curve_model(std::string_view name);
std::string_view curve_model_name(CurveModel model);
Speed parse_speed(std::string_view name);  // "logn" or "loglogn"
std::string_view speed_name(Speed speed);
// Fixed conventions: permutations, polynomials and GL ln n; integers ln ln n.
Speed default_speed(CurveModel model);

// E[x^{X_n}] / e^{gamma_n (x - 1)} on the grid with E[x^{X_n}] exact. The
// reference is the matching limiting function; every model except perm_C also
// carries exp(kappa (x - 1)) with kappa fitted at the largest grid point.
// Capacity: integers n <= 1e7, polynomial degrees <= 24, GL n <= 8 with q <= 5.
ModPoissonCurve mod_poisson_curve(CurveModel model, std::span<const double> grid, Complex x,
                                  Speed speed, std::int64_t q = 2);

// Exact E[x^{X_n}] for the curve models.
Complex perm_cycle_pgf(std::int64_t n, Complex x);
// q^{-n} [t^n] prod_k (1 + x t^k / (1 - t^k))^{M_q(k)} as a polynomial in x.
std::vector<mpq_class> poly_omega_polynomial(int n, std::int64_t q);
// sum over classes of GL_n(F_q) of x^{C} / |Cent| as a polynomial in x.
std::vector<mpq_class> gl_block_polynomial(int n, std::int64_t q);
Complex eval_polynomial(const std::vector<mpq_class>& coeffs, Complex x);

enum class RandomizedModel { perm, int_omega, int_bigOmega, poly_omega };

RandomizedModel parse_randomized_model(std::string_view name);
std::string_view randomized_model_name(RandomizedModel model);

struct RandomizedOptions {
    std::int64_t max_prime = 10'000'000;  // integer models: primes p <= max_prime
    std::int64_t q = 2;                   // polynomial model
    // Integer models: add (x - 1) sum_{p > max_prime} p^{-alpha} to the log of the
    // truncated product, with the prime sum taken from prime_zeta_fn.
    bool complete_tail = false;
};

// Randomised pgfs at speed ln(1/epsilon) (perm, grid epsilon = 1 - t),
// ln(1/(alpha - 1)) (integers, grid alpha) or ln(1/(1 - t)) (polynomials, grid t).
// References: 1 = Gamma(x) Phi_C(x) (perm); Phi_hat(x) e^{-c0 (x - 1)} (integers);
// Phi_{omega_q hat}(x) e^{-c_q (x - 1)} with c_q = sum_P (-ln(1 - |P|^{-1}) - |P|^{-1})
// (polynomials).
ModPoissonCurve randomized_limit_curve(RandomizedModel model, std::span<const double> params,
                                       Complex x, const RandomizedOptions& options = {});

}  // namespace modp
