#include "modp/curves.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "modp/arithmetic.hpp"
#include "modp/combinatorics.hpp"
#include "modp/errors.hpp"
#include "modp/phi.hpp"
#include "modp/series.hpp"

namespace modp {

namespace {

constexpr std::int64_t kIntegerCapacity = 10'000'000;
constexpr int kPolyCapacity = 24;
constexpr int kGlCapacity = 8;
constexpr std::int64_t kReferencePrimes = 1'000'000;
constexpr std::int64_t kReferenceDegrees = 200;

std::int64_t as_index(double g, std::int64_t lo, std::int64_t hi, std::string_view what) {
    if (!(g == std::floor(g)) || g < static_cast<double>(lo) || g > static_cast<double>(hi)) {
        throw CapacityError(std::string(what) + ": grid value " + std::to_string(g) +
                            " must be an integer in [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
    }
    return static_cast<std::int64_t>(g);
}

double speed_value(Speed speed, double n) {
    if (speed == Speed::log_n) return std::log(n);
    if (n < 3.0) throw DomainError("ln ln n speed needs n >= 3");
    return std::log(std::log(n));
}

// Real kappa minimising |log(target) - kappa (x - 1)|.
double fit_kappa(Complex target, Complex x) {
    const Complex w = x - 1.0;
    if (std::abs(w) == 0.0 || std::abs(target) == 0.0) return 0.0;
    const Complex l = std::log(target);
    return (std::conj(w) * l).real() / std::norm(w);
}

void attach_reference(ModPoissonCurve& curve, Complex phi, bool fit) {
    if (curve.rows.empty()) return;
    if (fit) {
        const auto last = std::max_element(curve.rows.begin(), curve.rows.end(),
                                           [](const CurveRow& a, const CurveRow& b) {
                                               return a.grid < b.grid;
                                           });
        curve.kappa = std::abs(phi) > 0.0 ? fit_kappa(last->ratio / phi, curve.x) : 0.0;
    }
    const Complex ref = phi * std::exp(curve.kappa * (curve.x - 1.0));
    for (CurveRow& row : curve.rows) {
        row.reference = ref;
        row.abs_gap = std::abs(row.ratio - ref);
    }
}

// Polynomials in x for n = 0..max_n of q^{-n} [t^n] prod_k (1 + x t^k / (1 - t^k))^{M_q(k)}.
std::vector<std::vector<mpq_class>> poly_omega_table(int max_n, std::int64_t q) {
    RationalSeries product = RationalSeries::constant(1, max_n, max_n);
    for (int k = 1; k <= max_n; ++k) {
        const auto tk = RationalSeries::monomial(1, k, 0, 0, max_n, max_n);
        const auto xtk = RationalSeries::monomial(1, k, 1, 0, max_n, max_n);
        const auto one = RationalSeries::constant(1, max_n, max_n);
        const RationalSeries factor = (one - tk + xtk) * ps_inverse(one - tk);
        product = product * ps_pow(factor, mpq_class(necklace_counts(q, k).monic_irreducible));
    }
    std::vector<std::vector<mpq_class>> out;
    mpz_class qn = 1;
    for (int n = 0; n <= max_n; ++n) {
        std::vector<mpq_class> poly(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) poly[static_cast<std::size_t>(i)] = product.coeff(n, i) / qn;
        out.push_back(std::move(poly));
        qn *= q;
    }
    return out;
}

void check_x(Complex x) { require_finite(x, "curve x"); }

ModPoissonCurve make_curve(std::string model, Complex x, std::string speed) {
    ModPoissonCurve curve;
    curve.model = std::move(model);
    curve.x = x;
    curve.speed = std::move(speed);
    return curve;
}

std::span<const std::uint32_t> primes_up_to(const Sieve& sieve, std::int64_t bound) {
    const auto primes = sieve.primes();
    const auto end = std::upper_bound(primes.begin(), primes.end(),
                                      static_cast<std::uint32_t>(bound));
    return primes.first(static_cast<std::size_t>(end - primes.begin()));
}

// sum_{m >= 2} v^m / m = -log(1 - v) - v.
double log_geometric_excess(double v) {
    if (v < 1e-4) return v * v * (0.5 + v / 3.0 + v * v / 4.0);
    return -std::log1p(-v) - v;
}

// M_q(k) q^{-k} in floating point.
double monic_density(std::int64_t q, std::int64_t k) {
    const double qd = static_cast<double>(q);
    if (k > 120) return 1.0 / static_cast<double>(k);
    double sum = 0.0;
    for (std::int64_t d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        const int mu = moebius_small(d);
        if (mu != 0) sum += mu * std::pow(qd, static_cast<double>(k / d - k));
    }
    return sum / static_cast<double>(k);
}

Complex log1p_over(Complex z) {
    if (std::abs(z) < 1e-8) return 1.0 - z / 2.0;
    return std::log(1.0 + z) / z;
}

}  // namespace

CurveModel parse_curve_model(std::string_view name) {
    for (const auto m : {CurveModel::perm_C, CurveModel::int_omega, CurveModel::int_bigOmega,
                         CurveModel::poly_omega_q, CurveModel::gl_C}) {
        if (curve_model_name(m) == name) return m;
    }
    throw UsageError("unknown curve model '" + std::string(name) + "'");
}

std::string_view curve_model_name(CurveModel model) {
    switch (model) {
        case CurveModel::perm_C: return "perm_C";
        case CurveModel::int_omega: return "int_omega";
        case CurveModel::int_bigOmega: return "int_bigOmega";
        case CurveModel::poly_omega_q: return "poly_omega_q";
        case CurveModel::gl_C: return "gl_C";
    }
    return "?";
}

Speed parse_speed(std::string_view name) {
    if (name == "logn") return Speed::log_n;
    if (name == "loglogn") return Speed::loglog_n;
    throw UsageError("unknown speed '" + std::string(name) + "' (logn or loglogn)");
}

std::string_view speed_name(Speed speed) { return speed == Speed::log_n ? "logn" : "loglogn"; }

Speed default_speed(CurveModel model) {
    return model == CurveModel::int_omega || model == CurveModel::int_bigOmega ? Speed::loglog_n
                                                                               : Speed::log_n;
}

Complex perm_cycle_pgf(std::int64_t n, Complex x) {
    if (n < 0) throw DomainError("perm_cycle_pgf: need n >= 0");
    Complex value = 1.0;
    for (std::int64_t k = 1; k <= n; ++k) value *= 1.0 + (x - 1.0) / static_cast<double>(k);
    return value;
}

std::vector<mpq_class> poly_omega_polynomial(int n, std::int64_t q) {
    if (n < 0 || n > kPolyCapacity) throw CapacityError("poly_omega_polynomial: need 0 <= n <= 24");
    if (q < 2) throw DomainError("poly_omega_polynomial: need q >= 2");
    return poly_omega_table(n, q).back();
}

std::vector<mpq_class> gl_block_polynomial(int n, std::int64_t q) {
    std::vector<mpq_class> poly(static_cast<std::size_t>(n) + 1);
    for (const Polypartition& mu : enumerate_polypartitions(n, static_cast<int>(q))) {
        poly[static_cast<std::size_t>(mu.blocks())] += class_weight(mu, q);
    }
    return poly;
}

Complex eval_polynomial(const std::vector<mpq_class>& coeffs, Complex x) {
    Complex out = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) out = out * x + it->get_d();
    return out;
}

ModPoissonCurve mod_poisson_curve(CurveModel model, std::span<const double> grid, Complex x,
                                  Speed speed, std::int64_t q) {
    check_x(x);
    const std::string name(curve_model_name(model));
    ModPoissonCurve curve = make_curve(name, x, std::string(speed_name(speed)));
    const auto ratio_row = [&](double n, Complex pgf) {
        const Complex ratio = pgf / std::exp((x - 1.0) * speed_value(speed, n));
        curve.rows.push_back({n, ratio, 0.0, 0.0});
    };

    switch (model) {
        case CurveModel::perm_C: {
            for (const double g : grid) {
                const auto n = as_index(g, 1, 1'000'000'000, name);
                ratio_row(g, perm_cycle_pgf(n, x));
            }
            const Complex phi = phi_limit({PhiModelId::perm_C, {}}, x, kReferencePrimes).value;
            attach_reference(curve, phi, speed != default_speed(model));
            return curve;
        }
        case CurveModel::int_omega:
        case CurveModel::int_bigOmega: {
            const bool big = model == CurveModel::int_bigOmega;
            std::vector<std::int64_t> points;
            for (const double g : grid) points.push_back(as_index(g, 3, kIntegerCapacity, name));
            std::vector<std::int64_t> sorted = points;
            std::sort(sorted.begin(), sorted.end());
            sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
            const PhiModel phi_model{big ? PhiModelId::bigOmega : PhiModelId::omega, {}};
            // Validates the domain before the sieve pass.
            const Complex phi = phi_limit(phi_model, x, kReferencePrimes).value;
            const auto sieve = shared_sieve(sorted.empty() ? 1000 : sorted.back());
            const auto tables = stats_tables_at(sorted, *sieve);
            std::map<std::int64_t, Complex> pgf;
            for (const StatsTable& t : tables) {
                const auto& counts = big ? t.by_big_omega : t.by_omega;
                Complex sum = 0.0;
                for (std::size_t m = counts.size(); m-- > 0;) {
                    sum = sum * x + static_cast<double>(counts[m]);
                }
                pgf[t.n] = sum / static_cast<double>(t.n);
            }
            for (const auto n : points) ratio_row(static_cast<double>(n), pgf.at(n));
            attach_reference(curve, phi, true);
            return curve;
        }
        case CurveModel::poly_omega_q: {
            const PhiModel phi_model{PhiModelId::omega_q, q};
            const Complex phi = phi_limit(phi_model, x, kReferenceDegrees).value;
            int top = 0;
            for (const double g : grid) {
                top = std::max(top, static_cast<int>(as_index(g, 1, kPolyCapacity, name)));
            }
            const auto table = poly_omega_table(top, q);
            for (const double g : grid) {
                ratio_row(g, eval_polynomial(table[static_cast<std::size_t>(g)], x));
            }
            attach_reference(curve, phi, true);
            return curve;
        }
        case CurveModel::gl_C: {
            const PhiModel phi_model{PhiModelId::C_q, q};
            const Complex phi = phi_limit(phi_model, x, kReferenceDegrees).value;
            for (const double g : grid) {
                const auto n = static_cast<int>(as_index(g, 1, kGlCapacity, name));
                ratio_row(g, eval_polynomial(gl_block_polynomial(n, q), x));
            }
            attach_reference(curve, phi, true);
            return curve;
        }
    }
    throw UsageError("mod_poisson_curve: unknown model");
}

RandomizedModel parse_randomized_model(std::string_view name) {
    for (const auto m : {RandomizedModel::perm, RandomizedModel::int_omega,
                         RandomizedModel::int_bigOmega, RandomizedModel::poly_omega}) {
        if (randomized_model_name(m) == name) return m;
    }
    throw UsageError("unknown randomised model '" + std::string(name) + "'");
}

std::string_view randomized_model_name(RandomizedModel model) {
    switch (model) {
        case RandomizedModel::perm: return "perm";
        case RandomizedModel::int_omega: return "int_omega";
        case RandomizedModel::int_bigOmega: return "int_bigOmega";
        case RandomizedModel::poly_omega: return "poly_omega";
    }
    return "?";
}

ModPoissonCurve randomized_limit_curve(RandomizedModel model, std::span<const double> params,
                                       Complex x, const RandomizedOptions& options) {
    check_x(x);
    const Complex w = x - 1.0;
    switch (model) {
        case RandomizedModel::perm: {
            ModPoissonCurve curve = make_curve("rand_perm", x, "ln(1/epsilon)");
            for (const double eps : params) {
                if (!(eps >= 1e-6 && eps < 1.0)) {
                    throw DomainError("rand_perm: epsilon must lie in [1e-6, 1)");
                }
                const double t = 1.0 - eps;
                // sum_n P(g_t = n) E[x^{C(sigma_n)}] with the rising factorial built term by term.
                Complex term = eps;  // (1 - t) t^n x^{rising n} / n!
                Complex sum = term;
                const double settle = 2.0 * (std::abs(x) + 1.0) / eps + 50.0;
                for (std::int64_t n = 1; n < 4'000'000'000LL; ++n) {
                    term *= t * (x + static_cast<double>(n - 1)) / static_cast<double>(n);
                    sum += term;
                    if (static_cast<double>(n) > settle && std::abs(term) < 1e-17 * std::abs(sum)) {
                        break;
                    }
                }
                const Complex ratio = sum * std::exp(w * std::log(eps));
                curve.rows.push_back({eps, ratio, 0.0, 0.0});
            }
            const Complex phi = phi_limit({PhiModelId::perm_C, {}}, x, kReferencePrimes).value;
            attach_reference(curve, phi * gamma_fn(x), false);
            return curve;
        }
        case RandomizedModel::int_omega:
        case RandomizedModel::int_bigOmega: {
            const bool big = model == RandomizedModel::int_bigOmega;
            if (big && !(std::abs(x) < 2.0)) throw DomainError("rand_bigOmega: need |x| < 2");
            ModPoissonCurve curve =
                make_curve(big ? "rand_bigOmega" : "rand_omega", x, "ln(1/(alpha-1))");
            const PhiModel hat{big ? PhiModelId::bigOmega_hat : PhiModelId::omega_hat, {}};
            const Complex phi = phi_limit(hat, x, options.max_prime).value;
            const auto sieve = shared_sieve(options.max_prime);
            const auto primes = primes_up_to(*sieve, options.max_prime);
            for (const double alpha : params) {
                if (!(alpha > 1.0) || !std::isfinite(alpha)) {
                    throw DomainError("randomised integer model: need alpha > 1");
                }
                Complex log_pgf = 0.0;
                double head = 0.0;
                for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
                    const double v = std::pow(static_cast<double>(*it), -alpha);
                    head += v;
                    log_pgf += big ? std::log1p(-v) - std::log(1.0 - x * v) : std::log(1.0 + w * v);
                }
                if (options.complete_tail) log_pgf += w * (prime_zeta_fn(alpha) - head);
                const Complex ratio = std::exp(w * std::log(alpha - 1.0) + log_pgf);
                curve.rows.push_back({alpha, ratio, 0.0, 0.0});
            }
            const double c0 = named_constant(Constant::c0);
            attach_reference(curve, phi * std::exp(-c0 * w), false);
            return curve;
        }
        case RandomizedModel::poly_omega: {
            const std::int64_t q = options.q;
            ModPoissonCurve curve = make_curve("rand_poly_omega", x, "ln(1/(1-t))");
            const Complex phi = phi_limit({PhiModelId::omega_q_hat, q}, x, kReferenceDegrees).value;
            const double qd = static_cast<double>(q);
            double c_q = 0.0;
            for (int k = static_cast<int>(kReferenceDegrees); k >= 1; --k) {
                const double qk = std::pow(qd, k);
                c_q += monic_irreducible_count(q, k) * log_geometric_excess(1.0 / qk);
            }
            for (const double t : params) {
                if (!(t > 0.0 && t <= 1.0 - 4e-7)) {
                    throw DomainError("rand_poly_omega: t must lie in (0, 1 - 4e-7]");
                }
                // log E[x^{omega_q(Q_{g_t})}] = sum_k M_q(k) log(1 + (x - 1) (t/q)^k)
                Complex log_pgf = 0.0;
                double tk = 1.0;
                for (std::int64_t k = 1;; ++k) {
                    tk *= t;
                    const double density = monic_density(q, k);  // M_q(k) q^{-k}
                    const Complex z = w * std::pow(qd, -static_cast<double>(k)) * tk;
                    const Complex term = w * density * tk * log1p_over(z);
                    log_pgf += term;
                    if (k > 10 && tk / static_cast<double>(k) < 1e-18) break;
                }
                const Complex ratio = std::exp(w * std::log1p(-t) + log_pgf);
                curve.rows.push_back({t, ratio, 0.0, 0.0});
            }
            attach_reference(curve, phi * std::exp(-c_q * w), false);
            return curve;
        }
    }
    throw UsageError("randomized_limit_curve: unknown model");
}

}  // namespace modp
