#include "modp/phi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "modp/arithmetic.hpp"
#include "modp/combinatorics.hpp"
#include "modp/errors.hpp"

namespace modp {

namespace {

enum class Factor { bernoulli, geometric };

// log(1 + u) - u.
Complex log1p_minus_id(Complex u) {
    if (std::abs(u) < 0.1) {
        Complex power = u * u;
        Complex sum = 0.0;
        for (int m = 2; m <= 18; ++m) {
            sum += (m % 2 == 0 ? -1.0 : 1.0) * power / static_cast<double>(m);
            power *= u;
        }
        return sum;
    }
    return std::log(1.0 + u) - u;
}

// log of E[x^B] e^{-(x-1) v} with B ~ Bernoulli(v), or of the geometric factor
// (1 - v) / (1 - x v) e^{-(x-1) v}.
Complex log_factor(Factor kind, Complex x, double v) {
    if (kind == Factor::bernoulli) return log1p_minus_id((x - 1.0) * v);
    if (std::abs(x) * v < 0.1) {
        // sum_{m >= 2} (x^m - 1) v^m / m
        Complex xm = x;
        double vm = v;
        Complex sum = 0.0;
        for (int m = 2; m <= 40; ++m) {
            xm *= x;
            vm *= v;
            const Complex term = (xm - 1.0) * vm / static_cast<double>(m);
            sum += term;
            if (std::abs(term) < 1e-19 * std::max(std::abs(sum), 1e-300)) break;
        }
        return sum;
    }
    // log((1 - v) / (1 - x v)) = log(1 + w), w = (x - 1) v / (1 - x v); exact zero at x = 1.
    const Complex w = (x - 1.0) * v / (1.0 - x * v);
    return log1p_minus_id(w) + (w - (x - 1.0) * v);
}

// Upper bound c with |log_factor(kind, x, v)| <= c v^2 for every v <= v_max, or +inf.
double quadratic_constant(Factor kind, Complex x, double v_max) {
    if (kind == Factor::bernoulli) {
        const double a = std::abs(x - 1.0);
        return a * v_max <= 0.5 ? a * a : std::numeric_limits<double>::infinity();
    }
    const double r = std::max(1.0, std::abs(x));
    if (r * v_max >= 1.0) return std::numeric_limits<double>::infinity();
    return std::abs(x - 1.0) * r / (1.0 - r * v_max);
}

bool uses_geometric(PhiModelId id) {
    return id == PhiModelId::bigOmega_hat || id == PhiModelId::bigOmega ||
           id == PhiModelId::bigOmega_q_hat || id == PhiModelId::bigOmega_q ||
           id == PhiModelId::C_q_hat || id == PhiModelId::C_q;
}

TruncatedValue finish(Complex log_value, double tail_sum, std::int64_t terms) {
    const Complex value = std::exp(log_value);
    const double tail = std::isfinite(tail_sum) ? std::abs(value) * std::expm1(tail_sum)
                                                : std::numeric_limits<double>::infinity();
    return {value, tail, terms};
}

TruncatedValue prime_product(Factor kind, Complex x, std::int64_t max_prime, bool shifted) {
    if (max_prime > Sieve::kDefaultMaxLimit) {
        throw CapacityError("phi_limit: prime truncation above " +
                            std::to_string(Sieve::kDefaultMaxLimit));
    }
    const auto sieve = shared_sieve(max_prime);
    const auto primes = sieve->primes();
    const auto end = std::upper_bound(primes.begin(), primes.end(),
                                      static_cast<std::uint32_t>(max_prime));
    Complex log_sum = 0.0;
    for (auto it = end; it != primes.begin();) {
        --it;
        const double p = static_cast<double>(*it);
        log_sum += log_factor(kind, x, 1.0 / (shifted ? p + 1.0 : p));
    }
    // sum_{p > P} p^{-2} < 1 / P
    const double v_max = 1.0 / static_cast<double>(max_prime + 1);
    const double tail = quadratic_constant(kind, x, v_max) / static_cast<double>(max_prime);
    return finish(log_sum, tail, end - primes.begin());
}

// Largest degree for which q^k stays well inside the double range.
int degree_cap(std::int64_t q) {
    return static_cast<int>(std::floor(290.0 / std::log10(static_cast<double>(q))));
}

enum class Multiplicity { monic, cycle };

TruncatedValue degree_product(Factor kind, Complex x, std::int64_t q, std::int64_t trunc,
                              Multiplicity mult, bool shifted) {
    const int top = static_cast<int>(std::min<std::int64_t>(trunc, degree_cap(q)));
    const double qd = static_cast<double>(q);
    Complex log_sum = 0.0;
    for (int k = top; k >= 1; --k) {
        const double qk = std::pow(qd, k);
        const double count =
            mult == Multiplicity::monic ? monic_irreducible_count(q, k) : cycle_exponent(q, k);
        if (count == 0.0) continue;
        log_sum += count * log_factor(kind, x, shifted ? 1.0 / (qk + 1.0) : 1.0 / qk);
    }
    // M_q(k) <= q^k / k, and the cycle exponent adds at most 2 q^{k/2}.
    const double k1 = static_cast<double>(top + 1);
    double v2_sum = std::pow(qd, -k1) / (k1 * (1.0 - 1.0 / qd));
    if (mult == Multiplicity::cycle) {
        v2_sum += 2.0 * std::pow(qd, -1.5 * k1) / (1.0 - std::pow(qd, -1.5));
    }
    const double tail = quadratic_constant(kind, x, std::pow(qd, -k1)) * v2_sum;
    return finish(log_sum, tail, top);
}

bool is_gamma_pole(Complex x) {
    return x.imag() == 0.0 && x.real() <= 0.0 && x.real() == std::floor(x.real());
}

TruncatedValue gamma_factor(Complex x, std::int64_t terms) {
    if (is_gamma_pole(x)) return {0.0, 0.0, terms};
    return euler_gamma_product(x, terms);
}

void check_domain(const PhiModel& model, Complex x) {
    require_finite(x, "phi_limit");
    const auto name = std::string(phi_model_name(model.id));
    if (is_q_indexed(model.id) != model.q.has_value()) {
        throw DomainError("phi_limit: model " + name +
                          (model.q ? " takes no q" : " needs q"));
    }
    if (model.q && *model.q < 2) throw DomainError("phi_limit: need q >= 2");
    if (model.id == PhiModelId::bigOmega || model.id == PhiModelId::bigOmega_hat) {
        if (!(std::abs(x) < 2.0)) throw DomainError("phi_limit: " + name + " needs |x| < 2");
    }
    if (model.q && uses_geometric(model.id)) {
        if (!(std::abs(x) < static_cast<double>(*model.q))) {
            throw DomainError("phi_limit: " + name + " needs |x| < q");
        }
    }
    if ((model.id == PhiModelId::C_q || model.id == PhiModelId::C_q_hat) &&
        !is_prime_power(*model.q)) {
        throw DomainError("phi_limit: " + name + " needs a prime power q");
    }
}

TruncatedValue hat_value(PhiModelId id, Complex x, std::int64_t q, std::int64_t trunc) {
    switch (id) {
        case PhiModelId::omega_hat:
            return prime_product(Factor::bernoulli, x, trunc, false);
        case PhiModelId::bigOmega_hat:
            return prime_product(Factor::geometric, x, trunc, false);
        case PhiModelId::sf_bigOmega_int_hat:
            return prime_product(Factor::bernoulli, x, trunc, true);
        case PhiModelId::omega_q_hat:
            return degree_product(Factor::bernoulli, x, q, trunc, Multiplicity::monic, false);
        case PhiModelId::bigOmega_q_hat:
            return degree_product(Factor::geometric, x, q, trunc, Multiplicity::monic, false);
        case PhiModelId::C_q_hat:
            return degree_product(Factor::geometric, x, q, trunc, Multiplicity::cycle, false);
        case PhiModelId::sf_bigOmega_poly_hat:
            return degree_product(Factor::bernoulli, x, q, trunc, Multiplicity::monic, true);
        default:
            break;
    }
    throw DomainError("phi_limit: not an independent model");
}

}  // namespace

std::vector<PhiModelId> all_phi_models() {
    return {PhiModelId::perm_C,         PhiModelId::omega_hat,
            PhiModelId::omega,          PhiModelId::bigOmega_hat,
            PhiModelId::bigOmega,       PhiModelId::omega_q_hat,
            PhiModelId::omega_q,        PhiModelId::bigOmega_q_hat,
            PhiModelId::bigOmega_q,     PhiModelId::C_q_hat,
            PhiModelId::C_q,            PhiModelId::sf_bigOmega_int_hat,
            PhiModelId::sf_bigOmega_poly_hat};
}

std::string_view phi_model_name(PhiModelId id) {
    switch (id) {
        case PhiModelId::perm_C: return "perm_C";
        case PhiModelId::omega_hat: return "omega_hat";
        case PhiModelId::omega: return "omega";
        case PhiModelId::bigOmega_hat: return "bigOmega_hat";
        case PhiModelId::bigOmega: return "bigOmega";
        case PhiModelId::omega_q_hat: return "omega_q_hat";
        case PhiModelId::omega_q: return "omega_q";
        case PhiModelId::bigOmega_q_hat: return "bigOmega_q_hat";
        case PhiModelId::bigOmega_q: return "bigOmega_q";
        case PhiModelId::C_q_hat: return "C_q_hat";
        case PhiModelId::C_q: return "C_q";
        case PhiModelId::sf_bigOmega_int_hat: return "sf_bigOmega_int_hat";
        case PhiModelId::sf_bigOmega_poly_hat: return "sf_bigOmega_poly_hat";
    }
    return "?";
}

PhiModelId parse_phi_model(std::string_view name) {
    for (const PhiModelId id : all_phi_models()) {
        if (phi_model_name(id) == name) return id;
    }
    throw UsageError("unknown limiting-function model '" + std::string(name) + "'");
}

bool is_q_indexed(PhiModelId id) {
    switch (id) {
        case PhiModelId::omega_q_hat:
        case PhiModelId::omega_q:
        case PhiModelId::bigOmega_q_hat:
        case PhiModelId::bigOmega_q:
        case PhiModelId::C_q_hat:
        case PhiModelId::C_q:
        case PhiModelId::sf_bigOmega_poly_hat:
            return true;
        default:
            return false;
    }
}

std::optional<PhiModelId> hat_partner(PhiModelId id) {
    switch (id) {
        case PhiModelId::omega: return PhiModelId::omega_hat;
        case PhiModelId::bigOmega: return PhiModelId::bigOmega_hat;
        case PhiModelId::omega_q: return PhiModelId::omega_q_hat;
        case PhiModelId::bigOmega_q: return PhiModelId::bigOmega_q_hat;
        case PhiModelId::C_q: return PhiModelId::C_q_hat;
        default: return std::nullopt;
    }
}

double monic_irreducible_count(std::int64_t q, int k) {
    if (q < 2 || k < 1) throw DomainError("monic_irreducible_count: need q >= 2, k >= 1");
    if (k <= 60) return necklace_counts(q, k).monic_irreducible.get_d();
    double sum = 0.0;
    for (int d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        const int mu = moebius_small(d);
        if (mu != 0) sum += mu * std::pow(static_cast<double>(q), k / d);
    }
    return sum / k;
}

double cycle_exponent(std::int64_t q, int k) {
    double sum = 0.0;
    for (int d = 1; d <= k; ++d) {
        if (k % d == 0) sum += monic_irreducible_count(q, d) - (d == 1 ? 1.0 : 0.0);
    }
    return sum;
}

TruncatedValue phi_limit(const PhiModel& model, Complex x, std::int64_t trunc) {
    check_domain(model, x);
    if (trunc < 10) throw DomainError("phi_limit: need trunc >= 10");
    if (model.id == PhiModelId::perm_C) return gamma_factor(x, trunc);

    const std::int64_t q = model.q.value_or(0);
    const auto partner = hat_partner(model.id);
    if (!partner) return hat_value(model.id, x, q, trunc);

    const TruncatedValue hat = hat_value(*partner, x, q, trunc);
    const TruncatedValue inv_gamma = gamma_factor(x, kGammaFactorTerms);
    const double err = std::abs(hat.value) * inv_gamma.tail_bound +
                       (std::abs(inv_gamma.value) + inv_gamma.tail_bound) * hat.tail_bound;
    return {hat.value * inv_gamma.value, err, hat.terms_used};
}

}  // namespace modp
