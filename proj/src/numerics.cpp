#include "modp/numerics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "modp/errors.hpp"

namespace modp {

namespace {

// Lanczos approximation with g = 7 and nine coefficients (P. Godfrey's set,
// reproduced in Numerical Recipes 3rd ed. and the Wikipedia "Lanczos
// approximation" reference implementation).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

// B_{2j} / (2j)! for j = 1..9.
constexpr std::array<double, 9> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
};

bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

Complex lanczos_right_half(Complex z) {
    z -= 1.0;
    Complex acc = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        acc += kLanczos[i] / (z + static_cast<double>(i));
    }
    const Complex t = z + kLanczosG + 0.5;
    const double sqrt_two_pi = std::sqrt(2.0 * std::numbers::pi);
    return sqrt_two_pi * std::exp((z + 0.5) * std::log(t) - t) * acc;
}

// log(1 + u) - u, accurate for small |u|.
Complex log1p_minus_identity(Complex u) {
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

}  // namespace

void require_finite(Complex z, std::string_view what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError(std::string(what) + ": non-finite argument");
    }
}

Complex gamma_fn(Complex z) {
    require_finite(z, "gamma_fn");
    if (is_nonpositive_integer(z)) {
        throw DomainError("gamma_fn: pole at a non-positive integer");
    }
    if (z.real() < 0.5) {
        const double pi = std::numbers::pi;
        return pi / (std::sin(pi * z) * lanczos_right_half(1.0 - z));
    }
    return lanczos_right_half(z);
}

TruncatedValue euler_gamma_product(Complex x, std::int64_t terms) {
    require_finite(x, "euler_gamma_product");
    if (terms < 1) {
        throw DomainError("euler_gamma_product: need at least one factor");
    }
    const Complex w = x - 1.0;
    if (w == Complex(0.0)) {
        return {1.0, 0.0, terms};
    }
    if (w.imag() == 0.0 && w.real() < 0.0 && w.real() == std::floor(w.real()) &&
        -w.real() <= static_cast<double>(terms)) {
        throw DomainError("euler_gamma_product: a factor vanishes");
    }
    // Small terms first keeps the rounding error near one ulp of the sum.
    Complex log_sum = 0.0;
    for (std::int64_t k = terms; k >= 1; --k) {
        log_sum += log1p_minus_identity(w / static_cast<double>(k));
    }
    const Complex value = std::exp(std::numbers::egamma * w + log_sum);

    const double ratio = std::abs(w) / static_cast<double>(terms + 1);
    double tail = std::numeric_limits<double>::infinity();
    if (ratio < 1.0) {
        const double log_tail =
            std::norm(w) / (2.0 * static_cast<double>(terms) * (1.0 - ratio));
        tail = std::abs(value) * std::expm1(log_tail);
    }
    return {value, tail, terms};
}

double hurwitz_zeta(double s, double a) {
    if (!(s > 1.0) || !std::isfinite(s)) {
        throw DomainError("hurwitz_zeta: need s > 1");
    }
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("hurwitz_zeta: need a > 0");
    }
    const double shift_target = std::max(15.0, 0.5 * (s + 20.0));
    const auto shift = static_cast<std::int64_t>(std::max(0.0, std::ceil(shift_target - a)));

    double head = 0.0;
    for (std::int64_t k = shift - 1; k >= 0; --k) {
        head += std::pow(static_cast<double>(k) + a, -s);
    }
    const double b = static_cast<double>(shift) + a;
    const double b_pow = std::pow(b, -s);
    double tail = b * b_pow / (s - 1.0) + 0.5 * b_pow;
    double rising = s;         // s (s+1) ... (s+2j-2)
    double power = b_pow / b;  // b^{-s-2j+1}
    for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
        tail += kBernoulliOverFactorial[j] * rising * power;
        const double m = static_cast<double>(2 * j + 1);
        rising *= (s + m) * (s + m + 1.0);
        power /= b * b;
    }
    return tail + head;
}

double zeta_minus_one(double s) {
    if (!(s > 1.0)) {
        throw DomainError("zeta_fn: need s > 1");
    }
    return hurwitz_zeta(s, 2.0);
}

double zeta_fn(double s) { return 1.0 + zeta_minus_one(s); }

int moebius_small(std::int64_t n) {
    if (n < 1) {
        throw DomainError("moebius_small: need n >= 1");
    }
    int sign = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) {
                return 0;
            }
            sign = -sign;
        }
    }
    return n > 1 ? -sign : sign;
}

double prime_zeta_fn(double s) {
    if (!(s > 1.0) || !std::isfinite(s)) {
        throw DomainError("prime_zeta_fn: need s > 1");
    }
    // log zeta(n s) <= 2^{1-n s}; stop once that is below 1e-18.
    double sum = 0.0;
    std::int64_t n = 1;
    for (; static_cast<double>(n) * s < 61.0; ++n) {
        const int mu = moebius_small(n);
        if (mu != 0) {
            sum += mu * std::log1p(zeta_minus_one(static_cast<double>(n) * s)) /
                   static_cast<double>(n);
        }
    }
    return sum;
}

double named_constant(Constant name) {
    switch (name) {
        case Constant::euler_gamma:
            return std::numbers::egamma;
        case Constant::c0: {
            double sum = 0.0;
            for (std::int64_t n = 2; n <= 64; ++n) {
                const int mu = moebius_small(n);
                if (mu != 0) {
                    sum += mu * std::log1p(zeta_minus_one(static_cast<double>(n))) /
                           static_cast<double>(n);
                }
            }
            return -sum;
        }
        case Constant::c0_prime: {
            // ln(1 + 1/p) - 1/p = sum_{m>=2} (-1)^{m+1} p^{-m} / m, summed over p first.
            double sum = 0.0;
            for (int m = 62; m >= 2; --m) {
                sum += (m % 2 == 0 ? -1.0 : 1.0) * prime_zeta_fn(m) / m;
            }
            return sum;
        }
        case Constant::prime_gamma: {
            // Mertens: gamma + sum_p (ln(1 - 1/p) + 1/p), expanded the same way.
            double sum = 0.0;
            for (int m = 62; m >= 2; --m) {
                sum += prime_zeta_fn(m) / m;
            }
            return std::numbers::egamma - sum;
        }
    }
    throw UsageError("named_constant: unknown constant");
}

Constant parse_constant(std::string_view name) {
    if (name == "euler_gamma") return Constant::euler_gamma;
    if (name == "prime_gamma") return Constant::prime_gamma;
    if (name == "c0") return Constant::c0;
    if (name == "c0_prime") return Constant::c0_prime;
    throw UsageError("unknown constant '" + std::string(name) + "'");
}

std::string_view constant_name(Constant name) {
    switch (name) {
        case Constant::euler_gamma: return "euler_gamma";
        case Constant::prime_gamma: return "prime_gamma";
        case Constant::c0: return "c0";
        case Constant::c0_prime: return "c0_prime";
    }
    return "?";
}

}  // namespace modp
