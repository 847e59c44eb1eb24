#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace modp {

using Complex = std::complex<double>;

// A value obtained from a truncated product or series together with an upper
// bound on |exact - value| and the number of factors or terms used.
struct TruncatedValue {
    Complex value;
    double tail_bound = 0.0;
    std::int64_t terms_used = 0;
};

// Throws DomainError when a component is NaN or infinite.
void require_finite(Complex z, std::string_view what);

// Gamma function on the complex plane (Lanczos, g = 7, reflection for Re z < 1/2).
Complex gamma_fn(Complex z);

// e^{gamma (x-1)} prod_{k<=terms} (1 + (x-1)/k) e^{-(x-1)/k}, which tends to 1/Gamma(x).
TruncatedValue euler_gamma_product(Complex x, std::int64_t terms);

// Hurwitz zeta sum_{k>=0} (k + a)^{-s} for s > 1, a > 0 (Euler-Maclaurin).
double hurwitz_zeta(double s, double a);

// Riemann zeta and zeta(s) - 1 on s > 1; the latter keeps relative accuracy for large s.
double zeta_fn(double s);
double zeta_minus_one(double s);

// sum_p p^{-s} over primes, through sum_n mu(n)/n log zeta(n s).
double prime_zeta_fn(double s);

enum class Constant { euler_gamma, prime_gamma, c0, c0_prime };

double named_constant(Constant name);
Constant parse_constant(std::string_view name);
std::string_view constant_name(Constant name);

// Moebius function by trial division, for the small arguments used in series.
int moebius_small(std::int64_t n);

}  // namespace modp
