#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modp/arithmetic.hpp"
#include "modp/rng.hpp"

namespace modp {

struct KsReport {
    std::string family;
    double parameter = 0.0;
    std::int64_t n = 0;
    double statistic = 0.0;
    double threshold = 0.0;  // 1% critical value 1.628 / sqrt(n)
    double p_value = 1.0;
    bool pass = false;
};

enum class FluctFamily { zeta, delta_zeta, sf_zeta, sf_delta_zeta, geometric };

FluctFamily parse_fluct_family(std::string_view name);
std::string_view fluct_family_name(FluctFamily family);

// KS distance between {(alpha - 1) ln X_i} (or {ln(1/t) G_i} for the geometric
// family, param = t) and Exp(1).
KsReport fluctuation_ks(FluctFamily family, double param, std::int64_t n, RngState& rng);

// sup over 512 evenly spaced points of [-5, 5] of |F(z) - Phi(z)| for a cdf F.
double normal_sup_distance(const std::function<double(double)>& cdf);

// Erdos-Kac distance for omega(U_n), U_n uniform on [1, n], from exact sieve counts.
double erdos_kac_sup(std::int64_t n, const Sieve& sieve);

struct TvPoint {
    std::int64_t iter = 0;
    double tv = 0.0;
};

// Chain X' = 1 + floor(R X), R = Exp(1) / Gamma(alpha), started at 1. States
// 1..K are tracked exactly; larger states are pooled into geometric bins (ratio
// 1.02) up to K 10^12 plus an absorbing top bin. A bin leaves through the
// average of its members' transitions, weighted by i^{-alpha}. TV is taken on {1, ..., K, > K}
// against Zeta(alpha).
std::vector<TvPoint> markov_tv_curve(double alpha, std::int64_t max_iters, std::int64_t K);

// P(X' <= j | X = i) for real i >= 1: 1 - (1 + j / i)^{-alpha}.
double markov_step_cdf(double alpha, double i, double j);

// KS of n draws of -gamma - sum_{k <= K} (E_k - 1) / k against the law of ln E,
// P(ln E <= s) = 1 - exp(-e^s). With `plus_sign` the series enters with a plus
// sign instead; that sum converges to -ln E - 2 gamma in law, not to ln E.
KsReport log_exp_series_ks(std::int64_t K, std::int64_t n, RngState& rng, bool plus_sign = false);

}  // namespace modp
