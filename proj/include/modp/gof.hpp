#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "modp/distributions.hpp"

namespace modp {

struct GofResult {
    double statistic = 0.0;
    double threshold = 0.0;  // rejection threshold at level 1%
    double p_value = 1.0;
    std::int64_t n = 0;
    int dof = 0;  // chi-square only
    bool pass = false;
};

// Pearson chi-square against a discrete law. Consecutive support points are
// pooled until each bin expects at least 5 observations; the last bin is the
// upper tail. Passes when p > 0.01.
GofResult chi_square_gof(std::span<const double> sample, const Distribution& law);

// Kolmogorov-Smirnov against a continuous cdf; passes when the statistic is
// below the asymptotic 1% critical value 1.628 / sqrt(n).
GofResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf);

// Asymptotic Kolmogorov survival function P(K > lambda).
double kolmogorov_survival(double lambda);

}  // namespace modp
