#include "modp/gof.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "modp/errors.hpp"

namespace modp {

namespace {

constexpr double kMinExpected = 5.0;
constexpr double kLevel = 0.01;
constexpr double kKsCritical = 1.628;

}  // namespace

GofResult chi_square_gof(std::span<const double> sample, const Distribution& law) {
    if (!law.is_discrete()) {
        throw DomainError("chi_square_gof: needs a discrete law");
    }
    if (sample.empty()) {
        throw DomainError("chi_square_gof: empty sample");
    }
    const auto n = static_cast<double>(sample.size());

    // Bin i covers [starts[i], starts[i+1]); the last bin is open above.
    std::vector<double> starts;
    std::vector<double> expected;
    std::int64_t start = law.support_min();
    double acc = 0.0;
    // Heavy tails are cut into a final open bin after this many support points.
    constexpr std::int64_t kMaxSupport = 1'000'000;
    const std::int64_t last = law.support_min() + kMaxSupport - 1;
    double remaining = 1.0;
    for (std::int64_t k = start; k <= last; ++k) {
        const double p = law.pmf(k);
        acc += n * p;
        // Running complement, re-anchored on the cdf every 4096 points.
        remaining = (k - law.support_min()) % 4096 == 4095
                        ? 1.0 - law.cdf(static_cast<double>(k))
                        : remaining - p;
        const double tail = n * std::max(0.0, remaining);
        if (tail < kMinExpected || k == last) {
            starts.push_back(static_cast<double>(start));
            expected.push_back(acc + tail);
            break;
        }
        if (acc >= kMinExpected) {
            starts.push_back(static_cast<double>(start));
            expected.push_back(acc);
            start = k + 1;
            acc = 0.0;
        }
    }
    if (starts.empty()) {
        throw CapacityError("chi_square_gof: support too spread out to bin");
    }
    // A single residual bin below the threshold is folded into its neighbour.
    if (expected.size() > 1 && expected.back() < kMinExpected) {
        expected[expected.size() - 2] += expected.back();
        expected.pop_back();
        starts.pop_back();
    }

    std::vector<double> observed(expected.size(), 0.0);
    for (const double v : sample) {
        const auto it = std::upper_bound(starts.begin(), starts.end(), v);
        if (it == starts.begin()) {
            throw DomainError("chi_square_gof: observation below the support");
        }
        observed[static_cast<std::size_t>(it - starts.begin()) - 1] += 1.0;
    }

    GofResult out;
    out.n = static_cast<std::int64_t>(sample.size());
    out.dof = static_cast<int>(expected.size()) - 1;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const double d = observed[i] - expected[i];
        out.statistic += d * d / expected[i];
    }
    if (out.dof <= 0) {
        out.p_value = 1.0;
        out.threshold = 0.0;
        out.pass = true;
        return out;
    }
    const boost::math::chi_squared chi(out.dof);
    out.threshold = boost::math::quantile(boost::math::complement(chi, kLevel));
    out.p_value = boost::math::gamma_q(0.5 * out.dof, 0.5 * out.statistic);
    out.pass = out.p_value > kLevel;
    return out;
}

double kolmogorov_survival(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

GofResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) {
        throw DomainError("ks_test: empty sample");
    }
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        const auto rank = static_cast<double>(i);
        d = std::max({d, (rank + 1.0) / n - f, f - rank / n});
    }
    GofResult out;
    out.statistic = std::clamp(d, 0.0, 1.0);
    out.n = static_cast<std::int64_t>(sorted.size());
    const double root = std::sqrt(n);
    out.threshold = kKsCritical / root;
    out.p_value = kolmogorov_survival((root + 0.12 + 0.11 / root) * out.statistic);
    out.pass = out.statistic < out.threshold;
    return out;
}

}  // namespace modp
