#include "modp/fluctuations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "modp/distributions.hpp"
#include "modp/errors.hpp"
#include "modp/gof.hpp"

namespace modp {

namespace {

double exp1_cdf(double s) { return s <= 0.0 ? 0.0 : -std::expm1(-s); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

KsReport to_report(std::string family, double parameter, const GofResult& gof) {
    return {std::move(family), parameter, gof.n, gof.statistic, gof.threshold, gof.p_value,
            gof.pass};
}

// P(X' in [a, b] | X = i) for the chain 1 + floor(R i), b = +inf allowed.
double interval_probability(double alpha, double i, double a, double b) {
    const double log_upper = std::log1p((a - 1.0) / i);
    const double survival_a = std::exp(-alpha * log_upper);
    if (std::isinf(b)) return survival_a;
    const double gap = std::log1p((b - a + 1.0) / (i + a - 1.0));
    return survival_a * -std::expm1(-alpha * gap);
}

struct Cell {
    double lo;
    double hi;  // inclusive, +inf for the absorbing bin
    // Source states standing in for the cell and their weights (sum 1).
    std::vector<std::pair<double, double>> members;
};

// Exact members for narrow bins, otherwise midpoints of 8 equal slices in log i,
// weighted by the zeta density i^{-alpha} di = i^{1 - alpha} d(log i).
Cell make_cell(double lo, double hi, double alpha) {
    Cell cell{lo, hi, {}};
    constexpr int kNodes = 8;
    if (hi - lo + 1.0 <= kNodes) {
        for (double i = lo; i <= hi; i += 1.0) cell.members.emplace_back(i, std::pow(i, -alpha));
    } else {
        const double a = std::log(lo - 0.5);
        const double b = std::log(hi + 0.5);
        for (int k = 0; k < kNodes; ++k) {
            const double u = a + (b - a) * (k + 0.5) / kNodes;
            cell.members.emplace_back(std::exp(u), std::exp((1.0 - alpha) * u));
        }
    }
    double total = 0.0;
    for (const auto& m : cell.members) total += m.second;
    for (auto& m : cell.members) m.second /= total;
    return cell;
}

}  // namespace

FluctFamily parse_fluct_family(std::string_view name) {
    for (const auto f : {FluctFamily::zeta, FluctFamily::delta_zeta, FluctFamily::sf_zeta,
                         FluctFamily::sf_delta_zeta, FluctFamily::geometric}) {
        if (fluct_family_name(f) == name) return f;
    }
    throw UsageError("unknown fluctuation family '" + std::string(name) + "'");
}

std::string_view fluct_family_name(FluctFamily family) {
    switch (family) {
        case FluctFamily::zeta: return "zeta";
        case FluctFamily::delta_zeta: return "deltaZeta";
        case FluctFamily::sf_zeta: return "sfZeta";
        case FluctFamily::sf_delta_zeta: return "sfDeltaZeta";
        case FluctFamily::geometric: return "geometric";
    }
    return "?";
}

KsReport fluctuation_ks(FluctFamily family, double param, std::int64_t n, RngState& rng) {
    if (n < 1) throw DomainError("fluctuation_ks: need n >= 1");
    std::vector<double> scaled(static_cast<std::size_t>(n));
    if (family == FluctFamily::geometric) {
        const auto law = make_dist({Family::geometric, {{"t", param}}});
        const double scale = -std::log(param);
        for (auto& s : scaled) s = scale * law->draw(rng);
    } else {
        const Family f = family == FluctFamily::zeta         ? Family::zeta
                         : family == FluctFamily::delta_zeta ? Family::delta_zeta
                         : family == FluctFamily::sf_zeta    ? Family::sf_zeta
                                                             : Family::sf_delta_zeta;
        const auto law = make_dist({f, {{"alpha", param}}});
        for (auto& s : scaled) s = (param - 1.0) * law->draw_log(rng);
    }
    return to_report(std::string(fluct_family_name(family)), param, ks_test(scaled, exp1_cdf));
}

double normal_sup_distance(const std::function<double(double)>& cdf) {
    constexpr int kPoints = 512;
    double sup = 0.0;
    for (int i = 0; i < kPoints; ++i) {
        const double z = -5.0 + 10.0 * i / (kPoints - 1);
        sup = std::max(sup, std::abs(cdf(z) - normal_cdf(z)));
    }
    return sup;
}

double erdos_kac_sup(std::int64_t n, const Sieve& sieve) {
    if (n < 16) throw DomainError("erdos_kac_sup: need n >= 16");
    if (n > sieve.limit()) throw CapacityError("erdos_kac_sup: n beyond the sieve limit");
    const StatsTable table = stats_table(n, sieve);
    std::vector<double> cumulative;
    double running = 0.0;
    for (const auto c : table.by_omega) {
        running += static_cast<double>(c);
        cumulative.push_back(running / static_cast<double>(n));
    }
    const double mu = std::log(std::log(static_cast<double>(n)));
    const double sigma = std::sqrt(mu);
    return normal_sup_distance([&](double z) {
        const double level = std::floor(mu + z * sigma);
        if (level < 0.0) return 0.0;
        const auto m = static_cast<std::size_t>(level);
        return m >= cumulative.size() ? 1.0 : cumulative[m];
    });
}

double markov_step_cdf(double alpha, double i, double j) {
    if (j < 1.0) return 0.0;
    return -std::expm1(-alpha * std::log1p(j / i));
}

std::vector<TvPoint> markov_tv_curve(double alpha, std::int64_t max_iters, std::int64_t K) {
    if (!(alpha > 1.0)) throw DomainError("markov_tv_curve: need alpha > 1");
    if (K < 1 || K > 10'000) throw CapacityError("markov_tv_curve: need 1 <= K <= 1e4");
    if (max_iters < 0) throw DomainError("markov_tv_curve: need max_iters >= 0");

    std::vector<Cell> cells;
    for (std::int64_t j = 1; j <= K; ++j) {
        const auto d = static_cast<double>(j);
        cells.push_back({d, d, {{d, 1.0}}});
    }
    const double top = static_cast<double>(K) * 1e12;
    for (double lo = static_cast<double>(K + 1); lo < top;) {
        const double hi = std::max(lo, std::ceil(lo * 1.02) - 1.0);
        cells.push_back(make_cell(lo, hi, alpha));
        lo = hi + 1.0;
    }
    const double absorbing_lo = cells.back().hi + 1.0;
    cells.push_back({absorbing_lo, std::numeric_limits<double>::infinity(), {{absorbing_lo, 1.0}}});
    const std::size_t size = cells.size();
    const std::size_t absorbing = size - 1;

    const auto row = [&](std::size_t src, std::vector<double>& out) {
        out.assign(size, 0.0);
        if (src == absorbing) {
            out[absorbing] = 1.0;
            return;
        }
        for (const auto& [i, weight] : cells[src].members) {
            for (std::size_t dst = 0; dst < size; ++dst) {
                out[dst] += weight * interval_probability(alpha, i, cells[dst].lo, cells[dst].hi);
            }
        }
    };
    const bool store = size <= 4000;
    std::vector<double> matrix;
    if (store) {
        matrix.resize(size * size);
        std::vector<double> r;
        for (std::size_t src = 0; src < size; ++src) {
            row(src, r);
            std::copy(r.begin(), r.end(), matrix.begin() + static_cast<std::ptrdiff_t>(src * size));
        }
    }

    const auto target = make_dist({Family::zeta, {{"alpha", alpha}}});
    std::vector<double> zeta_head(static_cast<std::size_t>(K));
    for (std::int64_t j = 1; j <= K; ++j) {
        zeta_head[static_cast<std::size_t>(j - 1)] = target->pmf(j);
    }
    const double zeta_tail = 1.0 - target->cdf(static_cast<double>(K));

    std::vector<double> dist(size, 0.0);
    dist[0] = 1.0;
    const auto tv = [&] {
        double sum = 0.0;
        double tail = 0.0;
        for (std::size_t s = 0; s < size; ++s) {
            if (s < static_cast<std::size_t>(K)) {
                sum += std::abs(dist[s] - zeta_head[s]);
            } else {
                tail += dist[s];
            }
        }
        return 0.5 * (sum + std::abs(tail - zeta_tail));
    };

    std::vector<TvPoint> out{{0, tv()}};
    std::vector<double> next(size);
    std::vector<double> scratch;
    for (std::int64_t it = 1; it <= max_iters; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t src = 0; src < size; ++src) {
            const double mass = dist[src];
            if (mass == 0.0) continue;
            const double* r = nullptr;
            if (store) {
                r = matrix.data() + src * size;
            } else {
                row(src, scratch);
                r = scratch.data();
            }
            for (std::size_t dst = 0; dst < size; ++dst) next[dst] += mass * r[dst];
        }
        dist.swap(next);
        out.push_back({it, tv()});
    }
    return out;
}

KsReport log_exp_series_ks(std::int64_t K, std::int64_t n, RngState& rng, bool plus_sign) {
    if (K < 1 || n < 1) throw DomainError("log_exp_series_ks: need K >= 1 and n >= 1");
    const double euler = std::numbers::egamma;
    std::vector<double> sample(static_cast<std::size_t>(n));
    if (static_cast<double>(K) * static_cast<double>(n) <= 5e7) {
        for (auto& s : sample) {
            double sum = 0.0;
            for (std::int64_t k = K; k >= 1; --k) {
                sum += (rng.exponential() - 1.0) / static_cast<double>(k);
            }
            s = (plus_sign ? sum : -sum) - euler;
        }
    } else {
        // Renyi: sum_{k <= K} E_k / k has the law of the maximum of K Exp(1) variables.
        double harmonic = 0.0;
        for (std::int64_t k = K; k >= 1; --k) harmonic += 1.0 / static_cast<double>(k);
        const auto kd = static_cast<double>(K);
        for (auto& s : sample) {
            const double max_exp = -std::log(-std::expm1(std::log(rng.uniform_open()) / kd));
            const double sum = max_exp - harmonic;
            s = (plus_sign ? sum : -sum) - euler;
        }
    }
    const auto gumbel = [](double s) { return -std::expm1(-std::exp(s)); };
    return to_report("log_exp", static_cast<double>(K), ks_test(sample, gumbel));
}

}  // namespace modp
