#include "modp/distributions.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "modp/arithmetic.hpp"
#include "modp/errors.hpp"

namespace modp {

namespace {

constexpr double kTwo53 = 9007199254740992.0;
const double kLogTwo52 = 52.0 * std::numbers::ln2;
constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Parameter handling

double required(const DistSpec& spec, const char* key) {
    const auto it = spec.params.find(key);
    if (it == spec.params.end()) {
        throw ConstructionError(std::string(family_name(spec.family)) + ": missing parameter '" +
                                key + "'");
    }
    if (!std::isfinite(it->second)) {
        throw ConstructionError(std::string(family_name(spec.family)) + ": parameter '" + key +
                                "' is not finite");
    }
    return it->second;
}

void only_keys(const DistSpec& spec, std::initializer_list<const char*> keys) {
    for (const auto& [name, value] : spec.params) {
        const bool known =
            std::any_of(keys.begin(), keys.end(), [&](const char* k) { return name == k; });
        if (!known) {
            throw ConstructionError(std::string(family_name(spec.family)) +
                                    ": unknown parameter '" + name + "'");
        }
    }
}

void check(bool ok, const std::string& what) {
    if (!ok) {
        throw ConstructionError(what);
    }
}

Complex ipow(Complex x, std::uint64_t n) {
    Complex result = 1.0;
    while (n > 0) {
        if (n & 1U) {
            result *= x;
        }
        x *= x;
        n >>= 1U;
    }
    return result;
}

void require_unit_disc(Complex x, const std::string& who) {
    require_finite(x, who);
    if (std::abs(x) > 1.0 + 1e-15) {
        throw DomainError(who + ": pgf needs |x| <= 1");
    }
}

// E[x^X] by direct summation for |x| <= 1. Stops when the remaining mass,
// weighted by |x|^k, is negligible, or after a fixed number of terms.
Complex summed_pgf(const Distribution& d, Complex x, const std::string& who) {
    require_unit_disc(x, who);
    if (x == Complex(1.0)) {
        return 1.0;
    }
    const double r = std::abs(x);
    constexpr std::int64_t kMaxTerms = 20'000'000;
    Complex acc = 0.0;
    const std::int64_t first = d.support_min();
    Complex xk = ipow(x, static_cast<std::uint64_t>(first));
    double rk = std::abs(xk);
    double remaining = 1.0;
    for (std::int64_t k = first; k < first + kMaxTerms; ++k) {
        const double p = d.pmf(k);
        acc += p * xk;
        remaining -= p;
        xk *= x;
        rk *= r;
        if (std::max(remaining, 0.0) * rk < 1e-17) {
            break;
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Square-free tables

struct SquarefreeTable {
    static constexpr std::uint64_t kLimit = 1U << 22;
    std::vector<std::int8_t> moebius;
    std::vector<std::uint32_t> count;  // M_s(n) for n <= kLimit

    SquarefreeTable() {
        const Sieve s = build_sieve(static_cast<std::int64_t>(kLimit));
        moebius.assign(kLimit + 1, 0);
        count.assign(kLimit + 1, 0);
        moebius[1] = 1;
        count[1] = 1;
        for (std::uint64_t n = 2; n <= kLimit; ++n) {
            const std::uint64_t p = s.smallest_prime_factor(static_cast<std::int64_t>(n));
            const std::uint64_t m = n / p;
            moebius[n] = (m % p == 0) ? 0 : static_cast<std::int8_t>(-moebius[m]);
            count[n] = count[n - 1] + (moebius[n] != 0 ? 1U : 0U);
        }
    }
};

const SquarefreeTable& sf_table() {
    static const SquarefreeTable table;
    return table;
}

bool is_sf(std::uint64_t n) {
    if (n <= SquarefreeTable::kLimit) {
        return sf_table().moebius[n] != 0;
    }
    return is_squarefree_u64(n);
}

int moebius_of(std::uint64_t d) {
    if (d <= SquarefreeTable::kLimit) {
        return sf_table().moebius[d];
    }
    return moebius_small(static_cast<std::int64_t>(d));
}

// Above this the square-free tail uses the density-one form; its relative error is O(n^{-1/2}).
constexpr double kSfExactTail = 1e10;

// (6 / pi^2) x^{1 - alpha} / (alpha - 1), from M_s(x) = 6x / pi^2 + O(sqrt(x)).
double sf_tail_asymptotic(double alpha, double x) {
    return 6.0 / (std::numbers::pi * std::numbers::pi) * std::pow(x, 1.0 - alpha) / (alpha - 1.0);
}

// sum_{k > n, k square-free} k^{-alpha}, through sum_d mu(d) d^{-2 alpha} zeta(alpha, n/d^2 + 1).
double sf_zeta_tail(double alpha, std::uint64_t n, double zeta_a, double zeta_sf) {
    if (static_cast<double>(n) > kSfExactTail) return sf_tail_asymptotic(alpha, static_cast<double>(n));
    double tail = zeta_sf;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        const int mu = moebius_of(d);
        if (mu == 0) {
            continue;
        }
        const double a = static_cast<double>(n / (d * d)) + 1.0;
        tail += mu * std::pow(static_cast<double>(d), -2.0 * alpha) *
                (hurwitz_zeta(alpha, a) - zeta_a);
    }
    return std::max(tail, 0.0);
}

// ---------------------------------------------------------------------------
// Adaptive Simpson

template <class Fn>
auto simpson_step(const Fn& f, double a, double b, decltype(f(a)) fa, decltype(f(a)) fm,
                  decltype(f(a)) fb, decltype(f(a)) whole, double tol, int depth)
    -> decltype(f(a)) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const auto flm = f(lm);
    const auto frm = f(rm);
    const auto left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const auto right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const auto delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class Fn>
auto adaptive_simpson(const Fn& f, double a, double b, double tol) -> decltype(f(a)) {
    const auto fa = f(a);
    const auto fb = f(b);
    const auto fm = f(0.5 * (a + b));
    const auto whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

// ---------------------------------------------------------------------------
// Elementary laws

class BernoulliDist final : public Distribution {
public:
    explicit BernoulliDist(double p) : p_(p) {}
    std::string name() const override { return "bernoulli"; }
    bool is_discrete() const override { return true; }
    double pmf(std::int64_t k) const override { return k == 0 ? 1.0 - p_ : (k == 1 ? p_ : 0.0); }
    double cdf(double t) const override { return t < 0 ? 0.0 : (t < 1 ? 1.0 - p_ : 1.0); }
    Complex pgf(Complex x) const override {
        require_finite(x, "bernoulli pgf");
        return 1.0 - p_ + p_ * x;
    }
    double mean() const override { return p_; }
    double draw(RngState& rng) const override { return rng.uniform() < p_ ? 1.0 : 0.0; }

private:
    double p_;
};

class BinomialDist final : public Distribution {
public:
    BinomialDist(std::int64_t n, double p) : n_(n), p_(p) {}
    std::string name() const override { return "binomial"; }
    bool is_discrete() const override { return true; }
    double pmf(std::int64_t k) const override {
        if (k < 0 || k > n_) return 0.0;
        if (p_ == 0.0) return k == 0 ? 1.0 : 0.0;
        if (p_ == 1.0) return k == n_ ? 1.0 : 0.0;
        const double nk = static_cast<double>(n_ - k);
        const double kk = static_cast<double>(k);
        return std::exp(std::lgamma(static_cast<double>(n_) + 1) - std::lgamma(kk + 1) -
                        std::lgamma(nk + 1) + kk * std::log(p_) + nk * std::log1p(-p_));
    }
    double cdf(double t) const override {
        if (t < 0) return 0.0;
        const auto k = static_cast<std::int64_t>(std::floor(t));
        if (k >= n_) return 1.0;
        if (p_ == 0.0) return 1.0;
        if (p_ == 1.0) return 0.0;
        return boost::math::ibeta(static_cast<double>(n_ - k), static_cast<double>(k + 1),
                                  1.0 - p_);
    }
    Complex pgf(Complex x) const override {
        require_finite(x, "binomial pgf");
        return ipow(1.0 - p_ + p_ * x, static_cast<std::uint64_t>(n_));
    }
    double mean() const override { return static_cast<double>(n_) * p_; }
    double draw(RngState& rng) const override {
        return static_cast<double>(std::binomial_distribution<std::int64_t>(n_, p_)(rng));
    }

private:
    std::int64_t n_;
    double p_;
};

class GeometricDist final : public Distribution {
public:
    explicit GeometricDist(double t) : t_(t) {}
    std::string name() const override { return "geometric"; }
    bool is_discrete() const override { return true; }
    double pmf(std::int64_t k) const override {
        return k < 0 ? 0.0 : (1.0 - t_) * std::pow(t_, static_cast<double>(k));
    }
    double cdf(double t) const override {
        return t < 0 ? 0.0 : 1.0 - std::pow(t_, std::floor(t) + 1.0);
    }
    Complex pgf(Complex x) const override {
        require_finite(x, "geometric pgf");
        if (std::abs(t_ * x) >= 1.0) throw DomainError("geometric pgf: need |t x| < 1");
        return (1.0 - t_) / (1.0 - t_ * x);
    }
    double mean() const override { return t_ / (1.0 - t_); }
    double draw(RngState& rng) const override { return sample_geometric(t_, rng); }

private:
    double t_;
};

class NegBinDist final : public Distribution {
public:
    NegBinDist(double t, double s) : t_(t), s_(s) {}
    std::string name() const override { return "negbin"; }
    bool is_discrete() const override { return true; }
    double pmf(std::int64_t k) const override {
        if (k < 0) return 0.0;
        const double kk = static_cast<double>(k);
        return std::exp(s_ * std::log1p(-t_) + kk * std::log(t_) + std::lgamma(s_ + kk) -
                        std::lgamma(s_) - std::lgamma(kk + 1.0));
    }
    double cdf(double t) const override {
        if (t < 0) return 0.0;
        return boost::math::ibeta(s_, std::floor(t) + 1.0, 1.0 - t_);
    }
    Complex pgf(Complex x) const override {
        require_finite(x, "negbin pgf");
        if (std::abs(t_ * x) >= 1.0) throw DomainError("negbin pgf: need |t x| < 1");
        return std::exp(s_ * std::log((1.0 - t_) / (1.0 - t_ * x)));
    }
    double mean() const override { return s_ * t_ / (1.0 - t_); }
    double draw(RngState& rng) const override { return sample_negbin(t_, s_, rng); }

private:
    double t_;
    double s_;
};

class PoissonDist final : public Distribution {
public:
    explicit PoissonDist(double gamma) : gamma_(gamma) {}
    std::string name() const override { return "poisson"; }
    bool is_discrete() const override { return true; }
    double pmf(std::int64_t k) const override {
        if (k < 0) return 0.0;
        const double kk = static_cast<double>(k);
        return std::exp(-gamma_ + kk * std::log(gamma_) - std::lgamma(kk + 1.0));
    }
    double cdf(double t) const override {
        return t < 0 ? 0.0 : boost::math::gamma_q(std::floor(t) + 1.0, gamma_);
    }
    Complex pgf(Complex x) const override {
        require_finite(x, "poisson pgf");
        return std::exp(gamma_ * (x - 1.0));
    }
    double mean() const override { return gamma_; }
    double draw(RngState& rng) const override { return sample_poisson(gamma_, rng); }

private:
    double gamma_;
};

class ExponentialDist final : public Distribution {
public:
    explicit ExponentialDist(double rate) : rate_(rate) {}
    std::string name() const override { return "exponential"; }
    bool is_discrete() const override { return false; }
    double density(double t) const override { return t < 0 ? 0.0 : rate_ * std::exp(-rate_ * t); }
    double cdf(double t) const override { return t < 0 ? 0.0 : -std::expm1(-rate_ * t); }
    Complex pgf(Complex x) const override {
        require_finite(x, "exponential pgf");
        if (x == Complex(0.0)) return 0.0;
        const Complex lx = std::log(x);
        if (lx.real() >= rate_) throw DomainError("exponential pgf: need Re log x < rate");
        return rate_ / (rate_ - lx);
    }
    double mean() const override { return 1.0 / rate_; }
    double draw(RngState& rng) const override { return rng.exponential() / rate_; }

private:
    double rate_;
};

class GammaDist final : public Distribution {
public:
    explicit GammaDist(double alpha) : alpha_(alpha) {}
    std::string name() const override { return "gammaDist"; }
    bool is_discrete() const override { return false; }
    double density(double t) const override {
        if (t <= 0) return 0.0;
        return std::exp((alpha_ - 1.0) * std::log(t) - t - std::lgamma(alpha_));
    }
    double cdf(double t) const override {
        return t <= 0 ? 0.0 : boost::math::gamma_p(alpha_, t);
    }
    Complex pgf(Complex x) const override {
        require_finite(x, "gammaDist pgf");
        if (x == Complex(0.0)) return 0.0;
        const Complex lx = std::log(x);
        if (lx.real() >= 1.0) throw DomainError("gammaDist pgf: need Re log x < 1");
        return std::exp(-alpha_ * std::log(1.0 - lx));
    }
    double mean() const override { return alpha_; }
    double draw(RngState& rng) const override { return sample_gamma(alpha_, rng); }

private:
    double alpha_;
};

// ---------------------------------------------------------------------------
// Zeta and delta-Zeta: survival function through Hurwitz zeta and inversion
// with a table on [1, K] and bisection (or a log-space asymptotic) beyond.

class ZetaInverter {
public:
    static constexpr std::uint64_t kTable = 4096;

    ZetaInverter(double alpha, bool delta) : alpha_(alpha), delta_(delta), zeta_(zeta_fn(alpha)) {
        survival_.resize(kTable + 1);
        for (std::uint64_t n = 0; n <= kTable; ++n) {
            survival_[n] = survival_exact(n);
        }
        log_c_ = std::log((delta_ ? alpha_ : 1.0) / ((alpha_ - 1.0) * zeta_));
    }

    double zeta() const { return zeta_; }

    // P(X > n).
    double survival(std::uint64_t n) const {
        return n <= kTable ? survival_[n] : survival_exact(n);
    }

    Distribution::IntegerDraw draw(RngState& rng) const {
        const double v = rng.uniform_open();
        if (v >= survival_[kTable]) {
            const auto it = std::partition_point(survival_.begin(), survival_.end(),
                                                 [v](double s) { return s > v; });
            return {true, static_cast<std::uint64_t>(it - survival_.begin()), 0.0};
        }
        // S(n) ~ C (n + 1)^{1 - alpha} beyond the table.
        const double log_a = (log_c_ - std::log(v)) / (alpha_ - 1.0);
        if (log_a > kLogTwo52) {
            return {false, 0, log_a};
        }
        std::uint64_t lo = kTable;
        std::uint64_t hi = std::max<std::uint64_t>(
            kTable + 1, static_cast<std::uint64_t>(1.5 * std::exp(log_a)) + 2);
        while (survival(hi) > v) {
            lo = hi;
            hi *= 2;
            if (static_cast<double>(hi) > kTwo53) {
                return {false, 0, log_a};
            }
        }
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            (survival(mid) > v ? lo : hi) = mid;
        }
        return {true, hi, 0.0};
    }

private:
    double survival_exact(std::uint64_t n) const {
        if (n == 0) return 1.0;
        const double a = static_cast<double>(n) + 1.0;
        double s = hurwitz_zeta(alpha_, a);
        if (delta_) s += static_cast<double>(n) * std::pow(a, -alpha_);
        return s / zeta_;
    }

    double alpha_;
    bool delta_;
    double zeta_;
    double log_c_ = 0.0;
    std::vector<double> survival_;
};

double log_of(const Distribution::IntegerDraw& d) {
    return d.exact ? std::log(static_cast<double>(d.value)) : d.log_value;
}

double value_of(const Distribution::IntegerDraw& d) {
    return d.exact ? static_cast<double>(d.value) : std::exp(d.log_value);
}

class ZetaDist final : public Distribution {
public:
    ZetaDist(double alpha, bool delta) : alpha_(alpha), delta_(delta), inverter_(alpha, delta) {}

    std::string name() const override { return delta_ ? "deltaZeta" : "zeta"; }
    bool is_discrete() const override { return true; }
    std::int64_t support_min() const override { return 1; }

    double pmf(std::int64_t k) const override {
        if (k < 1) return 0.0;
        const double kk = static_cast<double>(k);
        if (!delta_) return std::pow(kk, -alpha_) / inverter_.zeta();
        // k (k^{-a} - (k+1)^{-a}) = k^{1-a} (1 - (1 + 1/k)^{-a})
        return std::pow(kk, 1.0 - alpha_) * -std::expm1(-alpha_ * std::log1p(1.0 / kk)) /
               inverter_.zeta();
    }
    double cdf(double t) const override {
        if (t < 1) return 0.0;
        if (t >= 1.8e19) return 1.0;
        return 1.0 - inverter_.survival(static_cast<std::uint64_t>(std::floor(t)));
    }
    Complex pgf(Complex x) const override { return summed_pgf(*this, x, name()); }
    double mean() const override {
        if (alpha_ <= 2.0) return kInf;
        const double z1 = zeta_fn(alpha_ - 1.0);
        return delta_ ? (2.0 * z1 - inverter_.zeta()) / inverter_.zeta() : z1 / inverter_.zeta();
    }
    double draw(RngState& rng) const override { return value_of(inverter_.draw(rng)); }
    double draw_log(RngState& rng) const override { return log_of(inverter_.draw(rng)); }
    IntegerDraw draw_integer(RngState& rng) const override { return inverter_.draw(rng); }

    std::optional<double> uniform_mix_tail(std::int64_t m, bool squarefree_base) const override {
        if (squarefree_base) return std::nullopt;
        m = std::max<std::int64_t>(m, 1);
        const double mm = static_cast<double>(m);
        // delta: telescoping sum of n^{-a} - (n+1)^{-a}; zeta: sum n^{-a-1}.
        if (delta_) return std::pow(mm, -alpha_) / inverter_.zeta();
        return hurwitz_zeta(alpha_ + 1.0, mm) / inverter_.zeta();
    }

private:
    double alpha_;
    bool delta_;
    ZetaInverter inverter_;
};

// Common pieces of the square-free laws: zeta_{N_s}(a) = zeta(a)/zeta(2a) and
// prefix sums of k^{-a} over square-free k.
class SquarefreeBase {
public:
    static constexpr std::uint64_t kPrefix = 1U << 16;

    explicit SquarefreeBase(double alpha)
        : alpha_(alpha), zeta_a_(zeta_fn(alpha)), zeta_sf_(zeta_a_ / zeta_fn(2.0 * alpha)) {
        prefix_.assign(kPrefix + 1, 0.0);
        for (std::uint64_t k = 1; k <= kPrefix; ++k) {
            prefix_[k] = prefix_[k - 1] + (is_sf(k) ? std::pow(static_cast<double>(k), -alpha) : 0.0);
        }
    }

    // sum_{k > n, k square-free} k^{-a}.
    double tail(std::uint64_t n) const {
        if (n <= kPrefix) {
            // Cancellation is harmless while the tail stays above about 1e-6.
            const double direct = zeta_sf_ - prefix_[n];
            if (direct > 1e-6 * zeta_sf_) return direct;
        }
        return sf_zeta_tail(alpha_, n, zeta_a_, zeta_sf_);
    }

    double alpha_;
    double zeta_a_;
    double zeta_sf_;
    std::vector<double> prefix_;
};

class SfZetaDist final : public Distribution {
public:
    explicit SfZetaDist(double alpha) : base_(alpha), proposal_(alpha, false) {}

    std::string name() const override { return "sfZeta"; }
    bool is_discrete() const override { return true; }
    std::int64_t support_min() const override { return 1; }
    double pmf(std::int64_t k) const override {
        if (k < 1 || !is_sf(static_cast<std::uint64_t>(k))) return 0.0;
        return std::pow(static_cast<double>(k), -base_.alpha_) / base_.zeta_sf_;
    }
    double cdf(double t) const override {
        if (t < 1) return 0.0;
        const double n = std::floor(t);
        if (n > kSfExactTail) return 1.0 - sf_tail_asymptotic(base_.alpha_, n) / base_.zeta_sf_;
        return 1.0 - base_.tail(static_cast<std::uint64_t>(n)) / base_.zeta_sf_;
    }
    Complex pgf(Complex x) const override { return summed_pgf(*this, x, name()); }
    double mean() const override {
        const double a = base_.alpha_;
        if (a <= 2.0) return kInf;
        return (zeta_fn(a - 1.0) / zeta_fn(2.0 * a - 2.0)) / base_.zeta_sf_;
    }

    // Rejection from Zeta(alpha); beyond 2^52 the draw is kept in log space and
    // square-freeness is accepted with its asymptotic density 6/pi^2.
    IntegerDraw draw_integer(RngState& rng) const override {
        const double sf_density = 6.0 / (std::numbers::pi * std::numbers::pi);
        while (true) {
            const IntegerDraw d = proposal_.draw(rng);
            if (d.exact ? is_sf(d.value) : rng.uniform() < sf_density) {
                return d;
            }
        }
    }
    double draw(RngState& rng) const override { return value_of(draw_integer(rng)); }
    double draw_log(RngState& rng) const override { return log_of(draw_integer(rng)); }

private:
    SquarefreeBase base_;
    ZetaInverter proposal_;
};

class SfDeltaZetaDist final : public Distribution {
public:
    explicit SfDeltaZetaDist(double alpha) : base_(alpha), head_(alpha) {}

    std::string name() const override { return "sfDeltaZeta"; }
    bool is_discrete() const override { return true; }
    std::int64_t support_min() const override { return 1; }

    // M_s(n) (n^{-a} - n+^{-a}) / zeta_{N_s}(a), n+ the next square-free integer.
    double pmf(std::int64_t k) const override {
        if (k < 1 || !is_sf(static_cast<std::uint64_t>(k))) return 0.0;
        const auto n = static_cast<std::uint64_t>(k);
        const double a = base_.alpha_;
        const double nn = static_cast<double>(n);
        const double next = static_cast<double>(next_squarefree_after(n));
        const double diff = std::pow(nn, -a) * -std::expm1(-a * std::log(next / nn));
        return static_cast<double>(squarefree_count_u64(n)) * diff / base_.zeta_sf_;
    }
    double cdf(double t) const override {
        if (t < 1) return 0.0;
        if (std::floor(t) > kSfExactTail) {
            // M_s(n) n+^{-a} ~ (6 / pi^2) n^{1 - a} joins the tail.
            const double a = base_.alpha_;
            return 1.0 - a * sf_tail_asymptotic(a, std::floor(t)) / base_.zeta_sf_;
        }
        const auto n = static_cast<std::uint64_t>(std::floor(t));
        const double next = static_cast<double>(next_squarefree_after(n));
        const double over = base_.tail(n) + static_cast<double>(squarefree_count_u64(n)) *
                                                std::pow(next, -base_.alpha_);
        return 1.0 - over / base_.zeta_sf_;
    }
    Complex pgf(Complex x) const override { return summed_pgf(*this, x, name()); }
    double mean() const override {
        const double a = base_.alpha_;
        if (a <= 2.0) return kInf;
        // Exact head plus the density-one approximation of the tail,
        // sum_{n > N} n P(n) ~ (6/pi^2) a N^{2-a} / ((a - 2) zeta_{N_s}(a)).
        constexpr std::int64_t kHead = 1 << 20;
        double head = 0.0;
        for (std::int64_t n = 1; n <= kHead; ++n) head += static_cast<double>(n) * pmf(n);
        const double sf_density = 6.0 / (std::numbers::pi * std::numbers::pi);
        return head + sf_density * a * std::pow(static_cast<double>(kHead), 2.0 - a) /
                          ((a - 2.0) * base_.zeta_sf_);
    }

    // Largest square-free integer <= k U^{-1/a} with k ~ sfZeta(a).
    IntegerDraw draw_integer(RngState& rng) const override {
        const IntegerDraw k = head_.draw_integer(rng);
        const double u = rng.uniform_open();
        const double log_w = log_of(k) - std::log(u) / base_.alpha_;
        if (!k.exact || log_w > kLogTwo52) {
            return {false, 0, log_w};
        }
        auto m = static_cast<std::uint64_t>(static_cast<double>(k.value) *
                                            std::pow(u, -1.0 / base_.alpha_));
        m = std::max(m, k.value);
        while (!is_sf(m)) --m;
        return {true, m, 0.0};
    }
    double draw(RngState& rng) const override { return value_of(draw_integer(rng)); }
    double draw_log(RngState& rng) const override { return log_of(draw_integer(rng)); }

    std::optional<double> uniform_mix_tail(std::int64_t m, bool squarefree_base) const override {
        if (!squarefree_base) return std::nullopt;
        auto first = static_cast<std::uint64_t>(std::max<std::int64_t>(m, 1));
        if (!is_sf(first)) first = next_squarefree_after(first);
        return std::pow(static_cast<double>(first), -base_.alpha_) / base_.zeta_sf_;
    }

private:
    SquarefreeBase base_;
    SfZetaDist head_;
};

// ---------------------------------------------------------------------------
// Y_alpha with density t^{a-1} / ((e^t - 1) Gamma(a) zeta(a)). The cdf is
// tabulated on a grid in u = log t by adaptive Simpson; below the grid the
// Bernoulli expansion of t / (e^t - 1) is integrated term by term.

class YAlphaDist final : public Distribution {
public:
    static constexpr double kStep = 0.01;

    explicit YAlphaDist(double alpha)
        : alpha_(alpha),
          log_norm_(-std::lgamma(alpha) - std::log(zeta_fn(alpha))),
          u_lo_(std::log(1e-10)),
          u_hi_(std::log(80.0)) {
        const auto nodes = static_cast<std::size_t>(std::ceil((u_hi_ - u_lo_) / kStep)) + 1;
        cdf_.resize(nodes);
        slope_.resize(nodes);
        cdf_[0] = small_t_cdf(std::exp(u_lo_));
        slope_[0] = g(u_lo_);
        const auto gf = [this](double u) { return g(u); };
        for (std::size_t i = 1; i < nodes; ++i) {
            const double a = node(i - 1);
            const double b = node(i);
            cdf_[i] = cdf_[i - 1] + adaptive_simpson(gf, a, b, 1e-16);
            slope_[i] = g(b);
        }
    }

    std::string name() const override { return "yAlpha"; }
    bool is_discrete() const override { return false; }
    double density(double t) const override {
        if (t <= 0) return 0.0;
        return std::exp(log_norm_ + (alpha_ - 1.0) * std::log(t)) / std::expm1(t);
    }
    double cdf(double t) const override {
        if (t <= 0) return 0.0;
        const double u = std::log(t);
        if (u <= u_lo_) return small_t_cdf(t);
        if (u >= node(cdf_.size() - 1)) return std::min(1.0, cdf_.back());
        const auto i = static_cast<std::size_t>((u - u_lo_) / kStep);
        const auto gf = [this](double v) { return g(v); };
        return std::min(1.0, cdf_[i] + adaptive_simpson(gf, node(i), u, 1e-16));
    }
    Complex pgf(Complex x) const override {
        require_unit_disc(x, "yAlpha pgf");
        if (x == Complex(0.0)) return 0.0;
        const Complex lx = std::log(x);
        Complex acc = cdf_[0];  // x^t ~ 1 below the grid
        const auto fn = [&](double u) { return std::exp(std::exp(u) * lx) * g(u); };
        for (std::size_t i = 1; i < cdf_.size(); ++i) {
            acc += adaptive_simpson(fn, node(i - 1), node(i), 1e-16);
        }
        return acc;
    }
    double mean() const override {
        return alpha_ * zeta_fn(alpha_ + 1.0) / zeta_fn(alpha_);
    }
    double draw(RngState& rng) const override {
        const double v = rng.uniform();
        if (v < cdf_[0]) return invert_small(v);
        if (v >= cdf_.back()) return std::exp(node(cdf_.size() - 1));
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), v);
        const auto i = static_cast<std::size_t>(it - cdf_.begin()) - 1;
        // Cubic Hermite interpolation of the cdf on [u_i, u_{i+1}], inverted by bisection.
        const double f0 = cdf_[i];
        const double f1 = cdf_[i + 1];
        const double m0 = slope_[i] * kStep;
        const double m1 = slope_[i + 1] * kStep;
        double lo = 0.0;
        double hi = 1.0;
        for (int iter = 0; iter < 50; ++iter) {
            const double s = 0.5 * (lo + hi);
            const double s2 = s * s;
            const double s3 = s2 * s;
            const double p = (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * m0 +
                             (-2 * s3 + 3 * s2) * f1 + (s3 - s2) * m1;
            (p < v ? lo : hi) = s;
        }
        return std::exp(node(i) + 0.5 * (lo + hi) * kStep);
    }

private:
    double node(std::size_t i) const { return u_lo_ + static_cast<double>(i) * kStep; }

    // Density in u = log t, t f(t).
    double g(double u) const {
        const double t = std::exp(u);
        return std::exp(log_norm_ + alpha_ * u) / std::expm1(t);
    }

    // int_0^t s^{a-2} (s / (e^s - 1)) ds with s / (e^s - 1) = 1 - s/2 + s^2/12 - s^4/720.
    double small_t_cdf(double t) const {
        const double b = alpha_ - 1.0;
        const double lead = std::exp(log_norm_ + b * std::log(t));
        return lead * (1.0 / b - t / (2.0 * (b + 1.0)) + t * t / (12.0 * (b + 2.0)) -
                       t * t * t * t / (720.0 * (b + 4.0)));
    }

    double invert_small(double v) const {
        const double b = alpha_ - 1.0;
        double t = std::exp((std::log(b * v) - log_norm_) / b);
        for (int iter = 0; iter < 4; ++iter) {
            t -= (small_t_cdf(t) - v) / density(t);
        }
        return t;
    }

    double alpha_;
    double log_norm_;
    double u_lo_;
    double u_hi_;
    std::vector<double> cdf_;
    std::vector<double> slope_;
};

// ---------------------------------------------------------------------------
// Finite laws and uniform mixtures

class FiniteDist final : public Distribution {
public:
    FiniteDist(std::vector<double> weights, std::int64_t first)
        : weights_(std::move(weights)), first_(first) {
        double total = 0.0;
        for (const double w : weights_) {
            check(std::isfinite(w) && w >= 0.0, "finite_dist: weights must be finite and >= 0");
            total += w;
        }
        check(total > 0.0, "finite_dist: weights sum to zero");
        cumulative_.reserve(weights_.size());
        double running = 0.0;
        for (double& w : weights_) {
            w /= total;
            running += w;
            cumulative_.push_back(running);
        }
    }

    std::string name() const override { return "finite"; }
    bool is_discrete() const override { return true; }
    std::int64_t support_min() const override { return first_; }
    double pmf(std::int64_t k) const override {
        const std::int64_t i = k - first_;
        return i < 0 || i >= static_cast<std::int64_t>(weights_.size())
                   ? 0.0
                   : weights_[static_cast<std::size_t>(i)];
    }
    double cdf(double t) const override {
        const double i = std::floor(t) - static_cast<double>(first_);
        if (i < 0) return 0.0;
        if (i >= static_cast<double>(weights_.size())) return 1.0;
        return cumulative_[static_cast<std::size_t>(i)];
    }
    Complex pgf(Complex x) const override {
        require_finite(x, "finite pgf");
        Complex acc = 0.0;
        for (std::size_t i = weights_.size(); i-- > 0;) {
            acc = acc * x + weights_[i];
        }
        if (first_ >= 0) return acc * ipow(x, static_cast<std::uint64_t>(first_));
        return acc / ipow(x, static_cast<std::uint64_t>(-first_));
    }
    double mean() const override {
        double m = 0.0;
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            m += weights_[i] * static_cast<double>(first_ + static_cast<std::int64_t>(i));
        }
        return m;
    }
    double draw(RngState& rng) const override {
        const double v = rng.uniform();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), v);
        const auto i = std::min<std::ptrdiff_t>(it - cumulative_.begin(),
                                                static_cast<std::ptrdiff_t>(weights_.size()) - 1);
        return static_cast<double>(first_ + i);
    }
    std::optional<double> uniform_mix_tail(std::int64_t m, bool squarefree_base) const override {
        double sum = 0.0;
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            const std::int64_t n = first_ + static_cast<std::int64_t>(i);
            if (n < std::max<std::int64_t>(m, 1)) continue;
            const auto un = static_cast<std::uint64_t>(n);
            const double w = squarefree_base ? static_cast<double>(squarefree_count_u64(un))
                                             : static_cast<double>(n);
            sum += weights_[i] / w;
        }
        return sum;
    }

private:
    std::vector<double> weights_;
    std::vector<double> cumulative_;
    std::int64_t first_;
};

class UniformMixture final : public Distribution {
public:
    static constexpr std::int64_t kTable = 1 << 17;

    UniformMixture(DistPtr randomizer, UniformBase base)
        : base_(std::move(randomizer)), squarefree_(base == UniformBase::squarefree) {
        if (!base_ || !base_->is_discrete()) {
            throw DomainError("mix_uniform: randomizer must be a discrete law");
        }
        if (base_->support_min() < 1) {
            throw DomainError("mix_uniform: randomizer support must be in the positive integers");
        }
        // suffix_[k] = sum_{n >= k} P(X = n) / weight(n), k = 1..kTable+1.
        suffix_.assign(static_cast<std::size_t>(kTable) + 2, 0.0);
        const auto closed = base_->uniform_mix_tail(kTable + 1, squarefree_);
        if (closed) {
            suffix_[kTable + 1] = *closed;
        } else {
            tail_bound_ = std::max(0.0, 1.0 - base_->cdf(static_cast<double>(kTable))) /
                          weight(kTable + 1);
        }
        for (std::int64_t n = kTable; n >= 1; --n) {
            suffix_[static_cast<std::size_t>(n)] =
                suffix_[static_cast<std::size_t>(n) + 1] + base_->pmf(n) / weight(n);
        }
    }

    std::string name() const override {
        return std::string(squarefree_ ? "sf_uniform_mix(" : "uniform_mix(") + base_->name() + ")";
    }
    bool is_discrete() const override { return true; }
    std::int64_t support_min() const override { return 1; }

    double pmf(std::int64_t k) const override {
        if (k < 1) return 0.0;
        if (squarefree_ && !is_sf(static_cast<std::uint64_t>(k))) return 0.0;
        return raw_suffix(k);
    }
    // P(U_X <= k) = P(X <= k) + weight(k) sum_{n > k} P(X = n) / weight(n).
    double cdf(double t) const override {
        if (t < 1) return 0.0;
        if (t >= 1e15) return 1.0;
        const auto k = static_cast<std::int64_t>(std::floor(t));
        return std::min(1.0, base_->cdf(static_cast<double>(k)) + weight(k) * raw_suffix(k + 1));
    }
    Complex pgf(Complex x) const override { return summed_pgf(*this, x, name()); }
    double mean() const override {
        const double m = base_->mean();
        if (!std::isfinite(m)) return m;
        if (!squarefree_) return 0.5 * (m + 1.0);
        // Exact over the table; beyond it U^{(s)}_n is close to n / 2 on average.
        double head = 0.0;
        double base_head = 0.0;
        for (std::int64_t k = 1; k <= kTable; ++k) {
            head += static_cast<double>(k) * pmf(k);
            base_head += static_cast<double>(k) * base_->pmf(k);
        }
        return head + 0.5 * std::max(0.0, m - base_head);
    }
    double draw(RngState& rng) const override { return value_of(draw_integer(rng)); }
    double draw_log(RngState& rng) const override { return log_of(draw_integer(rng)); }
    IntegerDraw draw_integer(RngState& rng) const override {
        const IntegerDraw n = base_->draw_integer(rng);
        if (!n.exact) {
            return {false, 0, n.log_value + std::log(rng.uniform_open())};
        }
        while (true) {
            const auto k = 1 + std::min(n.value - 1, static_cast<std::uint64_t>(
                                                         rng.uniform() * static_cast<double>(n.value)));
            if (!squarefree_ || is_sf(k)) return {true, k, 0.0};
        }
    }

    double tail_bound() const { return tail_bound_; }

private:
    double weight(std::int64_t n) const {
        return squarefree_ ? static_cast<double>(squarefree_count_u64(static_cast<std::uint64_t>(n)))
                           : static_cast<double>(n);
    }

    double raw_suffix(std::int64_t k) const {
        if (k <= kTable + 1) return suffix_[static_cast<std::size_t>(k)];
        if (auto closed = base_->uniform_mix_tail(k, squarefree_)) return *closed;
        // No closed form: sum a long window; the remainder is below tail_bound_.
        double sum = 0.0;
        for (std::int64_t n = k; n < k + kTable; ++n) sum += base_->pmf(n) / weight(n);
        return sum;
    }

    DistPtr base_;
    bool squarefree_;
    std::vector<double> suffix_;
    double tail_bound_ = 0.0;
};

}  // namespace

// ---------------------------------------------------------------------------
// Public interface

Family parse_family(std::string_view name) {
    static const std::pair<std::string_view, Family> table[] = {
        {"bernoulli", Family::bernoulli},     {"binomial", Family::binomial},
        {"geometric", Family::geometric},     {"negbin", Family::negbin},
        {"poisson", Family::poisson},         {"exponential", Family::exponential},
        {"gammaDist", Family::gamma_dist},    {"zeta", Family::zeta},
        {"deltaZeta", Family::delta_zeta},    {"sfZeta", Family::sf_zeta},
        {"sfDeltaZeta", Family::sf_delta_zeta}, {"yAlpha", Family::y_alpha},
    };
    for (const auto& [key, family] : table) {
        if (key == name) return family;
    }
    throw UsageError("unknown distribution family '" + std::string(name) + "'");
}

std::string_view family_name(Family family) {
    switch (family) {
        case Family::bernoulli: return "bernoulli";
        case Family::binomial: return "binomial";
        case Family::geometric: return "geometric";
        case Family::negbin: return "negbin";
        case Family::poisson: return "poisson";
        case Family::exponential: return "exponential";
        case Family::gamma_dist: return "gammaDist";
        case Family::zeta: return "zeta";
        case Family::delta_zeta: return "deltaZeta";
        case Family::sf_zeta: return "sfZeta";
        case Family::sf_delta_zeta: return "sfDeltaZeta";
        case Family::y_alpha: return "yAlpha";
    }
    return "?";
}

std::string describe(const DistSpec& spec) {
    std::ostringstream out;
    out << family_name(spec.family);
    const char* sep = "(";
    for (const auto& [key, value] : spec.params) {
        out << sep << key << '=' << value;
        sep = ";";
    }
    if (!spec.params.empty()) out << ')';
    return out.str();
}

double Distribution::pmf(std::int64_t) const {
    throw DomainError(name() + ": pmf of a continuous law");
}

double Distribution::density(double) const {
    throw DomainError(name() + ": density of a discrete law");
}

double Distribution::draw_log(RngState& rng) const { return std::log(draw(rng)); }

Distribution::IntegerDraw Distribution::draw_integer(RngState& rng) const {
    const double v = draw(rng);
    if (v < kTwo53) return {true, static_cast<std::uint64_t>(v), 0.0};
    return {false, 0, std::log(v)};
}

std::vector<double> Distribution::sample(RngState& rng, std::int64_t n) const {
    if (n < 1) throw DomainError("sample: need n >= 1");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (double& v : out) v = draw(rng);
    return out;
}

std::optional<double> Distribution::uniform_mix_tail(std::int64_t, bool) const {
    return std::nullopt;
}

DistPtr make_dist(const DistSpec& spec) {
    const std::string who(family_name(spec.family));
    const auto open_unit = [&](double v, const char* key) {
        check(v > 0.0 && v < 1.0, who + ": need " + key + " in (0, 1)");
    };
    const auto zeta_alpha = [&] {
        only_keys(spec, {"alpha"});
        const double alpha = required(spec, "alpha");
        check(alpha > 1.0, who + ": need alpha > 1");
        return alpha;
    };
    switch (spec.family) {
        case Family::bernoulli: {
            only_keys(spec, {"p"});
            const double p = required(spec, "p");
            open_unit(p, "p");
            return std::make_shared<BernoulliDist>(p);
        }
        case Family::binomial: {
            only_keys(spec, {"n", "p"});
            const double n = required(spec, "n");
            const double p = required(spec, "p");
            check(n >= 0 && n == std::floor(n) && n < 1e15, who + ": need integer n >= 0");
            open_unit(p, "p");
            return std::make_shared<BinomialDist>(static_cast<std::int64_t>(n), p);
        }
        case Family::geometric: {
            only_keys(spec, {"t"});
            const double t = required(spec, "t");
            open_unit(t, "t");
            return std::make_shared<GeometricDist>(t);
        }
        case Family::negbin: {
            only_keys(spec, {"t", "s"});
            const double t = required(spec, "t");
            const double s = required(spec, "s");
            open_unit(t, "t");
            check(s > 0.0, who + ": need s > 0");
            return std::make_shared<NegBinDist>(t, s);
        }
        case Family::poisson: {
            only_keys(spec, {"gamma"});
            const double gamma = required(spec, "gamma");
            check(gamma > 0.0, who + ": need gamma > 0");
            return std::make_shared<PoissonDist>(gamma);
        }
        case Family::exponential: {
            only_keys(spec, {"rate"});
            const double rate = spec.params.count("rate") ? required(spec, "rate") : 1.0;
            check(rate > 0.0, who + ": need rate > 0");
            return std::make_shared<ExponentialDist>(rate);
        }
        case Family::gamma_dist: {
            only_keys(spec, {"alpha"});
            const double alpha = required(spec, "alpha");
            check(alpha > 0.0, who + ": need alpha > 0");
            return std::make_shared<GammaDist>(alpha);
        }
        case Family::zeta: return std::make_shared<ZetaDist>(zeta_alpha(), false);
        case Family::delta_zeta: return std::make_shared<ZetaDist>(zeta_alpha(), true);
        case Family::sf_zeta: return std::make_shared<SfZetaDist>(zeta_alpha());
        case Family::sf_delta_zeta: return std::make_shared<SfDeltaZetaDist>(zeta_alpha());
        case Family::y_alpha: return std::make_shared<YAlphaDist>(zeta_alpha());
    }
    throw ConstructionError("make_dist: unknown family");
}

DistPtr finite_dist(std::vector<double> weights, std::int64_t first) {
    check(!weights.empty(), "finite_dist: empty weights");
    return std::make_shared<FiniteDist>(std::move(weights), first);
}

DistPtr mix_uniform(DistPtr randomizer, UniformBase base) {
    return std::make_shared<UniformMixture>(std::move(randomizer), base);
}

PmfComparison pmf_equality(const Distribution& a, const Distribution& b, std::int64_t window) {
    if (!a.is_discrete() || !b.is_discrete()) {
        throw DomainError("pmf_equality: both laws must be discrete");
    }
    PmfComparison out;
    const std::int64_t first = std::max<std::int64_t>(0, std::min(a.support_min(), b.support_min()));
    for (std::int64_t k = first; k <= window; ++k) {
        const double diff = std::abs(a.pmf(k) - b.pmf(k));
        if (diff > out.max_abs_diff) {
            out.max_abs_diff = diff;
            out.argmax = k;
        }
    }
    const auto w = static_cast<double>(window);
    out.tail_mass_bound = std::max(0.0, 1.0 - a.cdf(w)) + std::max(0.0, 1.0 - b.cdf(w));
    return out;
}

// ---------------------------------------------------------------------------
// Parameter mixtures

ParameterMixture::ParameterMixture(MixFamily family, std::function<double(double)> scale,
                                   DistPtr mixer, double negbin_shape, std::int64_t offset)
    : family_(family),
      scale_(std::move(scale)),
      mixer_(std::move(mixer)),
      negbin_shape_(negbin_shape),
      offset_(offset) {
    check(static_cast<bool>(scale_), "randomize_parameter: missing scale function");
    check(mixer_ && !mixer_->is_discrete(),
          "randomize_parameter: the mixer must be a continuous law");
    check(mixer_->cdf(0.0) == 0.0, "randomize_parameter: the mixer must have positive support");
    check(family_ != MixFamily::negbin || negbin_shape_ > 0.0,
          "randomize_parameter: negbin shape must be > 0");
}

double ParameterMixture::draw(RngState& rng) const {
    const double m = mixer_->draw(rng);
    const double parameter = scale_(m);
    double value = 0.0;
    switch (family_) {
        case MixFamily::poisson:
            if (!(parameter >= 0.0)) throw DomainError("randomize_parameter: negative Poisson mean");
            value = sample_poisson(parameter, rng);
            break;
        case MixFamily::geometric:
            if (!(parameter >= 0.0 && parameter < 1.0)) {
                throw DomainError("randomize_parameter: geometric parameter outside [0, 1)");
            }
            value = sample_geometric(parameter, rng);
            break;
        case MixFamily::negbin:
            if (!(parameter >= 0.0 && parameter < 1.0)) {
                throw DomainError("randomize_parameter: negbin parameter outside [0, 1)");
            }
            value = sample_negbin(parameter, negbin_shape_, rng);
            break;
    }
    return value + static_cast<double>(offset_);
}

std::vector<double> ParameterMixture::sample(RngState& rng, std::int64_t n) const {
    if (n < 1) throw DomainError("sample: need n >= 1");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (double& v : out) v = draw(rng);
    return out;
}

ParameterMixture randomize_parameter(MixFamily family, std::function<double(double)> scale,
                                     const DistSpec& mixer, double negbin_shape,
                                     std::int64_t offset) {
    return ParameterMixture(family, std::move(scale), make_dist(mixer), negbin_shape, offset);
}

// ---------------------------------------------------------------------------
// Khintchin product

KhintchinSampler::KhintchinSampler(double alpha, std::int64_t max_prime) : alpha_(alpha) {
    if (!(alpha > 1.0)) throw DomainError("khintchin_sample: need alpha > 1");
    if (max_prime < 2) throw DomainError("khintchin_sample: need max_prime >= 2");
    const Sieve sieve = build_sieve(std::max<std::int64_t>(max_prime, 2));
    primes_.assign(sieve.primes().begin(), sieve.primes().end());
    success_.reserve(primes_.size());
    for (const std::uint32_t p : primes_) success_.push_back(std::pow(double(p), -alpha));
    // sum_{p > P} p^{-a} <= int_P^inf s^{-a} ds.
    truncation_bound_ = std::pow(static_cast<double>(max_prime), 1.0 - alpha) / (alpha - 1.0);
}

KhintchinDraw KhintchinSampler::draw(RngState& rng) const {
    KhintchinDraw out;
    out.value = 1;
    // Candidates arrive as Bernoulli(q_max) trials, q_max the largest remaining
    // success probability, and are thinned to Bernoulli(p^{-a}).
    std::size_t i = 0;
    const std::size_t count = primes_.size();
    while (i < count) {
        const double q_max = success_[i];
        const double skip = std::floor(std::log(rng.uniform_open()) / std::log1p(-q_max));
        if (skip >= static_cast<double>(count - i)) break;
        const std::size_t j = i + static_cast<std::size_t>(skip);
        if (rng.uniform() * q_max < success_[j]) {
            const int exponent = 1 + static_cast<int>(sample_geometric(success_[j], rng));
            mpz_class power;
            mpz_ui_pow_ui(power.get_mpz_t(), primes_[j], static_cast<unsigned long>(exponent));
            out.value *= power;
            out.valuations.emplace_back(primes_[j], exponent);
        }
        i = j + 1;
    }
    return out;
}

KhintchinDraw khintchin_sample(double alpha, std::int64_t max_prime, RngState& rng) {
    return KhintchinSampler(alpha, max_prime).draw(rng);
}

std::uint64_t markov_zeta_sample(double alpha, std::int64_t iters, std::uint64_t start,
                                 RngState& rng) {
    if (!(alpha > 1.0)) throw DomainError("markov_zeta_sample: need alpha > 1");
    if (start < 1) throw DomainError("markov_zeta_sample: need start >= 1");
    if (iters < 0) throw DomainError("markov_zeta_sample: need iters >= 0");
    constexpr double kCap = 4611686018427387904.0;  // 2^62
    double x = static_cast<double>(start);
    for (std::int64_t k = 0; k < iters; ++k) {
        const double r = rng.exponential() / sample_gamma(alpha, rng);
        x = std::min(kCap, 1.0 + std::floor(r * x));
    }
    return static_cast<std::uint64_t>(x);
}

// ---------------------------------------------------------------------------
// Elementary samplers

double sample_geometric(double t, RngState& rng) {
    if (t <= 0.0) return 0.0;
    return std::floor(std::log(rng.uniform_open()) / std::log(t));
}

double sample_poisson(double mean, RngState& rng) {
    if (mean <= 0.0) return 0.0;
    if (mean > 1e15) {
        // Normal approximation; the relative error is far below double resolution.
        return std::max(0.0, std::round(mean + std::sqrt(mean) *
                                                   std::normal_distribution<double>()(rng)));
    }
    return static_cast<double>(std::poisson_distribution<std::int64_t>(mean)(rng));
}

double sample_gamma(double shape, RngState& rng) {
    return std::gamma_distribution<double>(shape, 1.0)(rng);
}

double sample_negbin(double t, double s, RngState& rng) {
    if (t <= 0.0) return 0.0;
    return sample_poisson(sample_gamma(s, rng) * t / (1.0 - t), rng);
}

std::uint64_t next_squarefree_after(std::uint64_t n) {
    std::uint64_t m = n + 1;
    while (!is_sf(m)) ++m;
    return m;
}

std::uint64_t squarefree_count_u64(std::uint64_t n) {
    if (n <= SquarefreeTable::kLimit) return sf_table().count[n];
    const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))) + 1;
    if (root > SquarefreeTable::kLimit) {
        throw CapacityError("squarefree_count_u64: argument too large");
    }
    std::int64_t total = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        const int mu = sf_table().moebius[d];
        if (mu != 0) total += mu * static_cast<std::int64_t>(n / (d * d));
    }
    return static_cast<std::uint64_t>(total);
}

}  // namespace modp
