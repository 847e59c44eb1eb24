#include "modp/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "modp/curves.hpp"
#include "modp/distributions.hpp"
#include "modp/errors.hpp"
#include "modp/fluctuations.hpp"
#include "modp/gof.hpp"
#include "modp/identities.hpp"
#include "modp/phi.hpp"

namespace modp::cli {

namespace {

constexpr double kMixTolerance = 1e-10;
constexpr double kSplitSlack = 1e-8;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string complex_text(Complex z) {
    if (z.imag() == 0.0) return num(z.real());
    return num(z.real()) + (z.imag() < 0.0 ? "" : "+") + num(z.imag()) + "i";
}

double parse_real(std::string_view text) {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

struct Common {
    std::uint64_t seed = 0;
    std::string out_path;
};

void write_metadata(std::ostream& os, std::string_view subcommand, std::uint64_t seed) {
    os << "# " << kToolVersion << ", " << subcommand << ", seed=" << seed
       << ", timestamp-omitted\n";
}

// verify ------------------------------------------------------------------

struct VerifyRow {
    std::string check;
    std::string params;
    bool pass;
    long long witness;
};

std::vector<VerifyRow> identity_rows(int order, std::int64_t qmax, int nmax) {
    std::vector<std::int64_t> qs;
    for (std::int64_t q = 2; q <= qmax; ++q) {
        bool prime = true;
        for (std::int64_t d = 2; d * d <= q; ++d) prime = prime && q % d != 0;
        if (prime) qs.push_back(q);
    }
    if (qs.empty()) throw UsageError("--qmax must be at least 2");
    std::vector<VerifyRow> rows;
    for (const IdentityId id : all_identities()) {
        const int case_order = id == IdentityId::gl_cip ? std::min(order, nmax) : order;
        const std::vector<std::int64_t> case_qs =
            identity_uses_q(id) ? qs : std::vector<std::int64_t>{2};
        for (const std::int64_t q : case_qs) {
            const IdentityReport r = verify_identity(id, {case_order, q, 3});
            rows.push_back({r.id, r.params, r.pass, r.witness});
        }
    }
    return rows;
}

std::vector<VerifyRow> distribution_rows() {
    std::vector<VerifyRow> rows;
    for (const double alpha : {1.5, 2.0, 3.0}) {
        const std::map<std::string, double> p{{"alpha", alpha}};
        const auto zeta = make_dist({Family::zeta, p});
        const auto mixed = mix_uniform(make_dist({Family::delta_zeta, p}));
        const auto cmp = pmf_equality(*mixed, *zeta, 10'000);
        const bool ok = cmp.max_abs_diff <= kMixTolerance;
        rows.push_back({"uniform_of_deltaZeta_is_zeta", "alpha=" + num(alpha), ok,
                        ok ? -1 : static_cast<long long>(cmp.argmax)});

        const auto sf_zeta = make_dist({Family::sf_zeta, p});
        const auto sf_mixed =
            mix_uniform(make_dist({Family::sf_delta_zeta, p}), UniformBase::squarefree);
        const auto sf_cmp = pmf_equality(*sf_mixed, *sf_zeta, 10'000);
        const bool sf_ok = sf_cmp.max_abs_diff <= kMixTolerance;
        rows.push_back({"sf_uniform_of_sfDeltaZeta_is_sfZeta", "alpha=" + num(alpha), sf_ok,
                        sf_ok ? -1 : static_cast<long long>(sf_cmp.argmax)});
    }
    return rows;
}

std::vector<VerifyRow> splitting_rows() {
    std::vector<VerifyRow> rows;
    const Complex points[] = {0.5, 1.5, Complex(1.0, 0.5)};
    for (const PhiModelId id : all_phi_models()) {
        const auto hat = hat_partner(id);
        if (!hat) continue;
        const std::optional<std::int64_t> q =
            is_q_indexed(id) ? std::optional<std::int64_t>(2) : std::nullopt;
        const std::int64_t trunc = q ? 200 : 1'000'000;
        for (const Complex x : points) {
            const TruncatedValue plain = phi_limit({id, q}, x, trunc);
            const TruncatedValue indep = phi_limit({*hat, q}, x, trunc);
            const Complex g = gamma_fn(x);
            const double gap = std::abs(plain.value * g - indep.value);
            const double allowed =
                std::abs(g) * plain.tail_bound + indep.tail_bound + kSplitSlack;
            std::string params = "x=" + complex_text(x);
            if (q) params += ";q=" + std::to_string(*q);
            rows.push_back({"split_" + std::string(phi_model_name(id)), params, gap <= allowed, -1});
        }
    }
    return rows;
}

// experiment --------------------------------------------------------------

struct ExperimentArgs {
    std::string name;
    std::string x = "2";
    std::string grid;
    std::int64_t q = 2;
    std::string speed;
    std::int64_t n = 100'000;
    double alpha = 2.0;
    std::int64_t K = 1000;
    std::int64_t max_prime = 10'000'000;
    bool complete_tail = false;
};

struct ExperimentRow {
    double grid;
    Complex ratio;
    Complex reference;
    double abs_gap;
};

std::vector<ExperimentRow> from_curve(const ModPoissonCurve& curve) {
    std::vector<ExperimentRow> rows;
    for (const CurveRow& r : curve.rows) rows.push_back({r.grid, r.ratio, r.reference, r.abs_gap});
    return rows;
}

std::vector<ExperimentRow> run_experiment(const ExperimentArgs& a, std::uint64_t seed) {
    const std::vector<double> grid = parse_grid(a.grid);
    const Complex x = parse_complex(a.x);
    const std::string& name = a.name;
    const auto stat_row = [](double g, double stat) {
        return ExperimentRow{g, stat, 0.0, std::abs(stat)};
    };

    for (const auto model : {CurveModel::perm_C, CurveModel::int_omega, CurveModel::int_bigOmega,
                             CurveModel::poly_omega_q, CurveModel::gl_C}) {
        if (name == curve_model_name(model)) {
            const Speed speed = a.speed.empty() ? default_speed(model) : parse_speed(a.speed);
            return from_curve(mod_poisson_curve(model, grid, x, speed, a.q));
        }
    }
    if (name.rfind("rand_", 0) == 0) {
        const std::string rest = name.substr(5);
        const RandomizedModel model = rest == "omega"        ? RandomizedModel::int_omega
                                      : rest == "bigOmega"   ? RandomizedModel::int_bigOmega
                                      : rest == "poly_omega" ? RandomizedModel::poly_omega
                                                             : parse_randomized_model(rest);
        return from_curve(
            randomized_limit_curve(model, grid, x, {a.max_prime, a.q, a.complete_tail}));
    }
    if (name.rfind("fluct_", 0) == 0) {
        const FluctFamily family = parse_fluct_family(name.substr(6));
        std::vector<ExperimentRow> rows;
        const RngState base(seed);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            RngState rng = base.derive(i);
            rows.push_back(stat_row(grid[i], fluctuation_ks(family, grid[i], a.n, rng).statistic));
        }
        return rows;
    }
    if (name == "erdos_kac") {
        std::vector<ExperimentRow> rows;
        double top = 16;
        for (const double g : grid) top = std::max(top, g);
        const auto sieve = shared_sieve(static_cast<std::int64_t>(top));
        for (const double g : grid) {
            rows.push_back(stat_row(g, erdos_kac_sup(static_cast<std::int64_t>(g), *sieve)));
        }
        return rows;
    }
    if (name == "markov_tv") {
        double top = 0;
        for (const double g : grid) {
            if (g < 0 || g != std::floor(g)) throw UsageError("markov_tv grid: iteration indices");
            top = std::max(top, g);
        }
        const auto curve = markov_tv_curve(a.alpha, static_cast<std::int64_t>(top), a.K);
        std::vector<ExperimentRow> rows;
        for (const double g : grid) {
            rows.push_back(stat_row(g, curve[static_cast<std::size_t>(g)].tv));
        }
        return rows;
    }
    if (name == "log_exp") {
        std::vector<ExperimentRow> rows;
        const RngState base(seed);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            RngState rng = base.derive(i);
            const auto K = static_cast<std::int64_t>(grid[i]);
            rows.push_back(stat_row(grid[i], log_exp_series_ks(K, a.n, rng).statistic));
        }
        return rows;
    }
    throw UsageError("unknown experiment '" + name + "'");
}

// sample ------------------------------------------------------------------

struct SampleArgs {
    std::string dist;
    std::map<std::string, double> params;
    std::int64_t n = 1000;
    bool gof = false;
};

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw UsageError("cannot open output file '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

}  // namespace

Complex parse_complex(std::string_view text) {
    if (text.empty()) throw UsageError("empty complex literal");
    if (text.back() != 'i') return parse_real(text);
    const std::string_view body = text.substr(0, text.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const auto imag_part = [](std::string_view s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return parse_real(s);
    };
    if (split == std::string_view::npos) return {0.0, imag_part(body)};
    return {parse_real(body.substr(0, split)), imag_part(body.substr(split))};
}

std::vector<double> parse_grid(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        out.push_back(parse_real(text.substr(start, end - start)));
        start = end + 1;
    }
    if (out.empty()) throw UsageError("empty grid");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mod-Poisson randomisation toolkit: exact identities, limiting functions, "
                 "convergence experiments and samplers. Output is CSV.",
                 "modp"};
    app.require_subcommand(1);
    Common common;

    auto* verify = app.add_subcommand("verify", "Run a verification suite (exit 1 on failure)");
    std::string suite = "all";
    int order = 12;
    std::int64_t qmax = 3;
    int nmax = 6;
    verify->add_option("--suite", suite, "identities | distributions | splitting | all")
        ->check(CLI::IsMember({"identities", "distributions", "splitting", "all"}))
        ->capture_default_str();
    verify->add_option("--order", order, "Truncation order T of the identity suite")
        ->capture_default_str();
    verify->add_option("--qmax", qmax, "Largest prime q for the q-indexed identities")
        ->capture_default_str();
    verify->add_option("--nmax", nmax, "Largest n for the GL_n identity")->capture_default_str();

    auto* experiment = app.add_subcommand(
        "experiment",
        "Convergence experiment; columns grid,ratio_re,ratio_im,ref_re,ref_im,abs_gap");
    ExperimentArgs ex;
    experiment
        ->add_option("--name", ex.name,
                     "perm_C | int_omega | int_bigOmega | poly_omega_q | gl_C | rand_perm | "
                     "rand_omega | rand_bigOmega | rand_poly_omega | fluct_zeta | "
                     "fluct_deltaZeta | fluct_sfZeta | fluct_sfDeltaZeta | fluct_geometric | "
                     "erdos_kac | markov_tv | log_exp")
        ->required();
    experiment->add_option("--x", ex.x, "Evaluation point: re, imi or re+imi")
        ->capture_default_str();
    experiment
        ->add_option("--grid", ex.grid,
                     "Comma-separated grid: n, alpha, epsilon, t, family parameter, "
                     "iteration or K depending on --name")
        ->required();
    experiment->add_option("--q", ex.q, "Field size for polynomial and GL models")
        ->capture_default_str();
    experiment->add_option("--speed", ex.speed, "logn | loglogn (default: model convention)");
    experiment->add_option("--n", ex.n, "Sample size for fluct_* and log_exp")
        ->capture_default_str();
    experiment->add_option("--alpha", ex.alpha, "markov_tv: zeta exponent")->capture_default_str();
    experiment->add_option("--K", ex.K, "markov_tv: exact state bound")->capture_default_str();
    experiment->add_option("--max-prime", ex.max_prime, "rand_omega/rand_bigOmega prime bound")
        ->capture_default_str();
    experiment->add_flag("--complete-tail", ex.complete_tail,
                         "rand_omega/rand_bigOmega: add the prime-zeta tail beyond --max-prime");

    auto* sample = app.add_subcommand(
        "sample", "Draw from a distribution; --gof prints dist,params,n,statistic,threshold,pass");
    SampleArgs sa;
    sample
        ->add_option("--dist", sa.dist,
                     "bernoulli | binomial | geometric | negbin | poisson | exponential | "
                     "gammaDist | zeta | deltaZeta | sfZeta | sfDeltaZeta | yAlpha")
        ->required();
    sample->add_option("-n", sa.n, "Sample size")->capture_default_str();
    sample->add_flag("--gof", sa.gof, "Goodness of fit at level 1% instead of the draws");
    static const char* const kParamNames[] = {"alpha", "t", "s", "p", "gamma", "rate", "trials"};
    std::map<std::string, double> raw_params;
    for (const char* pname : kParamNames) {
        sample->add_option_function<double>(
            std::string("--") + pname,
            [&raw_params, key = std::string(pname)](double v) { raw_params[key] = v; },
            std::string("Distribution parameter ") + pname +
                (std::string(pname) == "trials" ? " (binomial n)" : ""));
    }

    auto* constants = app.add_subcommand("constants", "Print a named constant");
    std::string constant_name_arg;
    constants->add_option("--name", constant_name_arg, "c0 | c0_prime | euler_gamma | prime_gamma")
        ->required();

    for (auto* sub : {verify, experiment, sample, constants}) {
        sub->add_option("--seed", common.seed, "64-bit seed")->capture_default_str();
        sub->add_option("--out", common.out_path, "Output file (default stdout)");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (verify->parsed()) {
            std::vector<VerifyRow> rows;
            if (suite == "identities" || suite == "all") {
                auto r = identity_rows(order, qmax, nmax);
                rows.insert(rows.end(), r.begin(), r.end());
            }
            if (suite == "distributions" || suite == "all") {
                auto r = distribution_rows();
                rows.insert(rows.end(), r.begin(), r.end());
            }
            if (suite == "splitting" || suite == "all") {
                auto r = splitting_rows();
                rows.insert(rows.end(), r.begin(), r.end());
            }
            Output o(common.out_path, out);
            write_metadata(o.get(), "verify", common.seed);
            o.get() << "identity,params,pass,witness\n";
            bool all_pass = true;
            for (const auto& r : rows) {
                o.get() << r.check << ',' << r.params << ',' << (r.pass ? "true" : "false") << ','
                        << r.witness << '\n';
                all_pass = all_pass && r.pass;
            }
            return all_pass ? 0 : 1;
        }
        if (experiment->parsed()) {
            const auto rows = run_experiment(ex, common.seed);
            Output o(common.out_path, out);
            write_metadata(o.get(), "experiment", common.seed);
            o.get() << "grid,ratio_re,ratio_im,ref_re,ref_im,abs_gap\n";
            for (const auto& r : rows) {
                o.get() << num(r.grid) << ',' << num(r.ratio.real()) << ',' << num(r.ratio.imag())
                        << ',' << num(r.reference.real()) << ',' << num(r.reference.imag()) << ','
                        << num(r.abs_gap) << '\n';
            }
            return 0;
        }
        if (sample->parsed()) {
            if (sa.n < 1) throw UsageError("-n must be positive");
            DistSpec spec{parse_family(sa.dist), {}};
            for (const auto& [key, value] : raw_params) {
                spec.params[key == "trials" ? "n" : key] = value;
            }
            const auto law = make_dist(spec);
            RngState rng(common.seed);
            const auto draws = law->sample(rng, sa.n);
            Output o(common.out_path, out);
            write_metadata(o.get(), "sample", common.seed);
            if (!sa.gof) {
                o.get() << "index,value\n";
                for (std::size_t i = 0; i < draws.size(); ++i) {
                    o.get() << i << ',' << num(draws[i]) << '\n';
                }
                return 0;
            }
            const GofResult g =
                law->is_discrete()
                    ? chi_square_gof(draws, *law)
                    : ks_test(draws, [&](double t) { return law->cdf(t); });
            std::string params = describe(spec);
            for (auto& c : params) {
                if (c == ',') c = ';';
            }
            o.get() << "dist,params,n,statistic,threshold,pass\n";
            o.get() << sa.dist << ',' << params << ',' << g.n << ',' << num(g.statistic) << ','
                    << num(g.threshold) << ',' << (g.pass ? "true" : "false") << '\n';
            return g.pass ? 0 : 1;
        }
        if (constants->parsed()) {
            const Constant c = parse_constant(constant_name_arg);
            Output o(common.out_path, out);
            write_metadata(o.get(), "constants", common.seed);
            o.get() << "name,value\n" << constant_name(c) << ',' << num(named_constant(c)) << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace modp::cli
