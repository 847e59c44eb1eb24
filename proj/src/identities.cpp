#include "modp/identities.hpp"

#include <algorithm>
#include <utility>

#include "modp/combinatorics.hpp"
#include "modp/errors.hpp"

namespace modp {

namespace {

constexpr int kMaxOrder = 24;
constexpr int kTwoMarkerOrder = 8;
constexpr int kGlOrder = 6;

using Series = RationalSeries;

struct Shape {
    int order;
    int dx = 0;
    int dy = 0;
    Series zero() const { return Series(order, dx, dy); }
    Series one() const { return Series::constant(1, order, dx, dy); }
    Series mono(const mpq_class& c, int n, int i = 0, int j = 0) const {
        return Series::monomial(c, n, i, j, order, dx, dy);
    }
    // 1 - c t^n x^i y^j
    Series one_minus(const mpq_class& c, int n, int i = 0, int j = 0) const {
        return one() - mono(c, n, i, j);
    }
};

mpq_class q_power(std::int64_t q, int k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(k));
    return mpq_class(p);
}

mpq_class monic_count(std::int64_t q, int k) {
    return mpq_class(necklace_counts(q, k).monic_irreducible);
}

std::string describe_params(IdentityId id, const IdentityParams& p, int order) {
    std::string out = "T=" + std::to_string(order);
    if (identity_uses_q(id)) out += ";q=" + std::to_string(p.q);
    if (id == IdentityId::polya_cip) out += ";K=" + std::to_string(p.marked_lengths);
    if (id == IdentityId::polya_cip_two_marker) out += ";marks=x1+x2";
    return out;
}

int effective_order(IdentityId id, int order) {
    if (id == IdentityId::polya_cip_two_marker || id == IdentityId::silvester) {
        return std::min(order, kTwoMarkerOrder);
    }
    if (id == IdentityId::gl_cip) return std::min(order, kGlOrder);
    return order;
}

// sum_n t^n P_n(x) from a table of coefficient polynomials.
Series from_polynomials(const Shape& s, const std::vector<std::vector<mpq_class>>& polys) {
    Series out = s.zero();
    for (int n = 0; n <= s.order && n < static_cast<int>(polys.size()); ++n) {
        const auto& p = polys[static_cast<std::size_t>(n)];
        for (int i = 0; i <= s.dx && i < static_cast<int>(p.size()); ++i) {
            out.coeff(n, i) = p[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

// x^{rising n} / n! as coefficient lists in x.
std::vector<std::vector<mpq_class>> rising_factorial_polys(int order) {
    std::vector<std::vector<mpq_class>> out;
    std::vector<mpq_class> p{1};
    out.push_back(p);
    for (int n = 1; n <= order; ++n) {
        std::vector<mpq_class> next(p.size() + 1);
        const mpq_class j = n - 1;
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += p[i] / n;
            next[i] += p[i] * j / n;
        }
        p = std::move(next);
        out.push_back(p);
    }
    return out;
}

Series log_one_minus_t(const Shape& s) { return ps_log(s.one_minus(1, 1)); }

std::pair<Series, Series> newton(int order) {
    const Shape s{order, order};
    const Series lhs = ps_exp(log_one_minus_t(s) * s.mono(-1, 0, 1));
    return {lhs, from_polynomials(s, rising_factorial_polys(order))};
}

std::pair<Series, Series> csigma_geom(int order) {
    const Shape s{order, order};
    const Series lhs = s.one_minus(1, 1) * from_polynomials(s, rising_factorial_polys(order));
    const Series rhs = ps_exp(log_one_minus_t(s) * s.one_minus(1, 0, 1));
    return {lhs, rhs};
}

std::pair<Series, Series> polya_cip(int order, int marked) {
    const Shape s{order, order};
    Series cycle_index = s.zero();
    for (int n = 0; n <= order; ++n) {
        for (const Partition& lambda : enumerate_partitions(n, false)) {
            const auto marked_parts = std::count_if(lambda.parts().begin(), lambda.parts().end(),
                                                    [&](int part) { return part <= marked; });
            cycle_index.coeff(n, static_cast<int>(marked_parts)) +=
                mpq_class(mpz_class(1), lambda.z_lambda());
        }
    }
    const Series lhs = s.one_minus(1, 1) * cycle_index;
    Series exponent = s.zero();
    for (int k = 1; k <= std::min(marked, order); ++k) {
        exponent += s.mono(mpq_class(1, k), k, 1) - s.mono(mpq_class(1, k), k);
    }
    return {lhs, ps_exp(exponent)};
}

std::pair<Series, Series> polya_cip_two_marker(int order) {
    const Shape s{order, order, order};
    Series cycle_index = s.zero();
    for (int n = 0; n <= order; ++n) {
        for (const Partition& lambda : enumerate_partitions(n, false)) {
            cycle_index.coeff(n, lambda.multiplicity(1), lambda.multiplicity(2)) +=
                mpq_class(mpz_class(1), lambda.z_lambda());
        }
    }
    const Series lhs = s.one_minus(1, 1) * cycle_index;
    // t (x_1 - 1) + t^2 (x_2 - 1) / 2
    const Series exponent = s.mono(1, 1, 1) - s.mono(1, 1) + s.mono(mpq_class(1, 2), 2, 0, 1) -
                            s.mono(mpq_class(1, 2), 2);
    return {lhs, ps_exp(exponent)};
}

std::pair<Series, Series> dimension_geom(int order) {
    const Shape s{order, order};
    Series exponent = s.zero();
    for (int k = 1; k <= order; ++k) {
        exponent += s.mono(mpq_class(1, k), k, k) - s.mono(mpq_class(1, k), k);
    }
    const Series rhs = s.one_minus(1, 1) * ps_inverse(s.one_minus(1, 1, 1));
    return {ps_exp(exponent), rhs};
}

std::pair<Series, Series> cyclotomic_simple(int order, std::int64_t q) {
    const Shape s{order};
    const Series lhs = ps_inverse(s.one_minus(mpq_class(q), 1));
    Series rhs = s.one();
    for (int k = 1; k <= order; ++k) rhs = rhs * ps_pow(s.one_minus(1, k), -monic_count(q, k));
    return {lhs, rhs};
}

PolyFactorTable factor_table(std::int64_t q, int order) {
    for (std::int64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            throw CapacityError("polynomial identities need a prime q (got " + std::to_string(q) + ")");
        }
    }
    return poly_factor_table(q, order);
}

Series table_series(const Shape& s, const std::vector<std::vector<std::int64_t>>& counts,
                    std::int64_t q, bool normalise) {
    Series out = s.zero();
    for (int n = 0; n <= s.order; ++n) {
        const mpq_class scale = normalise ? mpq_class(1) / q_power(q, n) : mpq_class(1);
        const auto& row = counts[static_cast<std::size_t>(n)];
        for (int m = 0; m <= s.dx && m < static_cast<int>(row.size()); ++m) {
            out.coeff(n, m) = mpq_class(static_cast<long>(row[static_cast<std::size_t>(m)])) * scale;
        }
    }
    return out;
}

std::pair<Series, Series> cyclotomic_general(int order, std::int64_t q) {
    const Shape s{order, order};
    const auto table = factor_table(q, order);
    Series rhs = s.one();
    for (int k = 1; k <= order; ++k) rhs = rhs * ps_pow(s.one_minus(1, k, 1), -monic_count(q, k));
    return {table_series(s, table.by_big_omega, q, false), rhs};
}

std::pair<Series, Series> poly_cip(int order, std::int64_t q) {
    const Shape s{order, order};
    const auto table = factor_table(q, order);
    const Series lhs = s.one_minus(1, 1) * table_series(s, table.by_big_omega, q, true);
    Series rhs = s.one();
    for (int k = 1; k <= order; ++k) {
        const mpq_class u = mpq_class(1) / q_power(q, k);  // (t/q)^k = u t^k
        const mpq_class m = monic_count(q, k);
        rhs = rhs * ps_pow(s.one_minus(u, k), m) * ps_pow(s.one_minus(u, k, 1), -m);
    }
    return {lhs, rhs};
}

std::pair<Series, Series> sf_cyclotomic(int order, std::int64_t q) {
    const Shape s{order, order};
    const auto table = factor_table(q, order);
    Series rhs = s.one();
    for (int k = 1; k <= order; ++k) {
        rhs = rhs * ps_pow(s.one() + s.mono(1, k, 1), monic_count(q, k));
    }
    return {table_series(s, table.squarefree_by_omega, q, false), rhs};
}

// prod_k E[x^{Bin(M_q(k), u^k / (1 + u^k))}], u = t/q.
Series binomial_product(const Shape& s, std::int64_t q) {
    Series rhs = s.one();
    for (int k = 1; k <= s.order; ++k) {
        const mpq_class u = mpq_class(1) / q_power(q, k);
        const mpq_class m = monic_count(q, k);
        rhs = rhs * ps_pow(s.one() + s.mono(u, k, 1), m) * ps_pow(s.one() + s.mono(u, k), -m);
    }
    return rhs;
}

// Randomised by P(g = n) = sf_n q^{-n} t^n (1 - t) / (1 - t^2/q), which is the
// law that makes the product side a pgf of independent binomials.
std::pair<Series, Series> sf_poly_cip(int order, std::int64_t q) {
    const Shape s{order, order};
    const auto table = factor_table(q, order);
    const Series weights = s.one_minus(1, 1) * ps_inverse(s.one_minus(mpq_class(1) / q, 2));
    const Series lhs = weights * table_series(s, table.squarefree_by_omega, q, true);
    return {lhs, binomial_product(s, q)};
}

std::pair<Series, Series> sf_poly_cip_printed(int order, std::int64_t q) {
    const Shape s{order, order};
    const auto table = factor_table(q, order);
    Series uniform = s.zero();
    for (int n = 0; n <= order; ++n) {
        const auto& row = table.squarefree_by_omega[static_cast<std::size_t>(n)];
        std::int64_t total = 0;
        for (const auto c : row) total += c;
        for (int m = 0; m < static_cast<int>(row.size()) && m <= s.dx; ++m) {
            uniform.coeff(n, m) = mpq_class(static_cast<long>(row[static_cast<std::size_t>(m)]),
                                            static_cast<unsigned long>(total));
        }
    }
    return {s.one_minus(1, 1) * uniform, binomial_product(s, q)};
}

std::pair<Series, Series> silvester(int order) {
    // x marks str(lambda), y marks kappa(lambda).
    const Shape s{order, order, order};
    Series lhs = s.zero();
    for (int n = 0; n <= order; ++n) {
        for (const Partition& lambda : enumerate_partitions(n, true)) {
            lhs.coeff(n, lambda.str(), lambda.kappa()) += 1;
        }
    }
    Series rhs = ps_inverse(s.one_minus(1, 1, 0, 1));
    for (int k = 1; 2 * k + 1 <= order; ++k) {
        const int e = 2 * k + 1;
        rhs = rhs * (s.one() + s.mono(1, e, 1, 1) * ps_inverse(s.one_minus(1, e, 0, 1)));
    }
    return {lhs, rhs};
}

std::pair<Series, Series> strict_count(int order) {
    const Shape s{order};
    Series lhs = s.zero();
    for (int n = 0; n <= order; ++n) {
        lhs.coeff(n) = static_cast<long>(enumerate_partitions(n, true).size());
    }
    Series rhs = s.one();
    for (int k = 1; k <= order; ++k) rhs = rhs * (s.one() + s.mono(1, k));
    return {lhs, rhs};
}

std::pair<Series, Series> gl_cip(int order, std::int64_t q) {
    const Shape s{order, order};
    Series lhs = s.zero();
    for (int n = 0; n <= order; ++n) {
        for (const Polypartition& mu : enumerate_polypartitions(n, static_cast<int>(q))) {
            lhs.coeff(n, mu.blocks()) += class_weight(mu, q);
        }
    }
    Series rhs = s.one();
    for (int d = 1; d <= order; ++d) {
        Series factor = s.zero();
        for (int m = 0; d * m <= order; ++m) {
            mpq_class weight = 0;
            for (const Partition& lambda : enumerate_partitions(m, false)) {
                weight += mpq_class(mpz_class(1), centralizer_size(d, lambda, q));
            }
            factor.coeff(d * m, m) = weight;
        }
        rhs = rhs * ps_pow(factor, mpq_class(gl_slot_count(q, d)));
    }
    return {lhs, rhs};
}

// Cauchy sum of s_lambda[A(q)]^2 t^{|lambda|} against exp(sum_m t^m p_m[A]^2 / m),
// p_m[A] = 1 / (q^m - 1).
std::pair<Series, Series> plethystic_norm(int order, std::int64_t q, bool printed) {
    const Shape s{order};
    Series lhs = s.zero();
    for (int n = 0; n <= order; ++n) {
        for (const Partition& lambda : enumerate_partitions(n, false)) {
            lhs.coeff(n) += schur_specialization(lambda, q, 1);
        }
    }
    Series exponent = s.zero();
    for (int m = 1; m <= order; ++m) {
        const mpq_class qm = q_power(q, m);
        const mpq_class p_m = 1 / (qm - 1);
        // The printed product over k of (1 - t q^{-k})^{-k} carries an extra q^m.
        exponent.coeff(m) = p_m * p_m / m * (printed ? qm : mpq_class(1));
    }
    return {lhs, ps_exp(exponent)};
}

std::pair<Series, Series> build(IdentityId id, const IdentityParams& p, int order) {
    switch (id) {
        case IdentityId::newton: return newton(order);
        case IdentityId::polya_cip: return polya_cip(order, p.marked_lengths);
        case IdentityId::polya_cip_two_marker: return polya_cip_two_marker(order);
        case IdentityId::csigma_geom: return csigma_geom(order);
        case IdentityId::dimension_geom: return dimension_geom(order);
        case IdentityId::cyclotomic_simple: return cyclotomic_simple(order, p.q);
        case IdentityId::cyclotomic_general: return cyclotomic_general(order, p.q);
        case IdentityId::poly_cip: return poly_cip(order, p.q);
        case IdentityId::sf_cyclotomic: return sf_cyclotomic(order, p.q);
        case IdentityId::sf_poly_cip: return sf_poly_cip(order, p.q);
        case IdentityId::silvester: return silvester(order);
        case IdentityId::strict_count: return strict_count(order);
        case IdentityId::gl_cip: return gl_cip(order, p.q);
        case IdentityId::plethystic_norm: return plethystic_norm(order, p.q, false);
    }
    throw UsageError("verify_identity: unknown identity");
}

void check_params(const IdentityParams& p) {
    if (p.order < 1 || p.order > kMaxOrder) {
        throw CapacityError("verify_identity: order must lie in [1, 24]");
    }
    if (p.q < 2) throw DomainError("verify_identity: need q >= 2");
    if (p.marked_lengths < 0) throw DomainError("verify_identity: need marked_lengths >= 0");
}

}  // namespace

std::vector<IdentityId> all_identities() {
    return {IdentityId::newton,          IdentityId::polya_cip,
            IdentityId::polya_cip_two_marker, IdentityId::csigma_geom,
            IdentityId::dimension_geom,  IdentityId::cyclotomic_simple,
            IdentityId::cyclotomic_general, IdentityId::poly_cip,
            IdentityId::sf_cyclotomic,   IdentityId::sf_poly_cip,
            IdentityId::silvester,       IdentityId::strict_count,
            IdentityId::gl_cip,          IdentityId::plethystic_norm};
}

std::string_view identity_name(IdentityId id) {
    switch (id) {
        case IdentityId::newton: return "newton";
        case IdentityId::polya_cip: return "polya_cip";
        case IdentityId::polya_cip_two_marker: return "polya_cip_two_marker";
        case IdentityId::csigma_geom: return "csigma_geom";
        case IdentityId::dimension_geom: return "dimension_geom";
        case IdentityId::cyclotomic_simple: return "cyclotomic_simple";
        case IdentityId::cyclotomic_general: return "cyclotomic_general";
        case IdentityId::poly_cip: return "poly_cip";
        case IdentityId::sf_cyclotomic: return "sf_cyclotomic";
        case IdentityId::sf_poly_cip: return "sf_poly_cip";
        case IdentityId::silvester: return "silvester";
        case IdentityId::strict_count: return "strict_count";
        case IdentityId::gl_cip: return "gl_cip";
        case IdentityId::plethystic_norm: return "plethystic_norm";
    }
    return "?";
}

IdentityId parse_identity(std::string_view name) {
    for (const IdentityId id : all_identities()) {
        if (identity_name(id) == name) return id;
    }
    throw UsageError("unknown identity '" + std::string(name) + "'");
}

bool identity_uses_q(IdentityId id) {
    switch (id) {
        case IdentityId::cyclotomic_simple:
        case IdentityId::cyclotomic_general:
        case IdentityId::poly_cip:
        case IdentityId::sf_cyclotomic:
        case IdentityId::sf_poly_cip:
        case IdentityId::gl_cip:
        case IdentityId::plethystic_norm:
            return true;
        default:
            return false;
    }
}

IdentityReport compare_series(std::string id, std::string params, const RationalSeries& lhs,
                              const RationalSeries& rhs) {
    if (!lhs.same_shape(rhs)) throw DomainError("compare_series: shapes differ");
    IdentityReport report{std::move(id), std::move(params), true, 0, -1};
    for (int n = 0; n <= lhs.order(); ++n) {
        for (int i = 0; i <= lhs.x_degree(); ++i) {
            for (int j = 0; j <= lhs.y_degree(); ++j) {
                const mpq_class diff = abs(lhs.coeff(n, i, j) - rhs.coeff(n, i, j));
                if (sgn(diff) == 0) continue;
                report.pass = false;
                if (report.witness < 0) report.witness = n;
                if (diff > report.max_abs_coeff_diff) report.max_abs_coeff_diff = diff;
            }
        }
    }
    return report;
}

IdentityReport verify_identity(IdentityId id, const IdentityParams& params) {
    check_params(params);
    const int order = effective_order(id, params.order);
    auto [lhs, rhs] = build(id, params, order);
    return compare_series(std::string(identity_name(id)), describe_params(id, params, order), lhs,
                          rhs);
}

IdentityReport verify_printed_form(IdentityId id, const IdentityParams& params) {
    check_params(params);
    const int order = effective_order(id, params.order);
    std::pair<Series, Series> sides = [&] {
        switch (id) {
            case IdentityId::sf_poly_cip: return sf_poly_cip_printed(order, params.q);
            case IdentityId::plethystic_norm: return plethystic_norm(order, params.q, true);
            default: throw UsageError("verify_printed_form: only sf_poly_cip and plethystic_norm");
        }
    }();
    return compare_series(std::string(identity_name(id)) + "_printed",
                          describe_params(id, params, order), sides.first, sides.second);
}

std::vector<IdentityReport> verify_identity_suite(int order, std::span<const std::int64_t> qs) {
    std::vector<IdentityReport> out;
    for (const IdentityId id : all_identities()) {
        if (identity_uses_q(id)) {
            for (const std::int64_t q : qs) {
                out.push_back(verify_identity(id, {order, q, 3}));
            }
        } else {
            out.push_back(verify_identity(id, {order, 2, 3}));
        }
    }
    return out;
}

}  // namespace modp
