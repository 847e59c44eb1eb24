#include <doctest.h>

#include <array>
#include <vector>

#include "modp/errors.hpp"
#include "modp/identities.hpp"
#include "modp/series.hpp"

using namespace modp;

namespace {

constexpr int kOrder = 14;

// 1 / (1 - t).
RationalSeries geometric(int order) {
    RationalSeries g(order);
    for (int n = 0; n <= order; ++n) g.coeff(n) = 1;
    return g;
}

RationalSeries t_power(int n, int order, int dx = 0, int dy = 0) {
    return RationalSeries::monomial(1, n, 0, 0, order, dx, dy);
}

}  // namespace

TEST_CASE("ring operations") {
    const auto g = geometric(kOrder);
    const auto one = RationalSeries::constant(1, kOrder);
    const auto one_minus_t = one - t_power(1, kOrder);
    CHECK(g * one_minus_t == one);
    CHECK(ps_inverse(g) == one_minus_t);
    CHECK((g + g) == g * mpq_class(2));
    // 1 / (1 - t)^2 = sum (n + 1) t^n.
    const auto g2 = g * g;
    for (int n = 0; n <= kOrder; ++n) CHECK(g2.coeff(n) == n + 1);
    CHECK(g2.with_order(5).order() == 5);
    CHECK(g2.with_order(20).coeff(20) == 0);
    CHECK_THROWS_AS(g * geometric(kOrder + 1), DomainError);
    CHECK_THROWS_AS(ps_inverse(t_power(1, kOrder)), DomainError);
}

TEST_CASE("exp and log") {
    const auto t = t_power(1, kOrder);
    const auto e = ps_exp(t);
    mpq_class inv_fact = 1;
    for (int n = 0; n <= kOrder; ++n) {
        CHECK(e.coeff(n) == inv_fact);
        inv_fact /= n + 1;
    }
    // log 1 / (1 - t) = sum t^n / n.
    const auto l = ps_log(geometric(kOrder));
    CHECK(l.coeff(0) == 0);
    for (int n = 1; n <= kOrder; ++n) CHECK(l.coeff(n) == mpq_class(1, n));
    CHECK(ps_exp(l) == geometric(kOrder));

    // Euler: exp(sum_n sigma(n) t^n / n) = prod (1 - t^k)^{-1} = sum p(n) t^n.
    RationalSeries s(kOrder);
    for (int n = 1; n <= kOrder; ++n) {
        int sigma = 0;
        for (int d = 1; d <= n; ++d) sigma += n % d == 0 ? d : 0;
        s.coeff(n) = mpq_class(sigma, n);
    }
    const std::array<int, kOrder + 1> p{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135};
    const auto ps = ps_exp(s);
    for (int n = 0; n <= kOrder; ++n) CHECK(ps.coeff(n) == p[n]);

    CHECK_THROWS_AS(ps_exp(geometric(kOrder)), DomainError);
    CHECK_THROWS_AS(ps_log(geometric(kOrder) * mpq_class(2)), DomainError);
}

TEST_CASE("powers") {
    const auto g = geometric(kOrder);
    const auto sqrt_g = ps_pow(g, mpq_class(1, 2));
    CHECK(sqrt_g * sqrt_g == g);
    CHECK(ps_pow(g, 3) * ps_pow(g, -3) == RationalSeries::constant(1, kOrder));
    CHECK(ps_pow(g, 0) == RationalSeries::constant(1, kOrder));
    // (1 - t)^{-1/2}: central binomial coefficients over 4^n.
    mpz_class binom = 1;
    for (int n = 0; n <= kOrder; ++n) {
        mpz_class four_n = 1;
        for (int i = 0; i < n; ++i) four_n *= 4;
        mpq_class expected(binom, four_n);
        expected.canonicalize();
        CHECK(sqrt_g.coeff(n) == expected);
        binom = binom * 2 * (2 * n + 1) / (n + 1);
    }
    CHECK_THROWS_AS(ps_pow(g * mpq_class(3), mpq_class(1, 2)), DomainError);
}

TEST_CASE("marker coefficients") {
    // exp(x t) = sum x^n t^n / n!, truncated at x-degree 4.
    const auto xt = RationalSeries::monomial(1, 1, 1, 0, 8, 4, 2);
    const auto e = ps_exp(xt);
    mpq_class inv_fact = 1;
    for (int n = 0; n <= 8; ++n) {
        for (int i = 0; i <= 4; ++i) CHECK(e.coeff(n, i) == (i == n ? inv_fact : mpq_class(0)));
        inv_fact /= n + 1;
    }
    CHECK(e.block(3).size() == 15);
    // exp(x t) exp(y t) = exp((x + y) t) coefficient by coefficient.
    const auto yt = RationalSeries::monomial(1, 1, 0, 1, 8, 4, 2);
    CHECK(ps_exp(xt) * ps_exp(yt) == ps_exp(xt + yt));
    CHECK_THROWS_AS(e.coeff(9), DomainError);
    CHECK_THROWS_AS(e.coeff(1, 5, 0), DomainError);
}

TEST_CASE("compose dispatch") {
    const auto g = geometric(10);
    const std::vector<RationalSeries> two{g, g};
    const std::vector<RationalSeries> one{g};
    CHECK(ps_compose(PsOp::mul, two, 6) == (g * g).with_order(6));
    CHECK(ps_compose(PsOp::add, two, 10) == g + g);
    CHECK(ps_compose(PsOp::log, one, 10) == ps_log(g));
    CHECK(ps_compose(PsOp::power, one, 10, mpq_class(-1)) == ps_inverse(g));
    CHECK_THROWS_AS(ps_compose(PsOp::exp, two, 10), UsageError);
}

TEST_CASE("identity suite holds exactly") {
    const std::array<std::int64_t, 2> qs{2, 3};
    const auto reports = verify_identity_suite(12, qs);
    CHECK(reports.size() == 21);
    for (const auto& r : reports) {
        CAPTURE(r.id);
        CAPTURE(r.params);
        CHECK(r.pass);
        CHECK(r.witness == -1);
        CHECK(r.max_abs_coeff_diff == 0);
    }
}

TEST_CASE("identities at other orders and fields") {
    for (const auto id : all_identities()) {
        CAPTURE(identity_name(id));
        IdentityParams p;
        p.order = 6;
        p.q = 5;
        CHECK(verify_identity(id, p).pass);
        CHECK(parse_identity(identity_name(id)) == id);
    }
    IdentityParams p;
    p.q = 4;
    CHECK(verify_identity(IdentityId::gl_cip, {4, 4, 3}).pass);
    CHECK_THROWS_AS(verify_identity(IdentityId::poly_cip, p), CapacityError);
    CHECK_THROWS_AS(verify_identity(IdentityId::newton, {25, 2, 3}), CapacityError);
    CHECK_THROWS_AS(parse_identity("riemann"), UsageError);
}

TEST_CASE("printed forms that do not hold are detected") {
    for (const std::int64_t q : {2, 3}) {
        IdentityParams p;
        p.q = q;
        const auto sf = verify_printed_form(IdentityId::sf_poly_cip, p);
        CHECK_FALSE(sf.pass);
        CHECK(sf.witness == 2);
        CHECK(sf.max_abs_coeff_diff > 0);
        const auto pl = verify_printed_form(IdentityId::plethystic_norm, p);
        CHECK_FALSE(pl.pass);
        CHECK(pl.witness == 1);
    }
    CHECK_THROWS_AS(verify_printed_form(IdentityId::newton, {}), UsageError);
}

TEST_CASE("compare_series reports the first differing power") {
    auto a = geometric(6);
    auto b = a;
    b.coeff(4) += mpq_class(1, 3);
    b.coeff(5) -= 2;
    const auto r = compare_series("demo", "", a, b);
    CHECK_FALSE(r.pass);
    CHECK(r.witness == 4);
    CHECK(r.max_abs_coeff_diff == 2);
    CHECK(compare_series("demo", "", a, a).pass);
}
