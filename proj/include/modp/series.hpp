#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

namespace modp {

// Truncated power series in t over exact rationals, with coefficients that are
// polynomials in up to two markers x and y, truncated at degrees x_degree and
// y_degree. With both degrees 0 it is an ordinary univariate series.
class RationalSeries {
public:
    RationalSeries(int order, int x_degree = 0, int y_degree = 0);

    static RationalSeries constant(const mpq_class& c, int order, int x_degree = 0,
                                   int y_degree = 0);
    // c t^n x^i y^j in the given shape.
    static RationalSeries monomial(const mpq_class& c, int n, int i, int j, int order,
                                   int x_degree = 0, int y_degree = 0);

    int order() const { return order_; }
    int x_degree() const { return dx_; }
    int y_degree() const { return dy_; }

    const mpq_class& coeff(int n, int i = 0, int j = 0) const;
    mpq_class& coeff(int n, int i = 0, int j = 0);

    RationalSeries& operator+=(const RationalSeries& other);
    RationalSeries& operator-=(const RationalSeries& other);
    RationalSeries& operator*=(const mpq_class& c);
    friend RationalSeries operator+(RationalSeries a, const RationalSeries& b) { return a += b; }
    friend RationalSeries operator-(RationalSeries a, const RationalSeries& b) { return a -= b; }
    friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);
    friend RationalSeries operator*(RationalSeries a, const mpq_class& c) { return a *= c; }
    friend bool operator==(const RationalSeries& a, const RationalSeries& b);

    // Same shape (order and marker degrees).
    bool same_shape(const RationalSeries& other) const;
    // Copy truncated or zero-extended to another order.
    RationalSeries with_order(int order) const;

    // Coefficient block of t^n: (x_degree + 1) * (y_degree + 1) entries, x-major.
    std::span<const mpq_class> block(int n) const;

private:
    int order_;
    int dx_;
    int dy_;
    std::vector<mpq_class> c_;
};

// The inverse and log need the t^0 block to be invertible (log: its constant
// equals 1); exp needs the constant of the t^0 block to vanish.
RationalSeries ps_inverse(const RationalSeries& f);
RationalSeries ps_exp(const RationalSeries& f);
RationalSeries ps_log(const RationalSeries& f);
// f^e; integer e by repeated squaring (negative through the inverse),
// otherwise exp(e log f).
RationalSeries ps_pow(const RationalSeries& f, const mpq_class& e);

enum class PsOp { add, mul, exp, log, inverse, power };

// Applies op to the arguments (two for add and mul, one otherwise) and truncates to `order`.
RationalSeries ps_compose(PsOp op, std::span<const RationalSeries> args, int order,
                          const mpq_class& exponent = 1);

}  // namespace modp
