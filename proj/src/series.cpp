#include "modp/series.hpp"

#include <string>

#include "modp/errors.hpp"

namespace modp {

namespace {

// Arithmetic in Q[x, y] / (x^{dx+1}, y^{dy+1}); elements are dense x-major blocks.
struct MarkerRing {
    int dx;
    int dy;

    std::size_t size() const { return static_cast<std::size_t>((dx + 1) * (dy + 1)); }
    std::size_t at(int i, int j) const { return static_cast<std::size_t>(i * (dy + 1) + j); }
    int nilpotency() const { return dx + dy + 1; }

    using Elem = std::vector<mpq_class>;

    Elem zero() const { return Elem(size()); }
    Elem one() const {
        Elem e = zero();
        e[0] = 1;
        return e;
    }

    // acc += a * b
    void mul_add(Elem& acc, const mpq_class* a, const mpq_class* b) const {
        for (int i1 = 0; i1 <= dx; ++i1) {
            for (int j1 = 0; j1 <= dy; ++j1) {
                const mpq_class& u = a[at(i1, j1)];
                if (sgn(u) == 0) continue;
                for (int i2 = 0; i1 + i2 <= dx; ++i2) {
                    for (int j2 = 0; j1 + j2 <= dy; ++j2) {
                        const mpq_class& v = b[at(i2, j2)];
                        if (sgn(v) == 0) continue;
                        acc[at(i1 + i2, j1 + j2)] += u * v;
                    }
                }
            }
        }
    }
    Elem mul(const Elem& a, const Elem& b) const {
        Elem out = zero();
        mul_add(out, a.data(), b.data());
        return out;
    }

    // 1 / a for a with nonzero constant: (1/a0) sum_k (-u)^k, u = a/a0 - 1 nilpotent.
    Elem inverse(const Elem& a) const {
        if (sgn(a[0]) == 0) throw DomainError("series: constant term is not invertible");
        const mpq_class a0 = a[0];
        Elem minus_u = zero();
        for (std::size_t k = 1; k < size(); ++k) minus_u[k] = -a[k] / a0;
        Elem out = one();
        Elem power = one();
        for (int k = 1; k < nilpotency(); ++k) {
            power = mul(power, minus_u);
            for (std::size_t m = 0; m < size(); ++m) out[m] += power[m];
        }
        for (auto& v : out) v /= a0;
        return out;
    }
    // exp(a), a with zero constant.
    Elem exp(const Elem& a) const {
        Elem out = one();
        Elem power = one();
        for (int k = 1; k < nilpotency(); ++k) {
            power = mul(power, a);
            for (auto& v : power) v /= k;
            for (std::size_t m = 0; m < size(); ++m) out[m] += power[m];
        }
        return out;
    }
    // log(a), a with constant 1.
    Elem log(const Elem& a) const {
        Elem u = a;
        u[0] -= 1;
        Elem out = zero();
        Elem power = one();
        for (int k = 1; k < nilpotency(); ++k) {
            power = mul(power, u);
            const mpq_class scale(k % 2 == 1 ? 1 : -1, k);
            for (std::size_t m = 0; m < size(); ++m) out[m] += power[m] * scale;
        }
        return out;
    }
};

void require_shape(const RationalSeries& a, const RationalSeries& b) {
    if (!a.same_shape(b)) throw DomainError("series: operands have different shapes");
}

MarkerRing ring_of(const RationalSeries& f) { return {f.x_degree(), f.y_degree()}; }

MarkerRing::Elem block_copy(const RationalSeries& f, int n) {
    const auto b = f.block(n);
    return {b.begin(), b.end()};
}

void store_block(RationalSeries& f, int n, const MarkerRing::Elem& e) {
    const MarkerRing ring = ring_of(f);
    for (int i = 0; i <= ring.dx; ++i) {
        for (int j = 0; j <= ring.dy; ++j) f.coeff(n, i, j) = e[ring.at(i, j)];
    }
}

}  // namespace

RationalSeries::RationalSeries(int order, int x_degree, int y_degree)
    : order_(order), dx_(x_degree), dy_(y_degree) {
    if (order < 0 || x_degree < 0 || y_degree < 0) {
        throw DomainError("RationalSeries: negative order or marker degree");
    }
    c_.resize(static_cast<std::size_t>((order + 1) * (x_degree + 1) * (y_degree + 1)));
}

RationalSeries RationalSeries::constant(const mpq_class& c, int order, int x_degree,
                                        int y_degree) {
    return monomial(c, 0, 0, 0, order, x_degree, y_degree);
}

RationalSeries RationalSeries::monomial(const mpq_class& c, int n, int i, int j, int order,
                                        int x_degree, int y_degree) {
    RationalSeries s(order, x_degree, y_degree);
    if (n <= order && i <= x_degree && j <= y_degree) s.coeff(n, i, j) = c;
    return s;
}

const mpq_class& RationalSeries::coeff(int n, int i, int j) const {
    if (n < 0 || n > order_ || i < 0 || i > dx_ || j < 0 || j > dy_) {
        throw DomainError("RationalSeries: coefficient index out of range");
    }
    return c_[static_cast<std::size_t>((n * (dx_ + 1) + i) * (dy_ + 1) + j)];
}

mpq_class& RationalSeries::coeff(int n, int i, int j) {
    return const_cast<mpq_class&>(std::as_const(*this).coeff(n, i, j));
}

std::span<const mpq_class> RationalSeries::block(int n) const {
    const auto width = static_cast<std::size_t>((dx_ + 1) * (dy_ + 1));
    return std::span<const mpq_class>(c_).subspan(static_cast<std::size_t>(n) * width, width);
}

bool RationalSeries::same_shape(const RationalSeries& other) const {
    return order_ == other.order_ && dx_ == other.dx_ && dy_ == other.dy_;
}

RationalSeries RationalSeries::with_order(int order) const {
    RationalSeries out(order, dx_, dy_);
    for (int n = 0; n <= std::min(order, order_); ++n) {
        for (int i = 0; i <= dx_; ++i) {
            for (int j = 0; j <= dy_; ++j) out.coeff(n, i, j) = coeff(n, i, j);
        }
    }
    return out;
}

RationalSeries& RationalSeries::operator+=(const RationalSeries& other) {
    require_shape(*this, other);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += other.c_[k];
    return *this;
}

RationalSeries& RationalSeries::operator-=(const RationalSeries& other) {
    require_shape(*this, other);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= other.c_[k];
    return *this;
}

RationalSeries& RationalSeries::operator*=(const mpq_class& c) {
    for (auto& v : c_) v *= c;
    return *this;
}

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
    require_shape(a, b);
    const MarkerRing ring = ring_of(a);
    RationalSeries out(a.order(), a.x_degree(), a.y_degree());
    for (int n = 0; n <= a.order(); ++n) {
        MarkerRing::Elem acc = ring.zero();
        for (int k = 0; k <= n; ++k) {
            ring.mul_add(acc, a.block(k).data(), b.block(n - k).data());
        }
        store_block(out, n, acc);
    }
    return out;
}

bool operator==(const RationalSeries& a, const RationalSeries& b) {
    return a.same_shape(b) && a.c_ == b.c_;
}

RationalSeries ps_inverse(const RationalSeries& f) {
    const MarkerRing ring = ring_of(f);
    RationalSeries g(f.order(), f.x_degree(), f.y_degree());
    const auto g0 = ring.inverse(block_copy(f, 0));
    store_block(g, 0, g0);
    for (int n = 1; n <= f.order(); ++n) {
        MarkerRing::Elem acc = ring.zero();
        for (int k = 1; k <= n; ++k) ring.mul_add(acc, f.block(k).data(), g.block(n - k).data());
        auto gn = ring.mul(acc, g0);
        for (auto& v : gn) v = -v;
        store_block(g, n, gn);
    }
    return g;
}

RationalSeries ps_exp(const RationalSeries& f) {
    if (sgn(f.coeff(0)) != 0) throw DomainError("ps_exp: constant term must vanish");
    const MarkerRing ring = ring_of(f);
    RationalSeries g(f.order(), f.x_degree(), f.y_degree());
    store_block(g, 0, ring.exp(block_copy(f, 0)));
    // n g_n = sum_k k f_k g_{n-k}
    for (int n = 1; n <= f.order(); ++n) {
        MarkerRing::Elem acc = ring.zero();
        for (int k = 1; k <= n; ++k) {
            MarkerRing::Elem fk = block_copy(f, k);
            for (auto& v : fk) v *= k;
            ring.mul_add(acc, fk.data(), g.block(n - k).data());
        }
        for (auto& v : acc) v /= n;
        store_block(g, n, acc);
    }
    return g;
}

RationalSeries ps_log(const RationalSeries& f) {
    if (f.coeff(0) != 1) throw DomainError("ps_log: constant term must equal 1");
    const MarkerRing ring = ring_of(f);
    RationalSeries derivative(f.order(), f.x_degree(), f.y_degree());
    for (int n = 1; n <= f.order(); ++n) {
        auto b = block_copy(f, n);
        for (auto& v : b) v *= n;
        store_block(derivative, n - 1, b);
    }
    const RationalSeries ratio = derivative * ps_inverse(f);
    RationalSeries g(f.order(), f.x_degree(), f.y_degree());
    store_block(g, 0, ring.log(block_copy(f, 0)));
    for (int n = 1; n <= f.order(); ++n) {
        auto b = block_copy(ratio, n - 1);
        for (auto& v : b) v /= n;
        store_block(g, n, b);
    }
    return g;
}

RationalSeries ps_pow(const RationalSeries& f, const mpq_class& e) {
    if (e.get_den() == 1 && e.get_num().fits_slong_p()) {
        long k = e.get_num().get_si();
        RationalSeries base = k < 0 ? ps_inverse(f) : f;
        k = k < 0 ? -k : k;
        RationalSeries result = RationalSeries::constant(1, f.order(), f.x_degree(), f.y_degree());
        while (k > 0) {
            if (k & 1) result = result * base;
            k >>= 1;
            if (k > 0) base = base * base;
        }
        return result;
    }
    if (f.coeff(0) != 1) throw DomainError("ps_pow: fractional power needs constant term 1");
    return ps_exp(ps_log(f) * e);
}

RationalSeries ps_compose(PsOp op, std::span<const RationalSeries> args, int order,
                          const mpq_class& exponent) {
    const std::size_t arity = (op == PsOp::add || op == PsOp::mul) ? 2 : 1;
    if (args.size() != arity) {
        throw UsageError("ps_compose: expected " + std::to_string(arity) + " argument(s)");
    }
    std::vector<RationalSeries> in;
    for (const auto& a : args) in.push_back(a.with_order(order));
    switch (op) {
        case PsOp::add: return in[0] + in[1];
        case PsOp::mul: return in[0] * in[1];
        case PsOp::exp: return ps_exp(in[0]);
        case PsOp::log: return ps_log(in[0]);
        case PsOp::inverse: return ps_inverse(in[0]);
        case PsOp::power: return ps_pow(in[0], exponent);
    }
    throw UsageError("ps_compose: unknown operation");
}

}  // namespace modp
