#include "modp/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "modp/errors.hpp"

namespace modp {

namespace {

constexpr int kJointCycleLimit = 30;
constexpr int kPartitionLimit = 60;
constexpr int kStrictPartitionLimit = 100;
constexpr int kPolypartitionLimit = 8;

mpz_class power(const mpz_class& base, unsigned long exponent) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

mpz_class factorial(unsigned long n) {
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

mpz_class gl_cardinal_unchecked(int n, const mpz_class& q) {
    mpz_class out = 1;
    const mpz_class qn = power(q, static_cast<unsigned long>(n));
    mpz_class qk = 1;
    for (int k = 0; k < n; ++k) {
        out *= qn - qk;
        qk *= q;
    }
    return out;
}

void require_prime_power(std::int64_t q, const char* who) {
    if (!is_prime_power(q)) {
        throw DomainError(std::string(who) + ": q = " + std::to_string(q) +
                          " is not a prime power");
    }
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (const int p : parts_) {
        if (p <= 0) {
            throw DomainError("Partition: parts must be positive");
        }
        size_ += p;
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int Partition::multiplicity(int k) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), k));
}

std::vector<int> Partition::multiplicities() const {
    std::vector<int> m(parts_.empty() ? 1 : static_cast<std::size_t>(parts_.front()) + 1, 0);
    for (const int p : parts_) ++m[static_cast<std::size_t>(p)];
    return m;
}

std::int64_t Partition::n_stat() const {
    std::int64_t n = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        n += static_cast<std::int64_t>(i) * parts_[i];
    }
    return n;
}

Partition Partition::conjugate() const {
    std::vector<int> cols;
    if (!parts_.empty()) {
        cols.assign(static_cast<std::size_t>(parts_.front()), 0);
        for (const int p : parts_) {
            for (int j = 0; j < p; ++j) ++cols[static_cast<std::size_t>(j)];
        }
    }
    return Partition(std::move(cols));
}

std::vector<int> Partition::hook_lengths() const {
    const Partition conj = conjugate();
    std::vector<int> hooks;
    hooks.reserve(static_cast<std::size_t>(size_));
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        for (int j = 0; j < parts_[i]; ++j) {
            const int arm = parts_[i] - j - 1;
            const int leg = conj.parts()[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1;
            hooks.push_back(arm + leg + 1);
        }
    }
    return hooks;
}

bool Partition::is_strict() const {
    return std::adjacent_find(parts_.begin(), parts_.end()) == parts_.end();
}

int Partition::kappa() const {
    int sum = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        sum += (i % 2 == 0 ? parts_[i] : -parts_[i]);
    }
    return sum;
}

int Partition::str() const {
    int runs = 0;
    for (std::size_t i = 1; i < parts_.size(); ++i) {
        if (i == 1 || parts_[i - 1] != parts_[i] + 1) ++runs;
    }
    return runs;
}

mpz_class Partition::z_lambda() const {
    mpz_class z = 1;
    const auto m = multiplicities();
    for (std::size_t k = 1; k < m.size(); ++k) {
        if (m[k] == 0) continue;
        z *= power(mpz_class(static_cast<unsigned long>(k)), static_cast<unsigned long>(m[k]));
        z *= factorial(static_cast<unsigned long>(m[k]));
    }
    return z;
}

Complex rising_factorial_pgf(int n, Complex x) {
    require_finite(x, "rising_factorial_pgf");
    if (n < 0) throw DomainError("rising_factorial_pgf: need n >= 0");
    Complex out = 1.0;
    for (int j = 0; j < n; ++j) {
        out *= (x + static_cast<double>(j)) / static_cast<double>(j + 1);
    }
    return out;
}

Complex joint_cycle_pgf(int n, const std::map<int, Complex>& marks) {
    if (n < 0) throw DomainError("joint_cycle_pgf: need n >= 0");
    if (n > kJointCycleLimit) {
        throw CapacityError("joint_cycle_pgf: n above " + std::to_string(kJointCycleLimit));
    }
    for (const auto& [k, x] : marks) require_finite(x, "joint_cycle_pgf");
    Complex total = 0.0;
    for (const Partition& lambda : enumerate_partitions(n, false)) {
        Complex term = 1.0 / lambda.z_lambda().get_d();
        for (const int part : lambda.parts()) {
            const auto it = marks.find(part);
            if (it != marks.end()) term *= it->second;
        }
        total += term;
    }
    return total;
}

NecklaceCounts necklace_counts(std::int64_t q, int k) {
    if (q < 2) throw DomainError("necklace_counts: need q >= 2");
    if (k < 1) throw DomainError("necklace_counts: need k >= 1");
    const auto monic = [q](int d) {
        mpz_class sum = 0;
        for (int l = 1; l <= d; ++l) {
            if (d % l != 0) continue;
            const int mu = moebius_small(l);
            if (mu == 0) continue;
            const mpz_class term =
                power(mpz_class(static_cast<unsigned long>(q)), static_cast<unsigned long>(d / l));
            sum += mu > 0 ? term : mpz_class(-term);
        }
        return mpz_class(sum / d);
    };
    NecklaceCounts out;
    out.monic_irreducible = monic(k);
    for (int d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        const mpz_class slots = (d == k ? out.monic_irreducible : monic(d)) - (d == 1 ? 1 : 0);
        out.weighted += slots * (k / d);
        out.divisor_degrees += slots;
    }
    return out;
}

bool is_prime_power(std::int64_t q) {
    if (q < 2) return false;
    for (std::int64_t p = 2; p * p <= q; ++p) {
        if (q % p == 0) {
            while (q % p == 0) q /= p;
            return q == 1;
        }
    }
    return true;
}

mpz_class gl_cardinal(int n, std::int64_t q) {
    if (n < 0) throw DomainError("gl_cardinal: need n >= 0");
    require_prime_power(q, "gl_cardinal");
    return gl_cardinal_unchecked(n, mpz_class(static_cast<unsigned long>(q)));
}

mpz_class centralizer_size(int d, const Partition& lambda, std::int64_t q) {
    if (d < 1) throw DomainError("centralizer_size: need d >= 1");
    require_prime_power(q, "centralizer_size");
    const mpz_class big_q =
        power(mpz_class(static_cast<unsigned long>(q)), static_cast<unsigned long>(d));
    const auto m = lambda.multiplicities();
    // 2 sum_{k<r} k m_k m_r + sum_k (k - 1) m_k^2
    mpz_class exponent = 0;
    for (std::size_t k = 1; k < m.size(); ++k) {
        exponent += mpz_class(static_cast<long>(k) - 1) * m[k] * m[k];
        for (std::size_t r = k + 1; r < m.size(); ++r) {
            exponent += 2 * mpz_class(static_cast<unsigned long>(k)) * m[k] * m[r];
        }
    }
    mpz_class out = power(big_q, exponent.get_ui());
    for (std::size_t k = 1; k < m.size(); ++k) {
        if (m[k] > 0) out *= gl_cardinal_unchecked(m[k], big_q);
    }
    return out;
}

std::vector<Partition> enumerate_partitions(int n, bool strict) {
    if (n < 0) throw DomainError("enumerate_partitions: need n >= 0");
    const int limit = strict ? kStrictPartitionLimit : kPartitionLimit;
    if (n > limit) {
        throw CapacityError("enumerate_partitions: n above " + std::to_string(limit));
    }
    std::vector<Partition> out;
    std::vector<int> current;
    const std::function<void(int, int)> extend = [&](int remaining, int largest) {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (int part = std::min(remaining, largest); part >= 1; --part) {
            current.push_back(part);
            extend(remaining - part, strict ? part - 1 : part);
            current.pop_back();
        }
    };
    extend(n, n);
    return out;
}

int Polypartition::norm() const {
    int total = 0;
    for (const auto& e : entries) total += e.degree * e.lambda.size();
    return total;
}

int Polypartition::blocks() const {
    int total = 0;
    for (const auto& e : entries) total += e.lambda.size();
    return total;
}

mpz_class gl_slot_count(std::int64_t q, int d) {
    return necklace_counts(q, d).monic_irreducible - (d == 1 ? 1 : 0);
}

std::vector<Polypartition> enumerate_polypartitions(int n, int q) {
    if (n < 0) throw DomainError("enumerate_polypartitions: need n >= 0");
    if (n > kPolypartitionLimit || q < 2 || q > 5) {
        throw CapacityError("enumerate_polypartitions: need n <= 8 and q in {2, 3, 4, 5}");
    }
    std::vector<int> slots(static_cast<std::size_t>(n) + 1, 0);
    for (int d = 1; d <= n; ++d) slots[static_cast<std::size_t>(d)] = gl_slot_count(q, d).get_si();
    std::vector<std::vector<Partition>> partitions_of;
    for (int m = 0; m <= n; ++m) partitions_of.push_back(enumerate_partitions(m, false));

    std::vector<Polypartition> out;
    Polypartition current;
    // Entries are added by increasing degree, then increasing slot index.
    const std::function<void(int, int, int)> extend = [&](int degree, int first_slot,
                                                          int remaining) {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        if (degree > remaining) return;
        for (int slot = first_slot; slot < slots[static_cast<std::size_t>(degree)]; ++slot) {
            for (int m = 1; degree * m <= remaining; ++m) {
                for (const Partition& lambda : partitions_of[static_cast<std::size_t>(m)]) {
                    current.entries.push_back({degree, slot + 1, lambda});
                    extend(degree, slot + 1, remaining - degree * m);
                    current.entries.pop_back();
                }
            }
        }
        extend(degree + 1, 0, remaining);
    };
    extend(1, 0, n);
    return out;
}

mpq_class class_weight(const Polypartition& mu, std::int64_t q) {
    mpz_class cent = 1;
    for (const auto& e : mu.entries) cent *= centralizer_size(e.degree, e.lambda, q);
    return mpq_class(mpz_class(1), cent);
}

mpq_class schur_specialization(const Partition& lambda, std::int64_t q, const mpq_class& t) {
    if (q < 2) throw DomainError("schur_specialization: need q >= 2");
    const mpz_class qq(static_cast<unsigned long>(q));
    const auto weight = static_cast<unsigned long>(lambda.size());
    mpq_class out(power(t.get_num(), weight), power(t.get_den(), weight));
    out /= power(qq, 2 * (weight + static_cast<unsigned long>(lambda.n_stat())));
    for (const int h : lambda.hook_lengths()) {
        const mpz_class qh = power(qq, static_cast<unsigned long>(h));
        const mpq_class factor(qh, qh - 1);
        out *= factor * factor;
    }
    out.canonicalize();
    return out;
}

namespace {

// Monic polynomials of degree n are coded by offset[n] + sum_i c_i p^i over
// their lower coefficients c_0..c_{n-1}.
class MonicCodec {
public:
    MonicCodec(std::int64_t p, int max_degree) : p_(p) {
        offset_.push_back(0);
        std::int64_t count = 1;
        for (int n = 0; n <= max_degree; ++n) {
            offset_.push_back(offset_.back() + count);
            count *= p;
        }
    }
    std::int64_t total() const { return offset_.back(); }
    std::int64_t begin(int n) const { return offset_[static_cast<std::size_t>(n)]; }
    std::int64_t end(int n) const { return offset_[static_cast<std::size_t>(n) + 1]; }

    int degree(std::int64_t code) const {
        return static_cast<int>(std::upper_bound(offset_.begin(), offset_.end(), code) -
                                offset_.begin()) - 1;
    }
    // Full coefficient vector, leading 1 included.
    std::vector<std::int64_t> decode(std::int64_t code) const {
        const int n = degree(code);
        std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
        std::int64_t rest = code - begin(n);
        for (int i = 0; i < n; ++i) {
            c[static_cast<std::size_t>(i)] = rest % p_;
            rest /= p_;
        }
        c[static_cast<std::size_t>(n)] = 1;
        return c;
    }
    std::int64_t encode(const std::vector<std::int64_t>& c) const {
        const int n = static_cast<int>(c.size()) - 1;
        std::int64_t code = 0;
        for (int i = n - 1; i >= 0; --i) code = code * p_ + c[static_cast<std::size_t>(i)];
        return begin(n) + code;
    }
    std::vector<std::int64_t> multiply(const std::vector<std::int64_t>& a,
                                       const std::vector<std::int64_t>& b) const {
        std::vector<std::int64_t> c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p_;
        }
        return c;
    }
    // Divisibility of b by the monic polynomial a.
    bool divides(const std::vector<std::int64_t>& a, std::vector<std::int64_t> b) const {
        if (b.size() < a.size()) return false;
        const std::size_t da = a.size() - 1;
        for (std::size_t top = b.size() - 1; top >= da; --top) {
            const std::int64_t lead = b[top];
            if (lead != 0) {
                for (std::size_t i = 0; i <= da; ++i) {
                    auto& cell = b[top - da + i];
                    cell = ((cell - lead * a[i]) % p_ + p_) % p_;
                }
            }
            if (top == da) break;
        }
        return std::all_of(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(da),
                           [](std::int64_t v) { return v == 0; });
    }

private:
    std::int64_t p_;
    std::vector<std::int64_t> offset_;
};

}  // namespace

PolyFactorTable poly_factor_table(std::int64_t p, int max_degree) {
    if (p < 2) throw DomainError("poly_factor_table: p must be prime");
    for (std::int64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) throw DomainError("poly_factor_table: p must be prime");
    }
    if (max_degree < 0) throw DomainError("poly_factor_table: need max_degree >= 0");
    double size = 1.0;
    for (int i = 0; i < max_degree; ++i) size *= static_cast<double>(p);
    if (size > 2e7) throw CapacityError("poly_factor_table: p^max_degree above 2e7");

    const MonicCodec codec(p, max_degree);
    const std::int64_t total = codec.total();
    std::vector<std::int64_t> factor(static_cast<std::size_t>(total), -1);
    std::vector<std::int64_t> cofactor(static_cast<std::size_t>(total), -1);
    std::vector<int> big_omega(static_cast<std::size_t>(total), 0);
    std::vector<char> squarefree(static_cast<std::size_t>(total), 1);

    PolyFactorTable out;
    out.p = p;
    out.max_degree = max_degree;
    out.irreducible.assign(static_cast<std::size_t>(max_degree) + 1, 0);
    out.by_big_omega.assign(static_cast<std::size_t>(max_degree) + 1,
                            std::vector<std::int64_t>(static_cast<std::size_t>(max_degree) + 1, 0));
    out.squarefree_by_omega = out.by_big_omega;

    for (int n = 0; n <= max_degree; ++n) {
        for (std::int64_t code = codec.begin(n); code < codec.end(n); ++code) {
            const auto idx = static_cast<std::size_t>(code);
            if (n > 0 && factor[idx] < 0) {
                // Irreducible: no factor of smaller degree marked it.
                factor[idx] = code;
                big_omega[idx] = 1;
                ++out.irreducible[static_cast<std::size_t>(n)];
                const auto pc = codec.decode(code);
                for (int m = 1; n + m <= max_degree; ++m) {
                    for (std::int64_t r = codec.begin(m); r < codec.end(m); ++r) {
                        const std::int64_t product = codec.encode(codec.multiply(pc, codec.decode(r)));
                        if (factor[static_cast<std::size_t>(product)] < 0) {
                            factor[static_cast<std::size_t>(product)] = code;
                            cofactor[static_cast<std::size_t>(product)] = r;
                        }
                    }
                }
            } else if (n > 0) {
                const auto r = static_cast<std::size_t>(cofactor[idx]);
                big_omega[idx] = 1 + big_omega[r];
                squarefree[idx] = squarefree[r] &&
                                  !codec.divides(codec.decode(factor[idx]), codec.decode(cofactor[idx]));
            }
            const int m = big_omega[idx];
            ++out.by_big_omega[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
            if (squarefree[idx]) {
                ++out.squarefree_by_omega[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
            }
        }
    }
    return out;
}

}  // namespace modp
