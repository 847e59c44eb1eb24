#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "modp/numerics.hpp"

namespace modp {

class Partition {
public:
    Partition() = default;
    // Parts are sorted into weakly decreasing order; zero or negative parts throw DomainError.
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    int length() const { return static_cast<int>(parts_.size()); }
    int size() const { return size_; }
    int multiplicity(int k) const;
    // m[k] = multiplicity of k, for k = 0..largest part (m[0] unused).
    std::vector<int> multiplicities() const;
    // n(lambda) = sum_k (k - 1) lambda_k.
    std::int64_t n_stat() const;
    Partition conjugate() const;
    // Hook length of every cell, row by row.
    std::vector<int> hook_lengths() const;
    bool is_strict() const;
    // Alternating sum lambda_1 - lambda_2 + lambda_3 - ...
    int kappa() const;
    // Number of maximal runs of consecutive integers among lambda_2, lambda_3, ...
    int str() const;
    // z_lambda = prod_k k^{m_k} m_k!.
    mpz_class z_lambda() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
    int size_ = 0;
};

// E[x^{C(sigma_n)}] = x (x + 1) ... (x + n - 1) / n!.
Complex rising_factorial_pgf(int n, Complex x);

// E[prod_k x_k^{c_k(sigma_n)}] as sum_{lambda |- n} prod_k x_k^{m_k} / z_lambda.
// Unmarked k count as 1. n <= 30.
Complex joint_cycle_pgf(int n, const std::map<int, Complex>& marks);

struct NecklaceCounts {
    mpz_class monic_irreducible;  // M_q(k)
    mpz_class weighted;           // sum_{d|k} (M_q(d) - [d = 1]) k / d
    mpz_class divisor_degrees;    // sum_{d|k} (M_q(d) - [d = 1])
};

NecklaceCounts necklace_counts(std::int64_t q, int k);

bool is_prime_power(std::int64_t q);

// |GL_n(F_q)|; q must be a prime power.
mpz_class gl_cardinal(int n, std::int64_t q);

// Centralizer order of the Jordan block attached to (f, lambda) with deg f = d.
mpz_class centralizer_size(int d, const Partition& lambda, std::int64_t q);

// All partitions of n (or strict ones) in decreasing lexicographic order.
// Limits: n <= 60, or n <= 100 when strict.
std::vector<Partition> enumerate_partitions(int n, bool strict);

struct PolyEntry {
    int degree = 1;
    int type_index = 1;  // 1..number of slots of that degree
    Partition lambda;
};

struct Polypartition {
    std::vector<PolyEntry> entries;
    int norm() const;
    // Total number of blocks, sum_f |lambda_f|.
    int blocks() const;
};

// Number of slots of degree d: monic irreducibles of degree d other than X.
mpz_class gl_slot_count(std::int64_t q, int d);

// Polypartitions of norm n, i.e. conjugacy classes of GL_n(F_q). n <= 8, q in {2, 3, 4, 5}.
std::vector<Polypartition> enumerate_polypartitions(int n, int q);

// 1 / |Cent| of the class indexed by a polypartition.
mpq_class class_weight(const Polypartition& mu, std::int64_t q);

// Factor statistics of every monic polynomial of degree <= max_degree over F_p,
// p prime, from a smallest-factor sieve on polynomials.
struct PolyFactorTable {
    std::int64_t p = 2;
    int max_degree = 0;
    std::vector<std::vector<std::int64_t>> by_big_omega;         // [n][m]: degree n, Omega = m
    std::vector<std::vector<std::int64_t>> squarefree_by_omega;  // [n][m]: square-free, omega = m
    std::vector<std::int64_t> irreducible;                       // [n]
};

// Requires p^max_degree <= 2e7.
PolyFactorTable poly_factor_table(std::int64_t p, int max_degree);

// s_lambda[sqrt(t) A(q)]^2 with A(q) = {q^{-k}}_{k >= 1}:
// t^{|lambda|} q^{-2(|lambda| + n(lambda))} prod (1 - q^{-h})^{-2}.
mpq_class schur_specialization(const Partition& lambda, std::int64_t q, const mpq_class& t);

}  // namespace modp
