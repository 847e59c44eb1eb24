#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "modp/numerics.hpp"

namespace modp {

enum class PhiModelId {
    perm_C,
    omega_hat,
    omega,
    bigOmega_hat,
    bigOmega,
    omega_q_hat,
    omega_q,
    bigOmega_q_hat,
    bigOmega_q,
    C_q_hat,
    C_q,
    sf_bigOmega_int_hat,
    sf_bigOmega_poly_hat,
};

struct PhiModel {
    PhiModelId id = PhiModelId::perm_C;
    std::optional<std::int64_t> q;  // present exactly for the q-indexed models
};

PhiModelId parse_phi_model(std::string_view name);
std::string_view phi_model_name(PhiModelId id);
std::vector<PhiModelId> all_phi_models();
bool is_q_indexed(PhiModelId id);
// The independent-model partner of a non-hat model (omega -> omega_hat, ...).
std::optional<PhiModelId> hat_partner(PhiModelId id);

// Number of factors of the Euler product used for the 1/Gamma(x) factor of the non-hat models.
inline constexpr std::int64_t kGammaFactorTerms = 2'000'000;

// Truncated limiting function. `trunc` bounds the primes (integer models), the
// degrees (polynomial and GL models) or the factors of the Gamma product
// (perm_C). Non-hat values are the hat value times the Euler product for
// 1/Gamma(x). Domain: |x| < 2 for bigOmega and bigOmega_hat, |x| < q for
// bigOmega_q, bigOmega_q_hat, C_q and C_q_hat.
TruncatedValue phi_limit(const PhiModel& model, Complex x, std::int64_t trunc);

// Monic irreducible count M_q(k) and the C_q exponent sum_{d|k} (M_q(d) - [d = 1]),
// in floating point (exact below 2^53).
double monic_irreducible_count(std::int64_t q, int k);
double cycle_exponent(std::int64_t q, int k);

}  // namespace modp
