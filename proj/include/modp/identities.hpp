#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modp/series.hpp"

namespace modp {

enum class IdentityId {
    newton,
    polya_cip,
    polya_cip_two_marker,
    csigma_geom,
    dimension_geom,
    cyclotomic_simple,
    cyclotomic_general,
    poly_cip,
    sf_cyclotomic,
    sf_poly_cip,
    silvester,
    strict_count,
    gl_cip,
    plethystic_norm,
};

std::vector<IdentityId> all_identities();
IdentityId parse_identity(std::string_view name);
std::string_view identity_name(IdentityId id);
bool identity_uses_q(IdentityId id);

struct IdentityParams {
    int order = 12;           // T, truncation order in t (GL cases use n <= order)
    std::int64_t q = 2;       // field size for the q-indexed cases
    int marked_lengths = 3;   // polya_cip: x_k = x for k <= this, 1 beyond
};

struct IdentityReport {
    std::string id;
    std::string params;
    bool pass = false;
    mpq_class max_abs_coeff_diff = 0;
    int witness = -1;  // first t-power with a differing coefficient, -1 if none
};

// Exact coefficient comparison of both sides truncated at the requested order.
IdentityReport verify_identity(IdentityId id, const IdentityParams& params);

// The statement exactly as printed, for the two cases whose printed form does
// not hold: sf_poly_cip (plain geometric randomisation) and plethystic_norm
// (product with exponent k). Throws UsageError for other ids.
IdentityReport verify_printed_form(IdentityId id, const IdentityParams& params);

IdentityReport compare_series(std::string id, std::string params, const RationalSeries& lhs,
                              const RationalSeries& rhs);

// Every case on the standard grid: order T (8 for the two-marker cases, at most 6
// for gl_cip), each q in `qs` for the q-indexed cases.
std::vector<IdentityReport> verify_identity_suite(int order, std::span<const std::int64_t> qs);

}  // namespace modp
