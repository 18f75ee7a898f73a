#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoindex/exact.hpp"
#include "geoindex/iteration.hpp"

namespace geoindex {

/// Pinching data of the metric. Carried as metadata only; its presence
/// switches on the index filter i(c) >= n-1, mean index > n-1.
struct CurvatureAssumption {
    Rational pinch;          // lower flag-curvature bound, in (0, 1]
    Rational reversibility;  // >= 1

    friend bool operator==(const CurvatureAssumption&, const CurvatureAssumption&) = default;
};

inline constexpr std::int64_t default_resolution_limit = 10'000;

/// A Finsler n-sphere described by its finitely many prime closed geodesics.
struct SphereConfiguration {
    int n = 2;
    std::vector<GeodesicRecord> geodesics;
    bool bumpy = true;
    std::optional<CurvatureAssumption> curvature;
    std::int64_t resolution_limit = default_resolution_limit;

    int ambient_dim() const noexcept { return 2 * (n - 1); }

    friend bool operator==(const SphereConfiguration&, const SphereConfiguration&) = default;
};

/// Full load-time validation: record invariants, label uniqueness, the
/// bumpy block constraints, and the curvature filter when requested.
void validate_configuration(const SphereConfiguration& cfg);

/// Sphere-level fields only: n, resolution limit, curvature data.
void validate_sphere(const SphereConfiguration& cfg);

/// One record against the sphere: descriptor, bumpy constraints, curvature filter.
void validate_geodesic(const SphereConfiguration& cfg, const GeodesicRecord& g);

/// Throws UnsupportedError unless the configuration is declared bumpy.
void require_bumpy(const SphereConfiguration& cfg);

/// rank of the critical module of c^m in degree q: 1 iff i(c^m) - i(c) is
/// even and q = i(c^m).
int critical_module_dim(const GeodesicRecord& g, std::int64_t m, std::int64_t q);

/// Whether c^m carries a non-zero critical module at all.
bool contributes(const GeodesicRecord& g, std::int64_t m);

/// chi(c^m) in {-1, 0, 1}.
int euler_chi(const GeodesicRecord& g, std::int64_t m);

/// (chi(c) + chi(c^2)) / 2.
Rational avg_chi(const GeodesicRecord& g);

/// sum_{m <= count} chi(c^m) / count.
Rational avg_chi_partial(const GeodesicRecord& g, std::int64_t count);

struct IdentityContribution {
    std::string label;
    Rational avg_chi;
    Bounded mean_index;
    Bounded term;
};

struct IdentityReport {
    Bounded lhs;
    Rational rhs;
    bool pass = false;
    std::vector<IdentityContribution> contributions;
};

/// sum_j avg_chi(c_j) / mean_index(c_j) against B(n,1). Exact equality for
/// rational data; otherwise the target must lie in the lhs interval.
IdentityReport check_mean_index_identity(const SphereConfiguration& cfg);

struct Contributor {
    std::string label;
    std::int64_t m = 0;
    std::int64_t q = 0;

    friend bool operator==(const Contributor&, const Contributor&) = default;
};

/// Morse-type numbers M_q over [q_lo, q_hi] with the critical orbits that
/// produced them, sorted by (label, m).
struct MorseWindow {
    std::int64_t q_lo = 0;
    std::int64_t q_hi = 0;
    std::vector<std::int64_t> counts;
    std::vector<Contributor> contributors;

    std::int64_t at(std::int64_t q) const { return counts.at(static_cast<std::size_t>(q - q_lo)); }
};

/// Smallest m_max for which every iterate beyond it has index > q_hi,
/// searched up to `cap`. Throws RangeError naming the geodesic otherwise.
std::int64_t sufficient_m_max(const SphereConfiguration& cfg, std::int64_t q_hi, std::int64_t cap = 1'000'000);

/// Throws RangeError naming the first geodesic whose iterates beyond m_max
/// may still land at or below q_hi.
MorseWindow morse_counts(const SphereConfiguration& cfg, std::int64_t q_lo, std::int64_t q_hi, std::int64_t m_max);

enum class MorseViolation { none, weak, strong };

struct MorseInequalityReport {
    bool pass = true;
    std::optional<std::size_t> first_violation;
    MorseViolation kind = MorseViolation::none;  // weak: M_q >= b_q; strong: alternating partial sums
    std::vector<std::int64_t> alternating_margin;  // sum_{i<=q} (-1)^{q-i} (M_i - b_i)
};

/// M_q >= b_q and sum_{i<=q} (-1)^{q-i} M_i >= sum_{i<=q} (-1)^{q-i} b_i
/// for every q; both sequences start at q = 0.
MorseInequalityReport check_morse_inequalities(const std::vector<std::int64_t>& morse,
                                               const std::vector<std::int64_t>& betti);

}  // namespace geoindex
