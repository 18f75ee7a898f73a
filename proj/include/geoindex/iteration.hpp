#pragma once

#include <cstdint>
#include <string>

#include "geoindex/exact.hpp"
#include "geoindex/symplectic.hpp"

namespace geoindex {

/// [a]: greatest integer <= a.
std::int64_t floor_int(const Bounded& a);
/// E(a): least integer >= a.
std::int64_t ceil_int(const Bounded& a);
/// phi(a) = E(a) - [a]: 0 on integers, 1 elsewhere.
int phi(const Bounded& a);
/// {a} = a - [a].
Bounded frac(const Bounded& a);

// All four throw PrecisionError when an inexact a straddles an integer.

/// A prime closed geodesic: its initial Morse index and nullity together
/// with the normal-form data of its linearized Poincare map.
struct GeodesicRecord {
    std::string label;
    std::int64_t initial_index = 0;
    std::int64_t initial_nullity = 0;
    NormalFormDescriptor descriptor;

    friend bool operator==(const GeodesicRecord&, const GeodesicRecord&) = default;
};

/// Kernel dimension of the eigenvalue-1 blocks: p- + 2 p0 + p+.
std::int64_t nullity_from_blocks(const NormalFormDescriptor& d);

/// Checks the descriptor, i >= 0, the nullity/block relation, the index
/// parity rule (when the spectrum lies entirely on the unit circle), and,
/// if `bumpy`, the absence of eigenvalue +-1 blocks and of unflagged decimal
/// rotation numbers. Throws ValidationError.
void validate_record(const GeodesicRecord& g, int ambient_dim, bool bumpy, std::int64_t resolution_limit);

/// No eigenvalue +-1 blocks and every rotation number a decimal flagged
/// irrational: no iterate is ever degenerate.
bool strictly_bumpy(const GeodesicRecord& g);

/// i(c^m) for m >= 1.
std::int64_t index_at(const GeodesicRecord& g, std::int64_t m);

/// nu(c^m) for m >= 1.
std::int64_t nullity_at(const GeodesicRecord& g, std::int64_t m);

/// Mean index i + p- + p0 - r + 2 * sum(rho_j); exact when every theta is.
Bounded mean_index(const GeodesicRecord& g);

/// S+(1). Defined here only without eigenvalue-1 blocks, where it vanishes.
int splitting_number_at_one(const GeodesicRecord& g);

/// i(c^m) mod 2 for a strictly bumpy record; UnsupportedError otherwise.
int index_parity_class(const GeodesicRecord& g, std::int64_t m);

/// C with |i(c^m) - m * mean_index| <= C for every m:
/// 2(r + r* + 1) + |i| + p- + p0 + q0 + q+.
std::int64_t bott_constant(const GeodesicRecord& g);

/// Lower bound on i(c^{m+1}) - i(c^m) valid for every m:
/// i + p- + p0 - r - q0 - q+ - 2 r*, which is at least i - e/2.
std::int64_t min_index_increment(const GeodesicRecord& g);

/// Whether i(c^m) >= threshold holds for every m >= from. Decided by direct
/// evaluation up to the point where the mean-index growth bound takes over;
/// returns false when the bound cannot be established within `scan_limit`
/// iterates or the mean index is not positive.
bool indices_reach(const GeodesicRecord& g, std::int64_t from, std::int64_t threshold,
                   std::int64_t scan_limit = 1'000'000);

}  // namespace geoindex
