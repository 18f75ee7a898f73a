#include "geoindex/iteration.hpp"

#include "geoindex/errors.hpp"

namespace geoindex {

namespace {

void require_decidable(const Bounded& a, const char* what) {
    if (!a.is_exact() && a.contains_integer())
        throw PrecisionError(std::string(what) + ": interval " + to_string(a) +
                             " straddles an integer; refine the decimal input");
}

void require_positive_iterate(std::int64_t m) {
    if (m < 1) throw PreconditionError("iterate m must be a positive integer, got " + std::to_string(m));
}

}  // namespace

std::int64_t floor_int(const Bounded& a) {
    require_decidable(a, "floor [a]");
    return to_int64(floor_of(a.lo()));
}

std::int64_t ceil_int(const Bounded& a) {
    require_decidable(a, "ceiling E(a)");
    return to_int64(ceil_of(a.hi()));
}

int phi(const Bounded& a) {
    require_decidable(a, "phi(a)");
    return a.is_exact() && is_integer(a.lo()) ? 0 : 1;
}

Bounded frac(const Bounded& a) {
    const std::int64_t f = floor_int(a);
    return a - Bounded(f);
}

std::int64_t nullity_from_blocks(const NormalFormDescriptor& d) {
    return d.p_minus + 2 * static_cast<std::int64_t>(d.p_zero) + d.p_plus;
}

void validate_record(const GeodesicRecord& g, int ambient_dim, bool bumpy, std::int64_t resolution_limit) {
    const auto& d = g.descriptor;
    const std::string who = "geodesic \"" + g.label + "\": ";
    try {
        validate_descriptor(d, ambient_dim, resolution_limit);
    } catch (const DimensionError& e) {
        throw DimensionError(who + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(who + e.what());
    }
    if (g.initial_index < 0)
        throw ValidationError(who + "initial index i(c) must be >= 0, got " + std::to_string(g.initial_index));
    if (g.initial_nullity != nullity_from_blocks(d))
        throw ValidationError(who + "initial nullity " + std::to_string(g.initial_nullity) +
                              " differs from p- + 2 p0 + p+ = " + std::to_string(nullity_from_blocks(d)));
    if (d.hyperbolic_dim == 0) {
        const std::int64_t odd_blocks = d.p_minus + d.p_zero + d.q_minus + d.q_zero + d.q_plus + d.r();
        if ((g.initial_index - odd_blocks) % 2 != 0)
            throw ValidationError(who + "index parity rule violated: with no hyperbolic part i(c) must be congruent to "
                                        "p- + p0 + q- + q0 + q+ + r = " +
                                  std::to_string(odd_blocks) + " mod 2, got i(c) = " + std::to_string(g.initial_index));
    }
    if (bumpy) {
        if (d.has_eigenvalue_one_blocks() || d.has_eigenvalue_minus_one_blocks())
            throw ValidationError(who + "bumpy constraint violated: p-, p0, p+, q-, q0, q+ must all be 0");
        for (const auto* list : {&d.thetas, &d.alphas, &d.betas})
            for (const auto& rho : *list)
                if (!rho.is_exact() && !rho.irrational())
                    throw ValidationError(who + "bumpy constraint violated: decimal rotation number " + rho.describe() +
                                          " must be flagged irrational");
    }
}

bool strictly_bumpy(const GeodesicRecord& g) {
    const auto& d = g.descriptor;
    if (d.has_eigenvalue_one_blocks() || d.has_eigenvalue_minus_one_blocks()) return false;
    for (const auto* list : {&d.thetas, &d.alphas, &d.betas})
        for (const auto& rho : *list)
            if (rho.is_exact() || !rho.irrational()) return false;
    return true;
}

std::int64_t index_at(const GeodesicRecord& g, std::int64_t m) {
    require_positive_iterate(m);
    const auto& d = g.descriptor;
    const std::int64_t r = d.r(), r_star = d.r_star();
    std::int64_t result = m * (g.initial_index + d.p_minus + d.p_zero - r);
    for (const auto& theta : d.thetas) result += 2 * ceil_int(theta.times(m));
    result -= r + d.p_minus + d.p_zero;
    if (m % 2 == 0) result -= d.q_zero + d.q_plus;
    std::int64_t phis = 0;
    for (const auto& alpha : d.alphas) phis += phi(alpha.times(m));
    result += 2 * (phis - r_star);
    return result;
}

std::int64_t nullity_at(const GeodesicRecord& g, std::int64_t m) {
    require_positive_iterate(m);
    const auto& d = g.descriptor;
    std::int64_t result = g.initial_nullity;
    if (m % 2 == 0) result += d.q_minus + 2 * static_cast<std::int64_t>(d.q_zero) + d.q_plus;
    result += 2 * static_cast<std::int64_t>(d.r() + d.r_star() + d.r_zero());
    std::int64_t phis = 0;
    for (const auto* list : {&d.thetas, &d.alphas, &d.betas})
        for (const auto& rho : *list) phis += phi(rho.times(m));
    return result - 2 * phis;
}

Bounded mean_index(const GeodesicRecord& g) {
    const auto& d = g.descriptor;
    Bounded total(g.initial_index + d.p_minus + d.p_zero - d.r());
    for (const auto& theta : d.thetas) total = total + theta.value() * Rational(2);
    return total;
}

int splitting_number_at_one(const GeodesicRecord& g) {
    if (g.descriptor.has_eigenvalue_one_blocks())
        throw UnsupportedError("geodesic \"" + g.label +
                               "\": splitting number S+(1) with eigenvalue-1 blocks is not supported (degenerate case)");
    return 0;
}

int index_parity_class(const GeodesicRecord& g, std::int64_t m) {
    if (!strictly_bumpy(g))
        throw UnsupportedError("geodesic \"" + g.label +
                               "\": index parity class needs a bumpy record (no +-1 blocks, irrational rotation numbers)");
    const std::int64_t i = index_at(g, m);
    return static_cast<int>(((i % 2) + 2) % 2);
}

std::int64_t bott_constant(const GeodesicRecord& g) {
    const auto& d = g.descriptor;
    const std::int64_t abs_i = g.initial_index < 0 ? -g.initial_index : g.initial_index;
    return 2 * (d.r() + d.r_star() + 1) + abs_i + d.p_minus + d.p_zero + d.q_zero + d.q_plus;
}

std::int64_t min_index_increment(const GeodesicRecord& g) {
    const auto& d = g.descriptor;
    return g.initial_index + d.p_minus + d.p_zero - d.r() - d.q_zero - d.q_plus - 2 * static_cast<std::int64_t>(d.r_star());
}

bool indices_reach(const GeodesicRecord& g, std::int64_t from, std::int64_t threshold, std::int64_t scan_limit) {
    require_positive_iterate(from);
    if (min_index_increment(g) >= 0) return index_at(g, from) >= threshold;

    const Bounded mean = mean_index(g);
    if (!mean.certainly_positive()) return false;
    // i(c^m) >= m * mean - C, increasing in m.
    const Rational needed = Rational(threshold + bott_constant(g)) / mean.lo();
    std::int64_t safe_from = to_int64(ceil_of(needed));
    if (safe_from < from) safe_from = from;
    if (safe_from - from > scan_limit) return false;
    for (std::int64_t m = from; m < safe_from; ++m)
        if (index_at(g, m) < threshold) return false;
    return true;
}

}  // namespace geoindex
