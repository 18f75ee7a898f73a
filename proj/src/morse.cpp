#include "geoindex/morse.hpp"

#include <algorithm>
#include <set>

#include "geoindex/errors.hpp"
#include "geoindex/homology.hpp"

namespace geoindex {

namespace {

void require_bumpy_blocks(const GeodesicRecord& g) {
    const auto& d = g.descriptor;
    if (d.has_eigenvalue_one_blocks() || d.has_eigenvalue_minus_one_blocks())
        throw UnsupportedError("geodesic \"" + g.label +
                               "\": critical modules are only defined here for bumpy records (no +-1 blocks)");
}

}  // namespace

void validate_geodesic(const SphereConfiguration& cfg, const GeodesicRecord& g) {
    if (g.label.empty()) throw ValidationError("geodesic label must be non-empty");
    validate_record(g, cfg.ambient_dim(), cfg.bumpy, cfg.resolution_limit);
    if (!cfg.curvature) return;
    if (g.initial_index < cfg.n - 1)
        throw ValidationError("geodesic \"" + g.label + "\" rejected by the curvature filter i(c) >= n-1: i(c) = " +
                              std::to_string(g.initial_index));
    const Bounded mean = mean_index(g);
    if (!(mean.lo() > cfg.n - 1))
        throw ValidationError("geodesic \"" + g.label + "\" rejected by the curvature filter mean index > n-1: mean index = " +
                              to_string(mean));
}

void validate_sphere(const SphereConfiguration& cfg) {
    if (cfg.n < 2) throw ValidationError("sphere dimension n must be >= 2, got " + std::to_string(cfg.n));
    if (cfg.resolution_limit < 1) throw ValidationError("resolution_limit must be positive");
    if (cfg.curvature) {
        if (!(cfg.curvature->pinch > 0 && cfg.curvature->pinch <= 1))
            throw ValidationError("curvature pinch must lie in (0, 1], got " + to_string(cfg.curvature->pinch));
        if (cfg.curvature->reversibility < 1)
            throw ValidationError("reversibility must be >= 1, got " + to_string(cfg.curvature->reversibility));
    }
}

void validate_configuration(const SphereConfiguration& cfg) {
    validate_sphere(cfg);
    std::set<std::string> labels;
    for (const auto& g : cfg.geodesics) {
        validate_geodesic(cfg, g);
        if (!labels.insert(g.label).second) throw ValidationError("duplicate geodesic label \"" + g.label + "\"");
    }
}

void require_bumpy(const SphereConfiguration& cfg) {
    if (!cfg.bumpy)
        throw UnsupportedError("operation needs a bumpy configuration (critical modules of degenerate orbits are not modelled)");
}

bool contributes(const GeodesicRecord& g, std::int64_t m) {
    require_bumpy_blocks(g);
    return (index_at(g, m) - g.initial_index) % 2 == 0;
}

int critical_module_dim(const GeodesicRecord& g, std::int64_t m, std::int64_t q) {
    require_bumpy_blocks(g);
    const std::int64_t i = index_at(g, m);
    return (i - g.initial_index) % 2 == 0 && q == i ? 1 : 0;
}

int euler_chi(const GeodesicRecord& g, std::int64_t m) {
    require_bumpy_blocks(g);
    const std::int64_t i = index_at(g, m);
    if ((i - g.initial_index) % 2 != 0) return 0;
    return i % 2 == 0 ? 1 : -1;
}

Rational avg_chi(const GeodesicRecord& g) {
    return Rational(euler_chi(g, 1) + euler_chi(g, 2), 2);
}

Rational avg_chi_partial(const GeodesicRecord& g, std::int64_t count) {
    if (count < 1) throw PreconditionError("average over a non-positive number of iterates");
    std::int64_t sum = 0;
    for (std::int64_t m = 1; m <= count; ++m) sum += euler_chi(g, m);
    return Rational(sum, count);
}

IdentityReport check_mean_index_identity(const SphereConfiguration& cfg) {
    require_bumpy(cfg);
    IdentityReport report;
    report.rhs = b_constant(cfg.n);
    Bounded lhs(Rational(0));
    for (const auto& g : cfg.geodesics) {
        IdentityContribution c{g.label, avg_chi(g), mean_index(g), Bounded()};
        if (!c.mean_index.certainly_positive())
            throw PreconditionError("geodesic \"" + g.label + "\": the mean index identity needs mean index > 0, got " +
                                    to_string(c.mean_index));
        c.term = c.mean_index.reciprocal() * c.avg_chi;
        lhs = lhs + c.term;
        report.contributions.push_back(std::move(c));
    }
    report.lhs = lhs;
    report.pass = lhs.is_exact() ? lhs.lo() == report.rhs : lhs.contains(report.rhs);
    return report;
}

std::int64_t sufficient_m_max(const SphereConfiguration& cfg, std::int64_t q_hi, std::int64_t cap) {
    std::int64_t best = 0;
    for (const auto& g : cfg.geodesics) {
        std::int64_t m = 0;
        while (!indices_reach(g, m + 1, q_hi + 1)) {
            if (++m > cap)
                throw RangeError("geodesic \"" + g.label + "\": no m_max <= " + std::to_string(cap) +
                                 " bounds the iterates with index <= " + std::to_string(q_hi));
        }
        best = std::max(best, m);
    }
    return std::max<std::int64_t>(best, 1);
}

MorseWindow morse_counts(const SphereConfiguration& cfg, std::int64_t q_lo, std::int64_t q_hi, std::int64_t m_max) {
    require_bumpy(cfg);
    if (q_hi < q_lo) throw PreconditionError("empty window: q_hi < q_lo");
    if (m_max < 1) throw PreconditionError("m_max must be positive");
    for (const auto& g : cfg.geodesics)
        if (!indices_reach(g, m_max + 1, q_hi + 1))
            throw RangeError("geodesic \"" + g.label + "\": m_max = " + std::to_string(m_max) +
                             " is insufficient, some later iterate may have index <= " + std::to_string(q_hi) +
                             " (monotonicity bound i(c^{m+1}) - i(c^m) >= i(c) - e/2 does not close the window)");

    MorseWindow w;
    w.q_lo = q_lo;
    w.q_hi = q_hi;
    w.counts.assign(static_cast<std::size_t>(q_hi - q_lo + 1), 0);
    for (const auto& g : cfg.geodesics) {
        for (std::int64_t m = 1; m <= m_max; ++m) {
            const std::int64_t i = index_at(g, m);
            if (i < q_lo || i > q_hi) continue;
            if (critical_module_dim(g, m, i) == 0) continue;
            ++w.counts[static_cast<std::size_t>(i - q_lo)];
            w.contributors.push_back({g.label, m, i});
        }
    }
    std::sort(w.contributors.begin(), w.contributors.end(), [](const Contributor& a, const Contributor& b) {
        return a.label != b.label ? a.label < b.label : a.m < b.m;
    });
    return w;
}

MorseInequalityReport check_morse_inequalities(const std::vector<std::int64_t>& morse,
                                               const std::vector<std::int64_t>& betti) {
    if (morse.size() != betti.size())
        throw PreconditionError("Morse and Betti sequences differ in length (" + std::to_string(morse.size()) + " vs " +
                                std::to_string(betti.size()) + ")");
    MorseInequalityReport report;
    std::int64_t margin = 0;
    for (std::size_t q = 0; q < morse.size(); ++q) {
        margin = (morse[q] - betti[q]) - margin;
        report.alternating_margin.push_back(margin);
        if (report.pass) {
            if (morse[q] < betti[q]) {
                report.pass = false;
                report.first_violation = q;
                report.kind = MorseViolation::weak;
            } else if (margin < 0) {
                report.pass = false;
                report.first_violation = q;
                report.kind = MorseViolation::strong;
            }
        }
    }
    return report;
}

}  // namespace geoindex
