#include "geoindex/jump.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "geoindex/errors.hpp"
#include "geoindex/homology.hpp"

namespace geoindex {

namespace {

Rational abs_of(const Rational& x) { return x < 0 ? Rational(-x) : x; }

const Bounded& checked_positive_mean(const GeodesicRecord& g, const Bounded& mean) {
    if (!mean.certainly_positive())
        throw PreconditionError("geodesic \"" + g.label + "\": jump certificates need mean index > 0, got " +
                                to_string(mean));
    return mean;
}

// Upper bound on 1/(1 + sum_j 4M|avg_chi(c_j)|), which eps must undercut.
Rational eps_bound(const SphereConfiguration& cfg, std::int64_t M) {
    Rational total = 0;
    for (const auto& g : cfg.geodesics) total += abs_of(avg_chi(g));
    return Rational(1) / (1 + 4 * Rational(M) * total);
}

// Smallest positive step such that 2N B(n,1) is an integer for every
// multiple N of it.
std::int64_t integrality_step(int n) {
    const Rational b = b_constant(n);
    const Integer num = abs(numerator(b)) * 2;
    const Integer den = denominator(b);
    return to_int64(den / gcd(den, num));
}

Rational max_rotation_distance(const GeodesicRecord& g, std::int64_t m) {
    Rational worst = 0;
    const auto& d = g.descriptor;
    for (const auto* list : {&d.thetas, &d.alphas, &d.betas})
        for (const auto& rho : *list) worst = std::max(worst, max_distance_to_integer(rho.times(2 * m)));
    return worst;
}

// M must make M * 2 rho integral for every exact rotation number.
std::int64_t rotation_step(const SphereConfiguration& cfg) {
    std::int64_t step = 1;
    for (const auto& g : cfg.geodesics) {
        const auto& d = g.descriptor;
        for (const auto* list : {&d.thetas, &d.alphas, &d.betas})
            for (const auto& rho : *list)
                if (rho.is_exact()) step = std::lcm(step, to_int64(denominator(Rational(2 * rho.value().lo()))));
    }
    return step;
}

std::string label_of(const GeodesicRecord& g) { return "geodesic \"" + g.label + "\""; }

struct Candidate {
    bool admissible = false;
    std::vector<std::int64_t> m;
    std::vector<int> xi;
    Rational worst_deviation;  // max_j of the best fractional deviation
    Rational worst_rotation;
    std::string blocker;
};

struct SearchContext {
    const SphereConfiguration& cfg;
    std::vector<Bounded> inverse_means;
    Rational eps;
    Rational delta;
};

Candidate evaluate(const SearchContext& ctx, std::int64_t M, std::int64_t N) {
    Candidate c;
    const Rational ratio(N, M);
    bool ok = true;
    for (std::size_t j = 0; j < ctx.cfg.geodesics.size(); ++j) {
        const Bounded q = ctx.inverse_means[j] * ratio;
        if (!q.is_exact() && q.contains_integer()) {
            c.blocker = "N/(M mean index) of " + label_of(ctx.cfg.geodesics[j]) + " is undecidable at this precision";
            c.worst_deviation = 1;
            return c;
        }
        const Integer f = floor_of(q.lo());
        const Rational dev0 = q.hi() - Rational(f);
        const Rational dev1 = 1 - (q.lo() - Rational(f));
        int xi = dev0 <= dev1 ? 0 : 1;
        if (f + xi == 0) xi = 1;
        const Rational dev = xi == 0 ? dev0 : dev1;
        c.worst_deviation = std::max(c.worst_deviation, dev);
        const std::int64_t m = to_int64((f + xi) * M);
        const Rational rot = max_rotation_distance(ctx.cfg.geodesics[j], m);
        c.worst_rotation = std::max(c.worst_rotation, rot);
        if (!(dev < ctx.eps)) {
            ok = false;
            if (c.blocker.empty()) c.blocker = "fractional deviation of " + label_of(ctx.cfg.geodesics[j]) + " is not below eps";
        }
        if (!(rot < ctx.delta)) {
            ok = false;
            if (c.blocker.empty()) c.blocker = "rotation closeness of " + label_of(ctx.cfg.geodesics[j]) + " is not below delta";
        }
        c.m.push_back(m);
        c.xi.push_back(xi);
    }
    c.admissible = ok;
    return c;
}

struct ShardResult {
    std::optional<std::int64_t> found;
    std::optional<std::int64_t> near_N;
    Candidate near;
};

bool closer(const Candidate& a, const Candidate& b) {
    if (a.worst_deviation != b.worst_deviation) return a.worst_deviation < b.worst_deviation;
    return a.worst_rotation < b.worst_rotation;
}

ShardResult scan_shard(const SearchContext& ctx, std::int64_t M, std::int64_t step, std::int64_t t_begin,
                       std::int64_t t_end) {
    ShardResult r;
    for (std::int64_t t = t_begin; t < t_end; ++t) {
        const std::int64_t N = t * step;
        Candidate c = evaluate(ctx, M, N);
        if (c.admissible) {
            r.found = N;
            return r;
        }
        if (!r.near_N || closer(c, r.near)) {
            r.near_N = N;
            r.near = std::move(c);
        }
    }
    return r;
}

void require_shape(const SphereConfiguration& cfg, const JumpCertificate& cert) {
    const auto p = cfg.geodesics.size();
    if (cert.N < 1 || cert.M < 1) throw InvalidCertificateError("certificate needs N >= 1 and M >= 1");
    if (cert.m.size() != p || cert.xi.size() != p)
        throw InvalidCertificateError("certificate lists " + std::to_string(cert.m.size()) + " iterates and " +
                                      std::to_string(cert.xi.size()) + " xi values for " + std::to_string(p) +
                                      " geodesics");
    if (!(cert.eps > 0) || !(cert.delta > 0)) throw InvalidCertificateError("certificate needs eps > 0 and delta > 0");
}

std::int64_t alternating(const std::vector<std::int64_t>& counts, std::int64_t q_lo) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const std::int64_t q = q_lo + static_cast<std::int64_t>(i);
        sum += (q % 2 == 0 ? 1 : -1) * counts[i];
    }
    return sum;
}

void require_verified(const SphereConfiguration& cfg, const JumpCertificate& cert, bool enforce_eps_bound) {
    const JumpReport report = verify_jump(cfg, cert, std::nullopt, enforce_eps_bound);
    if (report.pass) return;
    for (const auto& g : report.geodesics)
        for (const auto& c : g.checks)
            if (!c.pass)
                throw InvalidCertificateError("certificate is not verified: geodesic \"" + g.label + "\" fails " + c.name);
}

int to_int(std::int64_t x, const char* what) {
    if (x > 1'000'000'000 || x < -1'000'000'000) throw RangeError(std::string(what) + " is too large");
    return static_cast<int>(x);
}

}  // namespace

std::int64_t jump_period(int n) {
    if (n < 2) throw PreconditionError("sphere dimension n must be >= 2");
    return n - 1;
}

void check_certificate(const SphereConfiguration& cfg, const JumpCertificate& cert, bool enforce_eps_bound) {
    require_shape(cfg, cert);
    for (std::size_t j = 0; j < cfg.geodesics.size(); ++j) {
        const auto& g = cfg.geodesics[j];
        const int xi = cert.xi[j];
        if (xi != 0 && xi != 1) throw InvalidCertificateError(label_of(g) + ": xi must be 0 or 1");
        const Bounded mean = mean_index(g);
        const Bounded q = checked_positive_mean(g, mean).reciprocal() * Rational(cert.N, cert.M);
        const std::int64_t f = floor_int(q);
        const std::int64_t expected = (f + xi) * cert.M;
        if (expected != cert.m[j])
            throw InvalidCertificateError(label_of(g) + ": iterate m = " + std::to_string(cert.m[j]) +
                                          " differs from ([N/(M mean index)] + xi) M = " + std::to_string(expected));
        if (expected < 1) throw InvalidCertificateError(label_of(g) + ": iterate m must be positive");
        const Bounded dev = q - Bounded(f + xi);
        const Rational worst = std::max(abs_of(dev.lo()), abs_of(dev.hi()));
        if (!(worst < cert.eps))
            throw InvalidCertificateError(label_of(g) + ": fractional deviation |N/(M mean index) - [N/(M mean index)] - xi| = " +
                                          to_string(worst) + " is not below eps = " + to_string(cert.eps));
        const Rational rot = max_rotation_distance(g, cert.m[j]);
        if (!(rot < cert.delta))
            throw InvalidCertificateError(label_of(g) + ": rotation closeness of 2 m rho to an integer is " +
                                          to_string(rot) + ", not below delta = " + to_string(cert.delta));
    }
    if (enforce_eps_bound) {
        const Rational bound = eps_bound(cfg, cert.M);
        if (!(cert.eps < bound))
            throw InvalidCertificateError("eps = " + to_string(cert.eps) + " violates eps < 1/(1 + sum 4M|avg chi|) = " +
                                          to_string(bound));
    }
    const Rational twice_nb = b_constant(cfg.n) * (2 * cert.N);
    if (!is_integer(twice_nb))
        throw InvalidCertificateError("2N B(n,1) = " + to_string(twice_nb) + " is not an integer");
    if (cert.N % jump_period(cfg.n) != 0)
        throw InvalidCertificateError("N = " + std::to_string(cert.N) + " is not a multiple of n-1 = " +
                                      std::to_string(jump_period(cfg.n)));
}

JumpCertificate find_common_jump(const SphereConfiguration& cfg, const JumpSearchOptions& options) {
    require_bumpy(cfg);
    if (!(options.eps > 0) || !(options.delta > 0)) throw PreconditionError("eps and delta must be positive");
    if (options.max_M < 1 || options.max_N < 1) throw PreconditionError("max-M and max-N must be positive");

    SearchContext ctx{cfg, {}, options.eps, options.delta};
    for (const auto& g : cfg.geodesics) {
        const Bounded mean = mean_index(g);
        if (!(mean.lo() > cfg.n - 1))
            throw PreconditionError(label_of(g) + ": the jump search needs mean index > n-1 = " +
                                    std::to_string(cfg.n - 1) + ", got " + to_string(mean));
        ctx.inverse_means.push_back(mean.reciprocal());
    }

    const std::int64_t step = std::lcm(jump_period(cfg.n), integrality_step(cfg.n));
    const std::int64_t t_first = std::max<std::int64_t>(1, (options.min_N + step - 1) / step);
    const std::int64_t t_last = options.max_N / step;  // inclusive
    const unsigned workers = std::max(1u, options.workers);

    std::optional<std::pair<std::int64_t, std::int64_t>> near_MN;
    Candidate near;
    std::string stop_reason;

    const std::int64_t m_step = rotation_step(cfg);
    for (std::int64_t M = m_step; M <= options.max_M; M += m_step) {
        if (options.enforce_eps_bound && !(options.eps < eps_bound(cfg, M))) {
            stop_reason = "eps = " + to_string(options.eps) + " violates eps < 1/(1 + sum 4M|avg chi|) from M = " +
                          std::to_string(M) + " on";
            break;
        }
        if (t_last < t_first) break;
        const std::int64_t total = t_last - t_first + 1;
        const std::int64_t shards = std::min<std::int64_t>(workers, total);
        std::vector<ShardResult> results(static_cast<std::size_t>(shards));
        auto bounds = [&](std::int64_t s) {
            return std::pair{t_first + total * s / shards, t_first + total * (s + 1) / shards};
        };
        if (shards == 1) {
            results[0] = scan_shard(ctx, M, step, t_first, t_last + 1);
        } else {
            std::vector<std::thread> threads;
            for (std::int64_t s = 0; s < shards; ++s)
                threads.emplace_back([&, s] {
                    const auto [b, e] = bounds(s);
                    results[static_cast<std::size_t>(s)] = scan_shard(ctx, M, step, b, e);
                });
            for (auto& t : threads) t.join();
        }
        for (const auto& r : results) {
            if (r.found) {
                Candidate c = evaluate(ctx, M, *r.found);
                return JumpCertificate{*r.found, M, c.m, c.xi, options.eps, options.delta};
            }
        }
        for (const auto& r : results) {
            if (r.near_N && (!near_MN || closer(r.near, near))) {
                near_MN = {M, *r.near_N};
                near = r.near;
            }
        }
    }

    std::ostringstream miss;
    if (near_MN) {
        miss << "closest candidate M = " << near_MN->first << ", N = " << near_MN->second
             << ": max fractional deviation " << to_string(near.worst_deviation) << " (eps " << to_string(options.eps)
             << "), max rotation distance " << to_string(near.worst_rotation) << " (delta " << to_string(options.delta)
             << ")";
        if (!near.blocker.empty()) miss << "; " << near.blocker;
    } else {
        miss << "no candidate N in range (N must be a positive multiple of " << step << ")";
    }
    if (!stop_reason.empty()) miss << "; " << stop_reason;
    throw NotFoundError("no common index jump certificate with M <= " + std::to_string(options.max_M) +
                            " and N <= " + std::to_string(options.max_N),
                        miss.str());
}

JumpReport verify_jump(const SphereConfiguration& cfg, const JumpCertificate& cert, std::optional<std::int64_t> probe,
                       bool enforce_eps_bound) {
    require_bumpy(cfg);
    check_certificate(cfg, cert, enforce_eps_bound);
    if (probe && *probe < 0) throw PreconditionError("probe must be >= 0");

    JumpReport report;
    const std::int64_t two_n = 2 * cert.N;
    for (std::size_t j = 0; j < cfg.geodesics.size(); ++j) {
        const auto& g = cfg.geodesics[j];
        const std::int64_t m = cert.m[j];
        const std::int64_t reach = probe.value_or(2 * m);
        JumpGeodesicReport gr;
        gr.label = g.label;
        gr.m = m;
        gr.elliptic_height = elliptic_height(g.descriptor);
        gr.index_at_2m = index_at(g, 2 * m);
        const std::int64_t e = gr.elliptic_height;

        JumpCheck lower{"lower window i(c^{2m}) >= 2N - e/2", 2 * gr.index_at_2m >= 2 * two_n - e, std::nullopt,
                        gr.index_at_2m, two_n - e / 2};
        if (!lower.pass) lower.witness_iterate = 2 * m;
        JumpCheck upper{"upper window i(c^{2m}) <= 2N + e/2", 2 * gr.index_at_2m <= 2 * two_n + e, std::nullopt,
                        gr.index_at_2m, two_n + e / 2};
        if (!upper.pass) upper.witness_iterate = 2 * m;

        JumpCheck before{"below jump i(c^{2m-k}) <= 2N - i(c)", true, std::nullopt, 0, two_n - g.initial_index};
        for (std::int64_t k = 1; k <= std::min(reach, 2 * m - 1); ++k) {
            const std::int64_t idx = index_at(g, 2 * m - k);
            if (idx > before.bound) {
                before = {before.name, false, 2 * m - k, idx, before.bound};
                break;
            }
        }

        JumpCheck after{"above jump i(c^{2m+k}) >= 2N + i(c)", true, std::nullopt, 0, two_n + g.initial_index};
        for (std::int64_t k = 1; k <= reach; ++k) {
            const std::int64_t idx = index_at(g, 2 * m + k);
            if (idx < after.bound) {
                after = {after.name, false, 2 * m + k, idx, after.bound};
                break;
            }
        }
        JumpCheck tail{"growth tail beyond probe i(c^{2m+k}) >= 2N + i(c)", true, std::nullopt, 0, after.bound};
        if (after.pass && !indices_reach(g, 2 * m + reach + 1, after.bound)) tail.pass = false;

        gr.checks = {lower, upper, before, after, tail};
        for (const auto& c : gr.checks) gr.pass = gr.pass && c.pass;
        report.pass = report.pass && gr.pass;
        report.geodesics.push_back(std::move(gr));
    }
    return report;
}

EulerBalanceReport euler_balance(const SphereConfiguration& cfg, const JumpCertificate& cert, bool enforce_eps_bound) {
    require_verified(cfg, cert, enforce_eps_bound);
    EulerBalanceReport r;
    for (std::size_t j = 0; j < cfg.geodesics.size(); ++j) r.lhs += 2 * Rational(cert.m[j]) * avg_chi(cfg.geodesics[j]);
    r.rhs = b_constant(cfg.n) * (2 * cert.N);
    r.pass = r.lhs == r.rhs;
    return r;
}

TruncatedSumReport truncated_morse_sum(const SphereConfiguration& cfg, const JumpCertificate& cert,
                                       bool enforce_eps_bound) {
    require_verified(cfg, cert, enforce_eps_bound);
    TruncatedSumReport r;
    r.q_top = 2 * cert.N + cfg.n - 2;
    const std::int64_t edge = r.q_top + 1;
    std::int64_t m_max = 1;

    for (std::size_t j = 0; j < cfg.geodesics.size(); ++j) {
        const auto& g = cfg.geodesics[j];
        const std::int64_t two_m = 2 * cert.m[j];
        m_max = std::max(m_max, two_m);
        const std::int64_t at_jump = index_at(g, two_m);
        if (at_jump >= edge)
            r.truncation_failures.push_back({"jump iterate below the top edge i(c^{2m}) < 2N+n-1", g.label, two_m, at_jump});
        for (std::int64_t m = 1; m < two_m; ++m) {
            const std::int64_t idx = index_at(g, m);
            if (idx > at_jump) {
                r.truncation_failures.push_back({"earlier iterates below the jump i(c^m) <= i(c^{2m}), m < 2m_j", g.label, m, idx});
                break;
            }
        }
        if (at_jump > r.q_top)
            r.truncation_failures.push_back({"jump iterate inside the window i(c^{2m}) <= 2N+n-2", g.label, two_m, at_jump});
        if (!indices_reach(g, two_m + 1, edge)) {
            TruncationFailure f{"later iterates above the window i(c^m) >= 2N+n-1, m > 2m_j", g.label, 0, 0};
            for (std::int64_t m = two_m + 1; m <= 4 * two_m + 4; ++m) {
                const std::int64_t idx = index_at(g, m);
                if (idx < edge) {
                    f.iterate = m;
                    f.index = idx;
                    break;
                }
            }
            r.truncation_failures.push_back(f);
        }
        for (std::int64_t m = 1; m <= two_m; ++m) r.euler_sum += euler_chi(g, m);
        r.lhs += Rational(two_m) * avg_chi(g);
    }
    r.truncation_holds = r.truncation_failures.empty();
    if (r.truncation_holds) {
        const MorseWindow w = morse_counts(cfg, 0, r.q_top, m_max);
        r.morse_alternating = alternating(w.counts, 0);
        r.pass = *r.morse_alternating == r.euler_sum && Rational(r.euler_sum) == r.lhs;
    }
    return r;
}

EdgeWitnessReport top_edge_witness(const SphereConfiguration& cfg, const JumpCertificate& cert, bool enforce_eps_bound) {
    require_verified(cfg, cert, enforce_eps_bound);
    EdgeWitnessReport r;
    const std::int64_t edge = 2 * cert.N + cfg.n - 1;
    for (std::size_t j = 0; j < cfg.geodesics.size(); ++j) {
        if (index_at(cfg.geodesics[j], 2 * cert.m[j]) == edge) {
            r.witness = cfg.geodesics[j].label;
            return r;
        }
    }
    ContradictionReport c;
    c.q_top = edge - 1;
    c.morse_alternating = b_constant(cfg.n) * (2 * cert.N);
    c.betti_alternating = alternating_betti_sum(cfg.n, to_int(c.q_top, "2N+n-2"));
    c.s = cert.N / jump_period(cfg.n);
    const std::int64_t k = cfg.n / 2;
    c.expected_betti = cfg.n % 2 == 1 ? 2 * c.s * (k + 1) - 1 : -2 * c.s * k + 1;
    c.difference = c.morse_alternating - Rational(c.betti_alternating);
    const Rational signed_margin = c.q_top % 2 == 0 ? c.difference : Rational(-c.difference);
    c.inequality_holds = signed_margin >= 0;
    c.off_by_one = !c.inequality_holds && abs_of(c.difference) == 1;
    r.contradiction = c;
    return r;
}

std::vector<BelowWindowEntry> below_window_check(const SphereConfiguration& cfg, const JumpCertificate& cert,
                                                 const Rational& delta) {
    require_bumpy(cfg);
    require_shape(cfg, cert);
    std::vector<BelowWindowEntry> out;
    const std::int64_t bound = 2 * cert.N - (cfg.n - 1);
    for (std::size_t j = 0; j < cfg.geodesics.size(); ++j) {
        const auto& g = cfg.geodesics[j];
        const std::int64_t m = cert.m[j];
        BelowWindowEntry e{g.label, true, false, 0, bound, std::nullopt};
        if (g.initial_index == cfg.n - 1) {
            const Rational half(1, 2);
            bool increase = false;
            for (const auto& rho : g.descriptor.thetas) {
                const Bounded v = rho.value();
                if (!(v.lo() > half)) continue;
                const Rational limit = std::min(Rational(2 * v.lo() - 1), Rational(1 - v.hi()));
                if (!(delta < limit))
                    throw PreconditionError(label_of(g) + ": delta = " + to_string(delta) +
                                            " must be below min(2 rho - 1, 1 - rho) = " + to_string(limit) +
                                            " for rotation number rho = " + rho.describe());
                if (m > 1 && ceil_int(rho.times(2 * m - 2)) < ceil_int(rho.times(2 * m - 1))) increase = true;
                if (m == 1) increase = true;
            }
            e.ceiling_increase = increase;
        }
        if (2 * m - 2 == 0) {
            e.degenerate = true;
        } else {
            e.index = index_at(g, 2 * m - 2);
            e.holds = e.index < bound;
        }
        out.push_back(e);
    }
    return out;
}

std::vector<EllipticityEntry> ellipticity_from_jump(const SphereConfiguration& cfg, const JumpCertificate& cert,
                                                    bool enforce_eps_bound) {
    require_bumpy(cfg);
    check_certificate(cfg, cert, enforce_eps_bound);
    std::vector<EllipticityEntry> out;
    const int full = 2 * (cfg.n - 1);
    for (std::size_t j = 0; j < cfg.geodesics.size(); ++j) {
        const auto& g = cfg.geodesics[j];
        EllipticityEntry e;
        e.label = g.label;
        e.index_at_2m = index_at(g, 2 * cert.m[j]);
        e.elliptic_height = elliptic_height(g.descriptor);
        e.forced_elliptic = e.index_at_2m == 2 * cert.N + (cfg.n - 1) || e.index_at_2m == 2 * cert.N - (cfg.n - 1);
        e.contradiction = e.forced_elliptic && e.elliptic_height != full;
        out.push_back(e);
    }
    return out;
}

ProofReplay replay_proof(const SphereConfiguration& cfg, const JumpCertificate& cert, bool enforce_eps_bound) {
    ProofReplay r;
    r.target = 2 * ((cfg.n + 1) / 2);
    r.jump = verify_jump(cfg, cert, std::nullopt, enforce_eps_bound);
    for (const auto& g : r.jump.geodesics)
        for (const auto& c : g.checks)
            if (!c.pass) r.failing.push_back("geodesic \"" + g.label + "\": " + c.name);

    r.ellipticity = ellipticity_from_jump(cfg, cert, enforce_eps_bound);
    for (const auto& e : r.ellipticity)
        if (e.contradiction)
            r.failing.push_back("geodesic \"" + e.label + "\": index on the window edge forces e(P) = 2(n-1), descriptor has e = " +
                                std::to_string(e.elliptic_height));
    if (!r.jump.pass) return r;

    r.euler = euler_balance(cfg, cert, enforce_eps_bound);
    if (!r.euler->pass)
        r.failing.push_back("Euler balance sum_j 2 m_j avg_chi(c_j) = 2N B(n,1): " + to_string(r.euler->lhs) +
                            " != " + to_string(r.euler->rhs));
    r.truncated = truncated_morse_sum(cfg, cert, enforce_eps_bound);
    r.edge = top_edge_witness(cfg, cert, enforce_eps_bound);
    if (!r.edge->witness) {
        for (const auto& f : r.truncated->truncation_failures)
            r.failing.push_back("truncation " + f.condition + " fails for geodesic \"" + f.label + "\"");
        if (r.truncated->truncation_holds && !r.truncated->pass)
            r.failing.push_back("truncated Morse sum equals sum_j 2 m_j avg_chi(c_j)");
        const auto& c = *r.edge->contradiction;
        std::string what = "top edge witness i(c^{2m}) = 2N+n-1 missing: Morse inequality at q = 2N+n-2 needs (-1)^q (" +
                           to_string(c.morse_alternating) + " - " + std::to_string(c.betti_alternating) + ") >= 0";
        if (c.off_by_one) what += "; alternating Morse and Betti sums differ by exactly 1";
        r.failing.push_back(what);
    }
    try {
        r.below_window = below_window_check(cfg, cert, cert.delta);
        for (const auto& e : r.below_window) {
            if (!e.holds)
                r.failing.push_back("geodesic \"" + e.label + "\": below-window gap i(c^{2m-2}) < 2N-(n-1) fails (" +
                                    std::to_string(e.index) + " >= " + std::to_string(e.bound) + ")");
            if (e.ceiling_increase && !*e.ceiling_increase)
                r.failing.push_back("geodesic \"" + e.label + "\": strict ceiling increase E((2m-2) rho) < E((2m-1) rho) fails");
        }
    } catch (const PreconditionError& e) {
        r.failing.push_back(e.what());
    }

    // Counting: distinct geodesics forced into the window degrees.
    const std::int64_t two_n = 2 * cert.N;
    const std::int64_t n1 = cfg.n - 1;
    std::set<std::string> used;
    std::vector<std::int64_t> at_jump;
    for (std::size_t j = 0; j < cfg.geodesics.size(); ++j) at_jump.push_back(index_at(cfg.geodesics[j], 2 * cert.m[j]));
    auto contributes_at_jump = [&](std::size_t j) {
        return (at_jump[j] - cfg.geodesics[j].initial_index) % 2 == 0;
    };

    StepCount interior{"interior degrees 2N-(n-1)+2t, 1 <= t <= n-2", 0, 0, {}, false};
    for (std::int64_t t = 1; t <= cfg.n - 2; ++t)
        interior.required += betti(cfg.n, to_int(two_n - n1 + 2 * t, "window degree"));
    for (std::size_t j = 0; j < cfg.geodesics.size(); ++j) {
        const std::int64_t off = at_jump[j] - (two_n - n1);
        if (off >= 2 && off <= 2 * (cfg.n - 2) && off % 2 == 0 && contributes_at_jump(j)) {
            interior.labels.push_back(cfg.geodesics[j].label);
            used.insert(cfg.geodesics[j].label);
        }
    }
    interior.found = static_cast<std::int64_t>(interior.labels.size());
    interior.pass = interior.found >= interior.required;

    StepCount top{"top edge 2N+n-1", r.target - 1, interior.found, {}, false};
    if (r.edge->witness && !used.count(*r.edge->witness)) {
        top.labels.push_back(*r.edge->witness);
        used.insert(*r.edge->witness);
        ++top.found;
    }
    top.pass = top.found >= top.required;

    for (const auto& g : cfg.geodesics)
        if (g.initial_index == n1) ++r.count_index_n_minus_1;
    StepCount last{"", r.target, top.found, {}, false};
    if (r.count_index_n_minus_1 == 0) {
        r.edge_case = "no geodesic with i(c) = n-1, so M_{n-1} >= b_{n-1} = 1 cannot hold";
        last.name = "index n-1 geodesic";
    } else if (r.count_index_n_minus_1 == 1) {
        r.edge_case = "exactly one geodesic with i(c) = n-1";
        last.name = "bottom edge 2N-(n-1)";
        for (std::size_t j = 0; j < cfg.geodesics.size(); ++j) {
            const auto& label = cfg.geodesics[j].label;
            if (at_jump[j] == two_n - n1 && contributes_at_jump(j) && !used.count(label)) {
                last.labels.push_back(label);
                used.insert(label);
                ++last.found;
                break;
            }
        }
    } else {
        r.edge_case = "more than one geodesic with i(c) = n-1";
        last.name = "index n geodesic";
        for (const auto& g : cfg.geodesics) {
            if (g.initial_index == cfg.n && !used.count(g.label)) {
                last.labels.push_back(g.label);
                used.insert(g.label);
                ++last.found;
                break;
            }
        }
    }
    last.pass = last.found >= last.required;

    r.steps = {interior, top, last};
    for (const auto& s : r.steps)
        if (!s.pass)
            r.failing.push_back("count at " + s.name + ": found " + std::to_string(s.found) + " distinct geodesics, need " +
                                std::to_string(s.required));
    r.distinct = static_cast<std::int64_t>(used.size());
    r.pass = r.failing.empty();
    return r;
}

}  // namespace geoindex
