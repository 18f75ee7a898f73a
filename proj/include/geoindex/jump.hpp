#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoindex/exact.hpp"
#include "geoindex/morse.hpp"

namespace geoindex {

/// Simultaneous iterates m_j at which every geodesic's index sits in the
/// window 2N +- (n-1), together with the data that pins them down.
struct JumpCertificate {
    std::int64_t N = 0;
    std::int64_t M = 0;
    std::vector<std::int64_t> m;
    std::vector<int> xi;
    Rational eps;
    Rational delta;

    friend bool operator==(const JumpCertificate&, const JumpCertificate&) = default;
};

struct JumpSearchOptions {
    Rational eps;
    Rational delta;
    std::int64_t max_M = 100;
    std::int64_t max_N = 10'000;
    std::int64_t min_N = 1;
    // eps < 1/(1 + sum_j 4M|avg_chi(c_j)|); off means eps only needs to
    // bound the fractional-part deviations.
    bool enforce_eps_bound = true;
    unsigned workers = 1;
};

/// Lexicographically smallest (M, N) admissible certificate. Throws
/// NotFoundError carrying a description of the closest candidate seen.
JumpCertificate find_common_jump(const SphereConfiguration& cfg, const JumpSearchOptions& options);

/// Throws InvalidCertificateError naming the first broken invariant:
/// shape, m_j = ([N/(M mean_j)] + xi_j) M, fractional deviation < eps, the
/// eps bound (when enforced), 2N B(n,1) integral, N divisible by n-1, and
/// rotation closeness of 2 m_j rho below delta.
void check_certificate(const SphereConfiguration& cfg, const JumpCertificate& cert, bool enforce_eps_bound = true);

struct JumpCheck {
    std::string name;   // e.g. "lower window i(c^{2m}) >= 2N - e/2"
    bool pass = true;
    std::optional<std::int64_t> witness_iterate;  // first failing iterate
    std::int64_t witness_index = 0;
    std::int64_t bound = 0;
};

struct JumpGeodesicReport {
    std::string label;
    std::int64_t m = 0;
    std::int64_t index_at_2m = 0;
    int elliptic_height = 0;
    std::vector<JumpCheck> checks;
    bool pass = true;
};

struct JumpReport {
    bool pass = true;
    std::vector<JumpGeodesicReport> geodesics;
};

/// Evaluates the four jump inequalities by direct index computation over
/// iterates up to 2m_j + probe (probe defaults to 2m_j). The upper tail of
/// the growth inequality beyond the probe is closed with the mean-index
/// lower bound. Runs check_certificate first.
JumpReport verify_jump(const SphereConfiguration& cfg, const JumpCertificate& cert,
                       std::optional<std::int64_t> probe = std::nullopt, bool enforce_eps_bound = true);

struct EulerBalanceReport {
    Rational lhs;  // sum_j 2 m_j avg_chi(c_j)
    Rational rhs;  // 2N B(n,1)
    bool pass = false;
};

/// sum_j 2 m_j avg_chi(c_j) against 2N B(n,1), both exact. Requires a
/// certificate that passes verify_jump.
EulerBalanceReport euler_balance(const SphereConfiguration& cfg, const JumpCertificate& cert,
                                 bool enforce_eps_bound = true);

struct TruncationFailure {
    std::string condition;
    std::string label;
    std::int64_t iterate = 0;
    std::int64_t index = 0;
};

struct TruncatedSumReport {
    std::int64_t q_top = 0;  // 2N + n - 2
    bool truncation_holds = true;
    std::vector<TruncationFailure> truncation_failures;
    std::optional<std::int64_t> morse_alternating;    // sum_{q <= q_top} (-1)^q M_q, when truncation holds
    std::int64_t euler_sum = 0;                         // sum_j sum_{m <= 2m_j} chi(c_j^m)
    Rational lhs;                                       // sum_j 2 m_j avg_chi(c_j)
    bool pass = false;
};

/// Checks the truncation conditions that confine every iterate of index
/// <= 2N+n-2 to m <= 2m_j, then compares the alternating Morse sum with
/// sum_j 2 m_j avg_chi(c_j).
TruncatedSumReport truncated_morse_sum(const SphereConfiguration& cfg, const JumpCertificate& cert,
                                       bool enforce_eps_bound = true);

struct ContradictionReport {
    std::int64_t q_top = 0;
    Rational morse_alternating;         // forced to 2N B(n,1) by the Euler balance and the truncated sum
    std::int64_t betti_alternating = 0; // sum_{q <= q_top} (-1)^q b_q
    std::int64_t expected_betti = 0;    // 2s(k+1)-1 (odd n) or -2sk+1 (even n)
    std::int64_t s = 0;
    Rational difference;                // morse_alternating - betti_alternating
    bool inequality_holds = true;       // (-1)^{q_top} (morse - betti) >= 0
    bool off_by_one = false;
};

struct EdgeWitnessReport {
    std::optional<std::string> witness;
    std::optional<ContradictionReport> contradiction;  // present when no witness
};

/// Label of the first geodesic with i(c^{2m_j}) = 2N + n - 1, or the
/// contradiction arithmetic showing why such a geodesic must exist.
EdgeWitnessReport top_edge_witness(const SphereConfiguration& cfg, const JumpCertificate& cert,
                                   bool enforce_eps_bound = true);

struct BelowWindowEntry {
    std::string label;
    bool holds = false;
    bool degenerate = false;   // 2m_j = 2, no iterate to check
    std::int64_t index = 0;    // i(c^{2m_j - 2})
    std::int64_t bound = 0;    // 2N - (n-1)
    std::optional<bool> ceiling_increase;  // only for i(c_j) = n-1
};

/// i(c_j^{2m_j-2}) < 2N-(n-1). For geodesics with i(c_j) = n-1 also checks
/// E((2m_j-2) rho) < E((2m_j-1) rho) for the rotation numbers in (1/2, 1),
/// after requiring delta < min(2 rho - 1, 1 - rho) for each of them.
std::vector<BelowWindowEntry> below_window_check(const SphereConfiguration& cfg, const JumpCertificate& cert,
                                                const Rational& delta);

struct EllipticityEntry {
    std::string label;
    std::int64_t index_at_2m = 0;
    bool forced_elliptic = false;
    int elliptic_height = 0;
    bool contradiction = false;
};

/// A geodesic with i(c^{2m_j}) = 2N +- (n-1) sits on the edge of the jump
/// window, which forces e(P) = 2(n-1). Entries whose descriptor disagrees
/// are flagged as contradictions.
std::vector<EllipticityEntry> ellipticity_from_jump(const SphereConfiguration& cfg, const JumpCertificate& cert,
                                                    bool enforce_eps_bound = true);

struct StepCount {
    std::string name;
    std::int64_t required = 0;
    std::int64_t found = 0;
    std::vector<std::string> labels;
    bool pass = false;
};

struct ProofReplay {
    JumpReport jump;
    std::optional<EulerBalanceReport> euler;
    std::optional<TruncatedSumReport> truncated;
    std::optional<EdgeWitnessReport> edge;
    std::vector<BelowWindowEntry> below_window;
    std::vector<EllipticityEntry> ellipticity;
    std::vector<StepCount> steps;
    std::int64_t count_index_n_minus_1 = 0;  // #{j : i(c_j) = n-1}
    std::string edge_case;  // which count the last step keys on
    std::int64_t target = 0;                  // 2[(n+1)/2]
    std::int64_t distinct = 0;
    std::vector<std::string> failing;
    bool pass = false;
};

/// Runs every check above on one certificate. Checks that depend on the
/// jump inequalities are skipped when verify_jump fails. pass means every
/// step of the counting argument goes through for this configuration.
ProofReplay replay_proof(const SphereConfiguration& cfg, const JumpCertificate& cert, bool enforce_eps_bound = true);

/// The period that N must divide: 2k for n = 2k+1, 2k-1 for n = 2k.
std::int64_t jump_period(int n);

}  // namespace geoindex
