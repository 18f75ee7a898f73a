#pragma once

#include <cstdint>
#include <vector>

#include "geoindex/exact.hpp"

namespace geoindex {

/// Ranks b_0..b_{q_max} of H_q of the S^1-quotient of the free loop space of
/// S^n relative to the constant loops.
struct BettiLadder {
    int n = 0;
    int q_max = 0;
    std::vector<int> values;

    friend bool operator==(const BettiLadder&, const BettiLadder&) = default;
};

/// Closed-form case split. n >= 2, q >= 0.
///
/// n = 2k+1: 2 on {4k + 2l : l = 0 mod k}, 1 on {2k} and {2k + 2l : l != 0 mod k}.
/// n = 2k:   2 on {6k - 3 + 2l : l = 0 mod 2k-1}, 1 on {2k - 1} and {2k - 1 + 2l : l != 0 mod 2k-1}.
int betti(int n, int q);

BettiLadder betti_ladder(int n, int q_max);

/// Coefficients of the Poincare series
///
///   n = 2k+1: t^{2k}   (1/(1-t^2) + t^{2k}/(1-t^{2k}))
///   n = 2k:   t^{2k-1} (1/(1-t^2) + t^{4k-2}/(1-t^{4k-2}))
///
/// obtained by long division of each rational term. Independent of betti().
///
/// The even case is the m = 1 specialization of the general expression
/// t^{n-1}(1/(1-t^2) + t^{n(m+1)-2}/(1-t^{n(m+1)-2})) (1-t^{nm})/(1-t^n);
/// other m are not implemented.
BettiLadder poincare_series_coeffs(int n, int q_max);

/// Power-series quotient num/den truncated to `terms` coefficients; den[0] must be +-1.
std::vector<std::int64_t> power_series_quotient(const std::vector<std::int64_t>& num,
                                                const std::vector<std::int64_t>& den, int terms);

/// B(n,1) = (n+1)/(2(n-1)) for odd n, -n/(2(n-1)) for even n.
Rational b_constant(int n);

/// sum_{q=0}^{q_max} (-1)^q b_q.
std::int64_t alternating_betti_sum(int n, int q_max);

}  // namespace geoindex
