#include "geoindex/homology.hpp"

#include <string>

#include "geoindex/errors.hpp"

namespace geoindex {

namespace {

void require_sphere(int n) {
    if (n < 2) throw PreconditionError("sphere dimension n must be >= 2, got " + std::to_string(n));
}

// q = base + 2l for some l >= 0 with (l mod period == 0) == want_multiple.
bool in_progression(int q, int base, int period, bool want_multiple) {
    if (q < base || (q - base) % 2 != 0) return false;
    const int l = (q - base) / 2;
    return (l % period == 0) == want_multiple;
}

}  // namespace

int betti(int n, int q) {
    require_sphere(n);
    if (q < 0) return 0;
    if (n % 2 == 1) {
        const int k = (n - 1) / 2;
        if (in_progression(q, 4 * k, k, true)) return 2;
        if (q == 2 * k || in_progression(q, 2 * k, k, false)) return 1;
        return 0;
    }
    const int k = n / 2;
    if (in_progression(q, 6 * k - 3, 2 * k - 1, true)) return 2;
    if (q == 2 * k - 1 || in_progression(q, 2 * k - 1, 2 * k - 1, false)) return 1;
    return 0;
}

BettiLadder betti_ladder(int n, int q_max) {
    require_sphere(n);
    if (q_max < 0) throw PreconditionError("q_max must be >= 0");
    BettiLadder ladder{n, q_max, {}};
    ladder.values.reserve(static_cast<std::size_t>(q_max) + 1);
    for (int q = 0; q <= q_max; ++q) ladder.values.push_back(betti(n, q));
    return ladder;
}

std::vector<std::int64_t> power_series_quotient(const std::vector<std::int64_t>& num,
                                                const std::vector<std::int64_t>& den, int terms) {
    if (den.empty() || (den[0] != 1 && den[0] != -1))
        throw PreconditionError("power series division needs a unit constant term in the denominator");
    std::vector<std::int64_t> rem(static_cast<std::size_t>(terms), 0);
    for (std::size_t i = 0; i < num.size() && i < rem.size(); ++i) rem[i] = num[i];
    std::vector<std::int64_t> quot(static_cast<std::size_t>(terms), 0);
    for (std::size_t i = 0; i < quot.size(); ++i) {
        const std::int64_t c = rem[i] * den[0];  // den[0] is its own inverse
        quot[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < den.size() && i + j < rem.size(); ++j) rem[i + j] -= c * den[j];
    }
    return quot;
}

BettiLadder poincare_series_coeffs(int n, int q_max) {
    require_sphere(n);
    if (q_max < 0) throw PreconditionError("q_max must be >= 0");
    const int shift = n - 1;
    const int period = n % 2 == 1 ? n - 1 : 2 * n - 2;
    const int terms = q_max + 1;

    auto monomial = [](int degree) {
        std::vector<std::int64_t> p(static_cast<std::size_t>(degree) + 1, 0);
        p.back() = 1;
        return p;
    };
    auto one_minus = [](int degree) {
        std::vector<std::int64_t> p(static_cast<std::size_t>(degree) + 1, 0);
        p[0] = 1;
        p.back() -= 1;
        return p;
    };

    const auto first = power_series_quotient(monomial(shift), one_minus(2), terms);
    const auto second = power_series_quotient(monomial(shift + period), one_minus(period), terms);

    BettiLadder ladder{n, q_max, {}};
    ladder.values.reserve(static_cast<std::size_t>(terms));
    for (int q = 0; q < terms; ++q) ladder.values.push_back(static_cast<int>(first[q] + second[q]));
    return ladder;
}

Rational b_constant(int n) {
    require_sphere(n);
    if (n % 2 == 1) return Rational(n + 1, 2 * (n - 1));
    return Rational(-n, 2 * (n - 1));
}

std::int64_t alternating_betti_sum(int n, int q_max) {
    require_sphere(n);
    std::int64_t sum = 0;
    for (int q = 0; q <= q_max; ++q) sum += (q % 2 == 0 ? 1 : -1) * betti(n, q);
    return sum;
}

}  // namespace geoindex
