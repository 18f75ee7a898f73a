#include <gtest/gtest.h>

#include "geoindex/errors.hpp"
#include "geoindex/iteration.hpp"
#include "support/generators.hpp"

using namespace geoindex;

namespace {

GeodesicRecord s2_a() { return gen::s2_pair().geodesics[0]; }
GeodesicRecord s2_b() { return gen::s2_pair().geodesics[1]; }

}  // namespace

TEST(FloorCeilPhi, ExactAndInterval) {
    EXPECT_EQ(floor_int(Bounded(Rational(-3, 2))), -2);
    EXPECT_EQ(ceil_int(Bounded(Rational(-3, 2))), -1);
    EXPECT_EQ(phi(Bounded(Rational(4))), 0);
    EXPECT_EQ(phi(Bounded(Rational(9, 4))), 1);
    EXPECT_EQ(frac(Bounded(Rational(9, 4))).exact(), Rational(1, 4));
    const Bounded near = Bounded::around(Rational(5, 2), Rational(1, 100));
    EXPECT_EQ(floor_int(near), 2);
    EXPECT_EQ(ceil_int(near), 3);
    const Bounded straddle = Bounded::around(Rational(3), Rational(1, 100));
    EXPECT_THROW(floor_int(straddle), PrecisionError);
    EXPECT_THROW(ceil_int(straddle), PrecisionError);
    EXPECT_THROW(phi(straddle), PrecisionError);
    EXPECT_THROW(frac(straddle), PrecisionError);
}

TEST(IndexAt, TwoSphereExampleByHand) {
    const GeodesicRecord a = s2_a();
    const std::int64_t expected[] = {1, 3, 3, 5, 5, 7, 9, 9, 11, 11, 13};
    for (std::int64_t m = 1; m <= 11; ++m) EXPECT_EQ(index_at(a, m), expected[m - 1]) << "m = " << m;
    EXPECT_EQ(nullity_at(a, 1), 0);
    EXPECT_EQ(nullity_at(a, 5), 2);
    EXPECT_EQ(nullity_at(a, 10), 2);
    EXPECT_EQ(mean_index(a).exact(), Rational(6, 5));
}

TEST(IndexAt, HyperbolicIteratesScaleLinearly) {
    const GeodesicRecord b = s2_b();
    for (std::int64_t m = 1; m <= 50; ++m) {
        EXPECT_EQ(index_at(b, m), 3 * m);
        EXPECT_EQ(nullity_at(b, m), 0);
    }
    EXPECT_EQ(mean_index(b).exact(), Rational(3));
}

TEST(IndexAt, MatchesIndependentOracle) {
    gen::Rng rng(101);
    for (int trial = 0; trial < 400; ++trial) {
        gen::RecordShape shape;
        shape.bumpy = rng.coin(0.6);
        shape.decimals = shape.bumpy;  // unflagged decimals would straddle
        const GeodesicRecord g = gen::random_record(rng, rng.uniform(2, 7), shape, "g");
        ASSERT_NO_THROW(validate_record(g, g.descriptor.total_dimension(), shape.bumpy, default_resolution_limit));
        for (std::int64_t m = 1; m <= 300; ++m) {
            ASSERT_EQ(index_at(g, m), gen::oracle_index(g, m)) << "trial " << trial << " m " << m;
            ASSERT_EQ(nullity_at(g, m), gen::oracle_nullity(g, m)) << "trial " << trial << " m " << m;
        }
    }
}

TEST(IndexAt, RejectsNonPositiveIterates) {
    EXPECT_ANY_THROW(index_at(s2_a(), 0));
    EXPECT_ANY_THROW(nullity_at(s2_a(), -1));
}

TEST(IndexAt, CoarseDecimalIsAPrecisionError) {
    GeodesicRecord g;
    g.label = "coarse";
    g.initial_index = 1;
    g.descriptor.thetas.push_back(RotationNumber::decimal("0.6", "1e-13", false));
    EXPECT_EQ(index_at(g, 1), 1);
    EXPECT_THROW(index_at(g, 5), PrecisionError);
    EXPECT_THROW(nullity_at(g, 5), PrecisionError);
}

TEST(MeanIndex, IntervalForDecimals) {
    GeodesicRecord g;
    g.label = "d";
    g.initial_index = 1;
    g.descriptor.thetas.push_back(RotationNumber::decimal("0.618033988749895", "1e-14", true));
    const Bounded mean = mean_index(g);
    EXPECT_FALSE(mean.is_exact());
    EXPECT_TRUE(mean.contains(Rational(1236067977499790LL, 1000000000000000LL)));
}

TEST(ValidateRecord, ParityNullityAndBumpy) {
    GeodesicRecord g = s2_a();
    EXPECT_NO_THROW(validate_record(g, 2, true, default_resolution_limit));
    g.initial_index = 2;
    EXPECT_THROW(validate_record(g, 2, true, default_resolution_limit), ValidationError);
    g = s2_a();
    g.initial_nullity = 1;
    EXPECT_THROW(validate_record(g, 2, true, default_resolution_limit), ValidationError);
    g = s2_a();
    g.initial_index = -1;
    EXPECT_THROW(validate_record(g, 2, true, default_resolution_limit), ValidationError);

    GeodesicRecord p;
    p.label = "p";
    p.initial_index = 1;
    p.initial_nullity = 2;
    p.descriptor.p_zero = 1;
    EXPECT_NO_THROW(validate_record(p, 2, false, default_resolution_limit));
    EXPECT_THROW(validate_record(p, 2, true, default_resolution_limit), ValidationError);
    EXPECT_THROW(validate_record(s2_a(), 4, true, default_resolution_limit), DimensionError);
    EXPECT_THROW(splitting_number_at_one(p), UnsupportedError);
    EXPECT_EQ(splitting_number_at_one(s2_a()), 0);
}

TEST(ParityClass, StrictlyBumpyOnly) {
    EXPECT_THROW(index_parity_class(s2_a(), 1), UnsupportedError);  // exact rotation number
    gen::Rng rng(7);
    gen::RecordShape shape;
    for (int trial = 0; trial < 100; ++trial) {
        GeodesicRecord g = gen::random_record(rng, rng.uniform(2, 6), shape, "g");
        for (auto* list : {&g.descriptor.thetas, &g.descriptor.alphas, &g.descriptor.betas})
            for (auto& rho : *list) rho = gen::random_irrational_rotation(rng);
        ASSERT_TRUE(strictly_bumpy(g));
        for (std::int64_t m = 1; m <= 40; ++m) {
            const int parity = index_parity_class(g, m);
            EXPECT_EQ(parity, ((gen::oracle_index(g, m) % 2) + 2) % 2);
            // without a hyperbolic part every iterate keeps the parity of the prime geodesic
            if (g.descriptor.hyperbolic_dim == 0) EXPECT_EQ(parity, ((g.initial_index % 2) + 2) % 2) << "m " << m;
        }
    }
}

TEST(BottConstant, BoundsTheDeviationFromLinearGrowth) {
    gen::Rng rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        gen::RecordShape shape;
        shape.bumpy = rng.coin();
        const GeodesicRecord g = gen::random_record(rng, rng.uniform(2, 6), shape, "g");
        const Rational mean = mean_index(g).exact();
        const Rational c(bott_constant(g));
        for (std::int64_t m = 1; m <= 500; ++m) {
            const Rational dev = Rational(index_at(g, m)) - mean * m;
            ASSERT_LE(abs(dev), c) << "trial " << trial << " m " << m;
        }
    }
}

TEST(MinIndexIncrement, IsALowerBoundOnSteps) {
    gen::Rng rng(56);
    for (int trial = 0; trial < 200; ++trial) {
        gen::RecordShape shape;
        shape.bumpy = rng.coin();
        const GeodesicRecord g = gen::random_record(rng, rng.uniform(2, 6), shape, "g");
        const std::int64_t lo = min_index_increment(g);
        EXPECT_GE(2 * lo, 2 * g.initial_index - elliptic_height(g.descriptor));
        for (std::int64_t m = 1; m <= 200; ++m) ASSERT_GE(index_at(g, m + 1) - index_at(g, m), lo);
    }
}

TEST(IndicesReach, AgreesWithExhaustiveScan) {
    gen::Rng rng(57);
    for (int trial = 0; trial < 200; ++trial) {
        gen::RecordShape shape;
        shape.min_index = 0;
        const GeodesicRecord g = gen::random_record(rng, rng.uniform(2, 5), shape, "g");
        if (!mean_index(g).certainly_positive()) {
            EXPECT_FALSE(indices_reach(g, 1, 1));
            continue;
        }
        const std::int64_t from = rng.uniform(1, 30);
        const std::int64_t threshold = rng.uniform(0, 80);
        bool all = true;
        for (std::int64_t m = from; m <= from + 5000; ++m)
            if (index_at(g, m) < threshold) all = false;
        EXPECT_EQ(indices_reach(g, from, threshold), all) << "trial " << trial;
    }
}
