#include <gtest/gtest.h>

#include "geoindex/config.hpp"
#include "geoindex/errors.hpp"
#include "support/generators.hpp"

using namespace geoindex;

namespace {

const std::filesystem::path examples = GEOINDEX_EXAMPLES_DIR;

std::string expect_error_text(const std::string& text) {
    try {
        parse_config(text);
    } catch (const InputError& e) {
        return e.what();
    }
    ADD_FAILURE() << "expected an input error for:\n" << text;
    return {};
}

}  // namespace

TEST(Config, LoadsTheExamples) {
    const ConfigDocument doc = load_config(examples / "s2-pair.json");
    EXPECT_EQ(doc.sphere, gen::s2_pair());
    EXPECT_EQ(doc.output_format, "tsv");
    EXPECT_EQ(load_config(examples / "s2-single.json").sphere, gen::s2_single());
    EXPECT_EQ(load_config(examples / "s2-hyperbolic.json").sphere, gen::hyperbolic_only(2, 3));
}

TEST(Config, CanonicalFormMatchesGolden) {
    const ConfigDocument doc = load_config(examples / "s2-pair.json");
    EXPECT_EQ(serialize_config(doc), read_text_file(examples / "golden" / "s2-pair.canonical.json"));
}

TEST(Config, SerializeParseRoundTrip) {
    gen::Rng rng(91);
    for (int trial = 0; trial < 200; ++trial) {
        gen::RecordShape shape;
        shape.bumpy = rng.coin();
        shape.decimals = true;
        ConfigDocument doc;
        doc.sphere = gen::random_configuration(rng, rng.uniform(2, 6), 4, shape);
        if (rng.coin()) doc.sphere.curvature = CurvatureAssumption{Rational(rng.uniform(1, 9), 9), Rational(rng.uniform(1, 5))};
        if (doc.sphere.curvature) {
            // the filter rejects small indices; drop the assumption rather than the record
            try {
                validate_configuration(doc.sphere);
            } catch (const ValidationError&) {
                doc.sphere.curvature.reset();
            }
        }
        doc.output_format = rng.coin() ? "tsv" : "json";
        const std::string text = serialize_config(doc);
        const ConfigDocument back = parse_config(text);
        ASSERT_EQ(back, doc) << text;
        EXPECT_EQ(serialize_config(back), text);
    }
}

TEST(Config, UnknownKeyCarriesLineAndPointer) {
    const std::string text = "{\n  \"version\": 1,\n  \"n\": 2,\n  \"geodesics\": [],\n  \"colour\": 1\n}\n";
    const std::string what = expect_error_text(text);
    EXPECT_NE(what.find("line 5"), std::string::npos) << what;
    EXPECT_NE(what.find("/colour"), std::string::npos) << what;

    const std::string nested =
        "{\n  \"version\": 1,\n  \"n\": 2,\n  \"geodesics\": [\n    {\n      \"label\": \"A\",\n"
        "      \"initial_index\": 1,\n      \"descriptor\": {\"thetas\": [\"3/5\"], \"gamma\": 0}\n    }\n  ]\n}\n";
    const std::string w2 = expect_error_text(nested);
    EXPECT_NE(w2.find("line 8"), std::string::npos) << w2;
    EXPECT_NE(w2.find("/geodesics/0/descriptor/gamma"), std::string::npos) << w2;
}

TEST(Config, RejectsInvariantViolations) {
    auto with_geodesic = [](const std::string& g, const std::string& extra = "") {
        return "{\"version\": 1, \"n\": 2" + extra + ", \"geodesics\": [" + g + "]}";
    };
    EXPECT_NE(expect_error_text(with_geodesic(R"({"label":"A","initial_index":1,"descriptor":{"thetas":["1/2"]}})"))
                  .find("1/2"),
              std::string::npos);
    EXPECT_NE(expect_error_text(
                  with_geodesic(R"({"label":"A","initial_index":1,"initial_nullity":2,"descriptor":{"p_zero":1}})"))
                  .find("bumpy"),
              std::string::npos);
    EXPECT_NO_THROW(parse_config(
        with_geodesic(R"({"label":"A","initial_index":1,"initial_nullity":2,"descriptor":{"p_zero":1}})", ", \"bumpy\": false")));
    EXPECT_NE(expect_error_text(with_geodesic(R"({"label":"A","initial_index":2,"descriptor":{"thetas":["3/5"]}})"))
                  .find("parity"),
              std::string::npos);
    EXPECT_NE(expect_error_text(with_geodesic(R"({"label":"A","initial_index":1,"descriptor":{"thetas":["3/5","1/3"]}})"))
                  .find("dimension"),
              std::string::npos);
    expect_error_text(R"({"version": 2, "n": 2, "geodesics": []})");
    expect_error_text(R"({"version": 1, "n": "two", "geodesics": []})");
    expect_error_text(R"({"version": 1, "n": 2, "geodesics": [], "output": {"format": "xml"}})");
    expect_error_text("{\"version\": 1,");
    expect_error_text(with_geodesic(
        R"({"label":"A","initial_index":1,"descriptor":{"thetas":[{"decimal":"0.6","err":"1e-13","irrational":true}]}})"));
}

TEST(Config, CurvatureFilter) {
    const std::string base = R"({"version": 1, "n": 3, "curvature_assumption": {"pinch": "9/16", "reversibility": "1"},
        "geodesics": [{"label": "H", "initial_index": INDEX, "descriptor": {"hyperbolic_dim": 4}}]})";
    auto with_index = [&](const std::string& i) {
        std::string t = base;
        t.replace(t.find("INDEX"), 5, i);
        return t;
    };
    EXPECT_NO_THROW(parse_config(with_index("3")));
    EXPECT_NE(expect_error_text(with_index("1")).find("/geodesics/0"), std::string::npos);
    // i = 2 = n-1 passes the index bound but the mean index 2 is not above n-1
    expect_error_text(with_index("2"));
}

TEST(Config, DecimalRotationNumbers) {
    const std::string text = R"({"version": 1, "n": 2, "geodesics": [{"label": "A", "initial_index": 1,
        "descriptor": {"thetas": [{"decimal": "0.618033988749895", "err": "1e-14", "irrational": true}]}}]})";
    const ConfigDocument doc = parse_config(text);
    const auto& rho = doc.sphere.geodesics[0].descriptor.thetas[0];
    EXPECT_FALSE(rho.is_exact());
    EXPECT_TRUE(rho.irrational());
    EXPECT_EQ(parse_config(serialize_config(doc)), doc);
}

TEST(Certificate, RoundTripAndLabels) {
    const SphereConfiguration cfg = gen::s2_pair();
    const JumpCertificate cert = load_certificate(examples / "s2-pair.cert.json", &cfg);
    EXPECT_EQ(cert, (JumpCertificate{30, 5, {25, 10}, {0, 0}, Rational(1, 100), Rational(1, 10)}));
    EXPECT_EQ(parse_certificate(serialize_certificate(cert, cfg), &cfg), cert);
    EXPECT_EQ(serialize_certificate(cert, cfg), read_text_file(examples / "s2-pair.cert.json"));

    SphereConfiguration swapped = cfg;
    std::swap(swapped.geodesics[0], swapped.geodesics[1]);
    EXPECT_THROW(load_certificate(examples / "s2-pair.cert.json", &swapped), InputError);
    EXPECT_THROW(parse_certificate(R"({"version": 1, "N": 1})"), InputError);
}

TEST(LineMap, PointsAtValues) {
    const auto lines = json_line_map("{\n  \"a\": [\n    1,\n    {\"b\": 2}\n  ]\n}");
    EXPECT_EQ(lines.at("/a"), 2);
    EXPECT_EQ(lines.at("/a/0"), 3);
    EXPECT_EQ(lines.at("/a/1/b"), 4);
}
