#include <gtest/gtest.h>

#include <string>

#include "corrgeom/errors.hpp"
#include "corrgeom/io.hpp"
#include "test_util.hpp"

using namespace corrgeom;

TEST(Io, StateRoundTrip) {
    Rng rng(131);
    const BipartiteState s = testutil::random_state(2, 3, rng);
    const BipartiteState back = io::state_from_text(io::state_to_json(s).dump());
    EXPECT_EQ(back.d1(), 2);
    EXPECT_EQ(back.d2(), 3);
    EXPECT_LT((back.rho() - s.rho()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Io, ParseErrorsReportLine) {
    try {
        io::state_from_text("{\n\"d1\": 2,\n\"d2\": ]\n}");
        FAIL() << "expected InputError";
    } catch (const InputError &e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(Io, SchemaViolations) {
    io::json j = io::state_to_json(product_state(2, 2));
    io::json missing = j;
    missing.erase("rho_im");
    EXPECT_THROW(io::state_from_json(missing), InputError);
    io::json extra = j;
    extra["note"] = "x";
    EXPECT_THROW(io::state_from_json(extra), InputError);
    io::json ragged = j;
    ragged["rho_re"][1] = io::json::array({0.0, 0.0});
    EXPECT_THROW(io::state_from_json(ragged), InputError);
    io::json bad_dim = j;
    bad_dim["d1"] = 1;
    EXPECT_THROW(io::state_from_json(bad_dim), InputError);
    io::json unphysical = j;
    unphysical["rho_re"][0][0] = 2.0;
    EXPECT_THROW(io::state_from_json(unphysical), InputError);
}

TEST(Io, SpectrumJson) {
    const io::json j = io::spectrum_to_json(spectrum_full(3));
    EXPECT_EQ(j.at("d"), 3);
    EXPECT_EQ(j.at("eigenvalues").size(), 3u);
    EXPECT_NEAR(j.at("eigenvalues")[0].at("re").get<double>(), std::sqrt(1.5), 1e-3);
    EXPECT_EQ(j.at("match_order"), 4);
    EXPECT_TRUE(io::spectrum_to_json(spectrum_full(2)).at("match_order").is_null());
    EXPECT_EQ(j.dump().find("-0.0"), std::string::npos);
}
