#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include <json.hpp>

#include "thincirc/experiment.hpp"
#include "thincirc/rational.hpp"

using namespace thincirc;
using nlohmann::json;
using Catch::Matchers::WithinRel;

TEST_CASE("sweep spec parsing") {
    json j = json::parse(R"({"n_values":[64,32],"scales":[0,1,2.5],"k":2,"l":3,
                             "samples":7,"seed":99,"budget":1234})");
    SweepSpec spec = sweep_spec_from_json(j);
    CHECK(spec.n_values == std::vector<std::uint64_t>{64, 32});
    CHECK(spec.scales == std::vector<double>{0.0, 1.0, 2.5});
    CHECK(spec.k == 2);
    CHECK(spec.l == 3);
    CHECK(spec.samples == 7);
    CHECK(spec.seed == 99);
    CHECK(spec.search.budget == 1234);

    CHECK_THROWS_AS(sweep_spec_from_json(json::array()), std::invalid_argument);
    CHECK_THROWS_AS(sweep_spec_from_json(json::parse(R"({"scales":[1]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(sweep_spec_from_json(json::parse(R"({"n_values":[8],"scales":[]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(sweep_spec_from_json(json::parse(R"({"n_values":[8],"scales":[-1]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        sweep_spec_from_json(json::parse(R"({"n_values":[8],"scales":[1],"k":1})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        sweep_spec_from_json(json::parse(R"({"n_values":[8],"scales":[1],"k":3,"l":2})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        sweep_spec_from_json(json::parse(R"({"n_values":[8],"scales":[1],"samples":0})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        sweep_spec_from_json(json::parse(R"({"n_values":[1],"scales":[1]})")),
        std::invalid_argument);
}

TEST_CASE("sweep rows cover (order, scale) cells in order") {
    SweepSpec spec;
    spec.n_values = {64, 16, 64};  // duplicates collapse, values sort
    spec.scales = {0.0, 1e9};      // all-free and all-blocked extremes
    spec.samples = 20;
    spec.seed = 5;
    std::vector<SweepRow> rows = density_sweep(spec);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].N == 16);
    CHECK(rows[1].N == 16);
    CHECK(rows[2].N == 64);
    CHECK(rows[3].N == 64);
    for (std::size_t i = 0; i < rows.size(); i += 2) {
        // scale 0: empty supports, always free, zero weight
        CHECK(rows[i].scale == 0.0);
        CHECK(rows[i].p == 0.0);
        CHECK(rows[i].free_frac == 1.0);
        CHECK(rows[i].mean_gamma == 0.0);
        CHECK(rows[i].mean_trials == 1.0);
        // huge scale: p clamps to 1, the full support always has blocks
        CHECK(rows[i + 1].p == 1.0);
        CHECK(rows[i + 1].free_frac == 0.0);
        CHECK(std::isnan(rows[i + 1].mean_gamma));
        CHECK(std::isinf(rows[i + 1].mean_trials));
        CHECK(rows[i + 1].budget_exhausted == 0);
    }
}

TEST_CASE("sweep is schedule-independent") {
    SweepSpec spec;
    spec.n_values = {24, 48};
    spec.scales = {5.0, 20.0};
    spec.samples = 30;
    spec.seed = 77;
    std::vector<SweepRow> seq = density_sweep(spec, 1);
    std::vector<SweepRow> par = density_sweep(spec, 3);
    CHECK(sweep_table_to_csv(spec, seq) == sweep_table_to_csv(spec, par));
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].free_count == par[i].free_count);
        CHECK(seq[i].budget_exhausted == par[i].budget_exhausted);
    }
}

TEST_CASE("CSV shape: comment, fixed header, nan/inf rendering") {
    SweepSpec spec;
    spec.n_values = {8};
    spec.scales = {0.0, 1e9};
    spec.samples = 3;
    spec.seed = 2;
    std::string csv = sweep_table_to_csv(spec, density_sweep(spec));
    std::istringstream is(csv);
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line.rfind("# params:", 0) == 0);
    REQUIRE(std::getline(is, line));
    CHECK(line == "N,k,l,scale,p,samples,free_frac,mean_gamma,mean_trials,seed");
    REQUIRE(std::getline(is, line));
    CHECK(line == "8,2,2,0,0,3,1,0,1,2");
    REQUIRE(std::getline(is, line));
    CHECK(line == "8,2,2,1e+09,1,3,0,nan,inf,2");
    CHECK_FALSE(std::getline(is, line));
}

TEST_CASE("log-parameter weight-bound report") {
    CorollaryReport r16 = corollary_report(16);
    CHECK(r16.k == 4);
    CHECK(r16.rho == Rational(3, 5));
    CHECK_THAT(r16.weight_bound, WithinRel(2.0 / 64.0 * std::pow(16.0, 1.4), 1e-12));
    CHECK_THAT(r16.weight_bound, WithinRel(1.51571656651, 1e-9));
    CHECK_THAT(r16.ref_log3, WithinRel(4.0, 1e-12));  // 256 / 4^3

    CorollaryReport r64k = corollary_report(65536);
    CHECK(r64k.k == 16);
    CHECK(r64k.rho == Rational(9, 68));
    CHECK_THAT(r64k.weight_bound, WithinRel(483230.81847, 1e-9));

    CorollaryReport r4 = corollary_report(4);
    CHECK(r4.k == 2);
    CHECK(r4.rho == Rational(1));
    CHECK_THAT(r4.weight_bound, WithinRel(1.0, 1e-12));  // 2/8 * 4^1

    CHECK(corollary_report(100).magnitude_note == "asymptotic, constant unspecified");
    CHECK_THROWS_AS(corollary_report(3), std::invalid_argument);

    // the bound re-derives from its own pieces
    for (std::uint64_t N : {16ULL, 1024ULL, 1048576ULL}) {
        CorollaryReport r = corollary_report(N);
        double kk = static_cast<double>(r.k);
        double expect = 2.0 / (kk * kk * kk) *
                        std::pow(static_cast<double>(N), 2.0 - r.rho.to_double());
        CHECK_THAT(r.weight_bound, WithinRel(expect, 1e-12));
    }
}
