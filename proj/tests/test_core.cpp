#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "thincirc/bitwords.hpp"
#include "thincirc/circulant.hpp"
#include "thincirc/json_io.hpp"
#include "thincirc/linalg.hpp"
#include "thincirc/point_set.hpp"
#include "thincirc/rational.hpp"
#include "thincirc/rng.hpp"
#include "thincirc/support_set.hpp"
#include "thincirc/util.hpp"

using namespace thincirc;

TEST_CASE("saturating pow and binomial") {
    CHECK(saturating_pow_u64(2, 10) == 1024);
    CHECK(saturating_pow_u64(10, 0) == 1);
    CHECK(saturating_pow_u64(0, 3) == 0);
    CHECK(saturating_pow_u64(3, 50) == kSaturated);  // 3^50 > 2^64
    CHECK(binomial_u64(16, 0) == 1);
    CHECK(binomial_u64(16, 1) == 16);
    CHECK(binomial_u64(16, 2) == 120);
    CHECK(binomial_u64(5, 6) == 0);
    CHECK(binomial_u64(52, 5) == 2598960);
    CHECK(binomial_u64(200, 100) == kSaturated);
    CHECK(ceil_log2_u64(1) == 0);
    CHECK(ceil_log2_u64(2) == 1);
    CHECK(ceil_log2_u64(5) == 3);
    CHECK(ceil_log2_u64(16) == 4);
    CHECK(ceil_log2_u64(17) == 5);
}

TEST_CASE("rational arithmetic normalizes and compares exactly") {
    Rational a(2, 4), b(1, 2);
    CHECK(a == b);
    CHECK(a.num == 1);
    CHECK(a.den == 2);
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(3, 4) - Rational(1, 4)) == Rational(1, 2));
    CHECK((Rational(2, 3) * Rational(3, 4)) == Rational(1, 2));
    CHECK((Rational(1, 2) / Rational(3, 2)) == Rational(1, 3));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(1, -2).num == -1);
    CHECK(Rational(5, 6) < Rational(6, 7));
    CHECK(Rational(-3, 2) < Rational(1, 7));
    CHECK(Rational(7).is_integer());
    CHECK_FALSE(Rational(7, 2).is_integer());
    CHECK(Rational(5, 6).str() == "5/6");
    CHECK(Rational(-4, 2).str() == "-2");
    CHECK(Rational(9, 68).to_double() == Catch::Approx(0.1323529411764706));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("counter rng is a pure function of key and index") {
    CHECK(splitmix_at(42, 0) == splitmix_at(42, 0));
    CHECK(splitmix_at(42, 0) != splitmix_at(42, 1));
    CHECK(splitmix_at(42, 0) != splitmix_at(43, 0));
    CHECK(derive_key(7, 0) != derive_key(7, 1));
    CHECK(derive_key(7, 0) != splitmix_at(7, 0));  // streams must not collide with draws

    for (std::uint64_t i = 0; i < 1000; ++i) {
        double u = uniform_at(99, i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }

    CounterRng r1(5), r2(5);
    for (int i = 0; i < 100; ++i) CHECK(r1.next_u64() == r2.next_u64());
    CounterRng r3(5);
    std::uint64_t below = r3.next_below(10);
    CHECK(below < 10);
}

TEST_CASE("bitwords shift and rotate match a direct set computation") {
    CounterRng rng(123);
    for (int rep = 0; rep < 50; ++rep) {
        std::uint64_t n = 2 + rng.next_below(200);
        std::set<std::uint64_t> s;
        for (std::uint64_t i = 0; i < n; ++i)
            if (rng.next_bernoulli(0.4)) s.insert(i);
        std::uint64_t d = 1 + rng.next_below(n - 1);

        BitWords base = BitWords::from_members(s, n);
        CHECK(base.count() == s.size());
        for (std::uint64_t i = 0; i < n; ++i) CHECK(base.test(i) == (s.count(i) > 0));

        // integer shift: t = s AND (s - d) over [0, n)
        BitWords t = base;
        t.and_shift_down(base, d);
        std::vector<std::uint64_t> expect;
        for (std::uint64_t i : s)
            if (i + d < n && s.count(i + d)) expect.push_back(i);
        CHECK(t.members() == expect);

        // cyclic shift: t = s AND (s - d mod n)
        BitWords c = base;
        c.and_rotate_down(base, d);
        expect.clear();
        for (std::uint64_t i : s)
            if (s.count((i + d) % n)) expect.push_back(i);
        CHECK(c.members() == expect);
    }

    BitWords b = BitWords::from_members(std::vector<std::uint64_t>{1, 5, 9}, 12);
    CHECK(b.members(2) == std::vector<std::uint64_t>{1, 5});
}

TEST_CASE("support set validates and sorts its members") {
    SupportSet s(10, {7, 2, 5});
    CHECK(s.capacity() == 10);
    CHECK(s.size() == 3);
    CHECK(s.members() == std::vector<std::uint64_t>{2, 5, 7});
    CHECK(s.contains(5));
    CHECK_FALSE(s.contains(3));
    CHECK_THROWS_AS(SupportSet(10, {2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(SupportSet(10, {10}), std::invalid_argument);
    CHECK_THROWS_AS(SupportSet(0, {}), std::invalid_argument);
    SupportSet empty(4, {});
    CHECK(empty.size() == 0);
}

TEST_CASE("circulant rows are rotations of the first row") {
    SupportSet s(7, {0, 2, 3});
    CirculantMatrix plus = make_circulant(s, Orientation::plus);
    CirculantMatrix minus = make_circulant(s, Orientation::minus);
    for (std::uint64_t i = 0; i < 7; ++i)
        for (std::uint64_t j = 0; j < 7; ++j) {
            CHECK(plus.entry(i, j) == s.contains((i + j) % 7));
            CHECK(minus.entry(i, j) == s.contains((i + 7 - j) % 7));
            // every row repeats row 0 at a shifted column
            CHECK(plus.entry(i, j) == plus.entry(0, (i + j) % 7));
        }
    CHECK_THROWS_AS(plus.entry(7, 0), std::invalid_argument);

    WeightReport w = weight(plus);
    CHECK(w.row_weight == 3);
    CHECK(w.weight == 21);
}

TEST_CASE("doubling the order exposes plain integer sums in the top-left block") {
    SupportSet s(9, {1, 3, 8});
    CirculantMatrix big = embed_double(s);
    CHECK(big.n() == 18);
    CHECK(big.orientation() == Orientation::plus);
    CHECK(big.row().members() == s.members());
    for (std::uint64_t i = 0; i < 9; ++i)
        for (std::uint64_t j = 0; j < 9; ++j)
            CHECK(big.entry(i, j) == s.contains(i + j));  // i + j < 18: no wrap
}

TEST_CASE("matrix json round trip with and without the hex field") {
    SupportSet s(11, {0, 4, 9, 10});
    CirculantMatrix m = make_circulant(s, Orientation::minus);
    auto j = matrix_to_json(m, true);
    CHECK(j["n"] == 11);
    CHECK(j["orientation"] == "minus");
    CHECK(j["support_hex"].get<std::string>() == "1106");  // bytes 0x11, 0x06

    CirculantMatrix back = matrix_from_json(j);
    CHECK(back.n() == 11);
    CHECK(back.orientation() == Orientation::minus);
    CHECK(back.row().members() == s.members());

    auto bare = matrix_to_json(m, false);
    CHECK_FALSE(bare.contains("support_hex"));
    CHECK(matrix_from_json(bare).row().members() == s.members());

    // hex alone reconstructs the support
    nlohmann::json hex_only{{"n", 11}, {"orientation", "plus"}, {"support_hex", "1106"}};
    CHECK(matrix_from_json(hex_only).row().members() == s.members());

    // disagreement and stray bits are rejected
    nlohmann::json bad = j;
    bad["support"] = {0, 4};
    CHECK_THROWS_AS(matrix_from_json(bad), std::invalid_argument);
    nlohmann::json stray{{"n", 11}, {"orientation", "plus"}, {"support_hex", "1186"}};
    CHECK_THROWS_AS(matrix_from_json(stray), std::invalid_argument);  // bit 15 >= n
    nlohmann::json short_hex{{"n", 11}, {"orientation", "plus"}, {"support_hex", "11"}};
    CHECK_THROWS_AS(matrix_from_json(short_hex), std::invalid_argument);
    nlohmann::json bad_orient{{"n", 4}, {"orientation", "sideways"}, {"support", {0}}};
    CHECK_THROWS_AS(matrix_from_json(bad_orient), std::invalid_argument);
}

TEST_CASE("witness json round trip") {
    Witness w{{0, 3, 5}, {1, 2}, SumMode::cyclic};
    Witness back = witness_from_json(witness_to_json(w));
    CHECK(back.rows == w.rows);
    CHECK(back.cols == w.cols);
    CHECK(back.mode == w.mode);
    CHECK_THROWS_AS(witness_from_json(nlohmann::json{{"rows", {0}}}), std::invalid_argument);
}

TEST_CASE("point sets deduplicate and sum pointwise") {
    PointSet a(2, {{0, 0}, {1, 0}, {0, 0}});
    CHECK(a.size() == 2);
    PointSet b(2, {{0, 0}, {0, 1}});
    PointSet sum = minkowski_sum(a, b);
    CHECK(sum.size() == 4);
    CHECK(affine_dim(sum) == 2);

    PointSet line(2, {{0, 0}, {1, 1}, {2, 2}});
    CHECK(affine_dim(line) == 1);
    PointSet single(3, {{5, 5, 5}});
    CHECK(affine_dim(single) == 0);
    CHECK_THROWS_AS(PointSet(2, {{0}}), std::invalid_argument);
}

TEST_CASE("exact rank and homogeneous solving") {
    // x + y = 0, y + z = 0 -> rank 2, one free variable
    std::vector<std::vector<Rational>> rows{{Rational(1), Rational(1), Rational(0)},
                                            {Rational(0), Rational(1), Rational(1)}};
    CHECK(rational_rank(rows, 3) == 2);
    LinearBasis basis = solve_homogeneous(rows, 3);
    REQUIRE(basis.free_cols.size() == 1);
    CHECK(basis.free_cols[0] == 2);
    // x = z, y = -z
    CHECK(basis.expr[0][0] == Rational(1));
    CHECK(basis.expr[1][0] == Rational(-1));
    CHECK(basis.expr[2][0] == Rational(1));

    // reversed preference picks a different free column, same rank
    LinearBasis rev = solve_homogeneous(rows, 3, {2, 1, 0});
    CHECK(rev.free_cols.size() == 1);
    CHECK(rev.free_cols[0] == 0);

    CHECK(integer_rank({{1, 2}, {2, 4}}) == 1);
    CHECK(integer_rank({{1, 0}, {0, 1}}) == 2);
    CHECK(integer_rank({}) == 0);
}
