#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "corpus.hpp"
#include "hardy/whitney.hpp"

using namespace hardy;

namespace {

CellMask interval_mask(const GridSpec& s, std::size_t lo, std::size_t hi) {
    CellMask m(s);
    for (std::size_t c = lo; c < hi; ++c) m.set(c);
    return m;
}

CellMask refine_mask(const CellMask& m) {
    const GridSpec& s = m.spec();
    const GridSpec r = s.refined();
    CellMask out(r);
    for (std::size_t c = 0; c < r.cell_count(); ++c) {
        const CellIndex i = r.coords(c);
        out.set(c, m[s.flat({i[0] / 2, i[1] / 2})]);
    }
    return out;
}

// every emitted cube rechecked against a full sweep of the complement
void check_cubes_directly(const WhitneyCover& cover) {
    const GridSpec& s = cover.omega.spec();
    for (const auto& w : cover.cubes) {
        std::int64_t gap2 = std::numeric_limits<std::int64_t>::max();
        const auto cells = w.cube.cells(s);
        for (auto c : cells) {
            CHECK(cover.omega[c]);
            for (std::size_t o = 0; o < s.cell_count(); ++o)
                if (!cover.omega[o]) gap2 = std::min(gap2, cell_gap_squared(s.coords(c), s.coords(o)));
        }
        CHECK(w.gap2 == gap2);
        const double dist = std::sqrt(double(gap2)) * s.h();
        const double diam = w.cube.diam(s);
        CHECK(diam <= cover.eta.value() * dist * (1 + 1e-12));
        CHECK(cover.eta.value() * dist <= 4 * diam * (1 + 1e-12));
    }
}

}  // namespace

TEST_SUITE("whitney") {

TEST_CASE("exact proportionality predicates") {
    const Rational eighth{1, 8};
    CHECK(Rational::from_double(0.125).num == 1);
    CHECK(Rational::from_double(0.125).den == 8);
    CHECK(Rational::from_double(0.3).value() == doctest::Approx(0.3).epsilon(1e-9));
    CHECK_THROWS_AS(Rational::from_double(0.0), Error);
    // side 1 cell in 1D: diam 1, needs dist >= 8 and dist <= 32
    CHECK(whitney_lower_holds(1, 1, 64, eighth));
    CHECK_FALSE(whitney_lower_holds(1, 1, 63, eighth));
    CHECK(whitney_upper_holds(1, 1, 1024, eighth));
    CHECK_FALSE(whitney_upper_holds(1, 1, 1025, eighth));
    // 2D doubles the squared diameter
    CHECK(whitney_lower_holds(2, 1, 128, eighth));
    CHECK_FALSE(whitney_lower_holds(2, 1, 127, eighth));
}

TEST_CASE("left half interval with eta one half") {
    const GridSpec s = GridSpec::box(1, 64, 0.0, 1.0);
    const auto omega = interval_mask(s, 0, 32);
    const auto cover = whitney_decompose(omega, 0.5);
    CHECK_FALSE(cover.cubes.empty());
    check_cubes_directly(cover);
    const auto rep = verify_cover(cover);
    CHECK(rep.ok());
    CHECK(rep.max_upper_ratio <= 4.0);
    CHECK(rep.cube_count == cover.cubes.size());
    // partition: cube cells plus layer cells count omega once each
    std::size_t cells = cover.layer.size();
    for (const auto& w : cover.cubes) cells += w.cube.cells(s).size();
    CHECK(cells == omega.count());
    CHECK(cover.covered().count() + cover.layer.size() == omega.count());
}

TEST_CASE("random masks are certified cube by cube") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const GridSpec s = seed % 2 ? GridSpec::box(2, 32, 0.0, 1.0) : GridSpec::box(1, 256, 0.0, 1.0);
        const auto omega = seed < 4 ? testing::random_mask(s, seed) : testing::random_holes_mask(s, seed);
        const auto cover = whitney_cover(omega, Rational{1, 8});
        check_cubes_directly(cover);
        CHECK(verify_cover(cover).ok());
        const auto balls = expanded_balls(cover, 1.0);
        CHECK(balls.escaping.empty());
        CHECK(expanded_balls(cover, 2.0).escaping.empty());
    }
}

TEST_CASE("single cell omega") {
    const GridSpec s = GridSpec::box(1, 16, 0.0, 1.0);
    const auto omega = interval_mask(s, 7, 8);
    // its closure touches the complement, so no cube is ever certified
    CHECK_THROWS_WITH_AS(whitney_decompose(omega, 0.125), doctest::Contains("resolution too coarse"), Error);
    const auto cover = whitney_cover(omega, Rational{1, 8});
    CHECK(cover.cubes.empty());
    CHECK(cover.layer == std::vector<std::size_t>{7});
    CHECK(verify_cover(cover).ok());
}

TEST_CASE("argument checks") {
    const GridSpec s = GridSpec::box(1, 16, 0.0, 1.0);
    const auto omega = interval_mask(s, 0, 8);
    CHECK_THROWS_AS(whitney_decompose(omega, 0.0), Error);
    CHECK_THROWS_AS(whitney_decompose(omega, 1.0), Error);
    CHECK_THROWS_AS(whitney_decompose(CellMask(s), 0.5), Error);
    CHECK_THROWS_AS(whitney_decompose(CellMask(s, true), 0.5), Error);
    const auto cover = whitney_cover(omega, Rational{1, 2});
    CHECK_THROWS_AS(expanded_balls(cover, 0.5), Error);
}

TEST_CASE("refinement keeps the coarse tree") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const GridSpec s = seed % 2 ? GridSpec::box(2, 32, 0.0, 1.0) : GridSpec::box(1, 128, 0.0, 1.0);
        const auto omega = testing::random_holes_mask(s, seed);
        const auto coarse = whitney_cover(omega, Rational{1, 8});
        const auto fine = whitney_cover(refine_mask(omega), Rational{1, 8});
        std::vector<std::uint8_t> in_layer(s.cell_count(), 0);
        for (auto c : coarse.layer) in_layer[c] = 1;
        for (const auto& w : coarse.cubes) {
            const bool found = std::any_of(fine.cubes.begin(), fine.cubes.end(),
                                           [&](const WhitneyCube& v) { return v.cube == w.cube; });
            CHECK(found);
        }
        // new fine cubes only appear where the coarse grid was unresolved
        const GridSpec& r = fine.omega.spec();
        for (const auto& v : fine.cubes) {
            const bool old = std::any_of(coarse.cubes.begin(), coarse.cubes.end(),
                                         [&](const WhitneyCube& w) { return w.cube == v.cube; });
            if (old) continue;
            for (auto c : v.cube.cells(r)) {
                const CellIndex i = r.coords(c);
                CHECK(in_layer[s.flat({i[0] / 2, i[1] / 2})]);
            }
        }
    }
}

TEST_CASE("overlap counts") {
    const GridSpec s = GridSpec::box(1, 64, 0.0, 1.0);
    const std::vector<Ball> disjoint{{{0.2, 0.0}, 0.05}, {{0.6, 0.0}, 0.05}};
    CHECK(overlap_count(s, disjoint) == 1);
    const std::vector<Ball> twice{{{0.5, 0.0}, 0.1}, {{0.5, 0.0}, 0.1}};
    CHECK(overlap_count(s, twice) == 2);
    CHECK(overlap_count(s, std::vector<Ball>{}) == 0);
}

TEST_CASE("cover json lists every cube") {
    const GridSpec s = GridSpec::box(1, 64, 0.0, 1.0);
    const auto cover = whitney_cover(interval_mask(s, 8, 40), Rational{1, 8});
    const auto j = to_json(cover);
    CHECK(j.dump().find("dist") != std::string::npos);
    std::size_t listed = 0;
    for (const auto& [key, value] : j.items())
        if (value.is_array() && key == "cubes") listed = value.size();
    CHECK(listed == cover.cubes.size());
}

}  // TEST_SUITE
