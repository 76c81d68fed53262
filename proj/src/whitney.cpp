#include "hardy/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hardy {

Rational Rational::from_double(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw Error("eta must be positive");
    std::int64_t den = 1;
    double scaled = x;
    for (int k = 0; k < 30 && scaled != std::floor(scaled); ++k) {
        scaled *= 2.0;
        den *= 2;
    }
    auto num = static_cast<std::int64_t>(std::llround(scaled));
    auto g = std::gcd(num, den);
    return {num / g, den / g};
}

bool whitney_lower_holds(int dim, int side_cells, std::int64_t gap2, Rational eta) {
    using i128 = __int128;
    const i128 s = side_cells;
    return i128(dim) * s * s * i128(eta.den) * eta.den <= i128(eta.num) * eta.num * gap2;
}

bool whitney_upper_holds(int dim, int side_cells, std::int64_t gap2, Rational eta) {
    using i128 = __int128;
    const i128 s = side_cells;
    return i128(eta.num) * eta.num * gap2 <= 16 * i128(dim) * s * s * i128(eta.den) * eta.den;
}

CellMask WhitneyCover::covered() const {
    CellMask out(omega.spec());
    for (const auto& c : cubes)
        for (auto cell : c.cube.cells(omega.spec())) out.set(cell);
    return out;
}

namespace {

struct Descent {
    const CellMask& omega;
    const std::vector<std::int64_t>& gap2;
    Rational eta;
    WhitneyCover& out;

    void visit(const DyadicCube& q) {
        const auto& spec = omega.spec();
        const auto cells = q.cells(spec);
        std::size_t inside = 0;
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (auto c : cells)
            if (omega[c]) {
                ++inside;
                best = std::min(best, gap2[c]);
            }
        if (inside == 0) return;
        const int s = q.side_cells(spec);
        if (inside == cells.size() && whitney_lower_holds(spec.dim(), s, best, eta)) {
            out.cubes.push_back({q, best, std::sqrt(static_cast<double>(best)) * spec.h()});
            return;
        }
        if (s == 1) {
            out.layer.push_back(cells.front());
            return;
        }
        for (const auto& child : q.children(spec.dim())) visit(child);
    }
};

}  // namespace

WhitneyCover whitney_cover(const CellMask& omega, Rational eta) {
    if (omega.full()) throw Error("whitney: omega is the whole grid (complement empty)");
    WhitneyCover cover{omega, eta, {}, {}};
    if (omega.empty()) return cover;
    const auto gap2 = complement_gap_squared(omega);
    Descent d{omega, gap2, eta, cover};
    d.visit(DyadicCube{0, {0, 0}});
    std::sort(cover.layer.begin(), cover.layer.end());
    return cover;
}

WhitneyCover whitney_decompose(const CellMask& omega, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw Error("whitney: eta must lie in (0,1)");
    if (omega.empty()) throw Error("whitney: omega is empty");
    auto cover = whitney_cover(omega, Rational::from_double(eta));
    if (cover.cubes.empty()) throw Error("resolution too coarse for eta");
    return cover;
}

WhitneyReport verify_cover(const WhitneyCover& cover) {
    const auto& spec = cover.omega.spec();
    WhitneyReport rep;
    rep.cube_count = cover.cubes.size();
    rep.layer_cells = cover.layer.size();

    std::vector<CellIndex> complement;
    for (std::size_t c = 0; c < spec.cell_count(); ++c)
        if (!cover.omega[c]) complement.push_back(spec.coords(c));

    std::vector<int> hits(spec.cell_count(), 0);
    for (const auto& wc : cover.cubes) {
        const auto cells = wc.cube.cells(spec);
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (auto c : cells) {
            ++hits[c];
            const CellIndex ci = spec.coords(c);
            for (const auto& o : complement) best = std::min(best, cell_gap_squared(ci, o));
        }
        const int s = wc.cube.side_cells(spec);
        rep.lower_ok = rep.lower_ok && whitney_lower_holds(spec.dim(), s, best, cover.eta);
        rep.upper_ok = rep.upper_ok && whitney_upper_holds(spec.dim(), s, best, cover.eta);
        rep.max_upper_ratio = std::max(
            rep.max_upper_ratio, cover.eta.value() * std::sqrt(double(best)) / (std::sqrt(double(spec.dim())) * s));
    }
    for (auto c : cover.layer) ++hits[c];
    for (std::size_t c = 0; c < spec.cell_count(); ++c)
        if (hits[c] != (cover.omega[c] ? 1 : 0)) rep.partition_ok = false;
    return rep;
}

ExpandedBalls expanded_balls(const WhitneyCover& cover, double factor) {
    if (!(factor >= 1.0)) throw Error("expansion factor must be >= 1");
    const auto& spec = cover.omega.spec();
    ExpandedBalls out;
    for (std::size_t i = 0; i < cover.cubes.size(); ++i) {
        const auto& q = cover.cubes[i].cube;
        Ball b{q.center(spec), factor * q.diam(spec) / 2.0};
        for (auto c : cells_in_ball(spec, b))
            if (!cover.omega[c]) {
                out.escaping.push_back(i);
                break;
            }
        out.balls.push_back(b);
    }
    return out;
}

int overlap_count(const GridSpec& spec, std::span<const Ball> balls) {
    std::vector<int> count(spec.cell_count(), 0);
    for (const auto& b : balls)
        for (auto c : cells_in_ball(spec, b)) ++count[c];
    return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

nlohmann::json to_json(const WhitneyCover& cover) {
    nlohmann::json cubes = nlohmann::json::array();
    const auto& spec = cover.omega.spec();
    for (const auto& c : cover.cubes) {
        nlohmann::json idx = spec.dim() == 1 ? nlohmann::json::array({c.cube.index[0]})
                                             : nlohmann::json::array({c.cube.index[0], c.cube.index[1]});
        cubes.push_back({{"level", c.cube.level}, {"index", idx}, {"dist_to_complement", c.dist}});
    }
    return {{"eta", {cover.eta.num, cover.eta.den}}, {"cubes", cubes}, {"layer", cover.layer}};
}

}  // namespace hardy
