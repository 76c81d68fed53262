#include "hardy/norms.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace hardy {

double size_ratio(const SparseFunction& a, const GridSpec& spec, const Ball& B, double q) {
    const double vol = measured_volume(spec, B);
    if (vol == 0.0) return kInfinity;
    if (std::isinf(q)) return a.max_abs() * vol;
    double s = 0.0;
    for (double v : a.values) s += std::pow(std::abs(v), q);
    return std::pow(s * spec.cell_volume() / vol, 1.0 / q) * vol;
}

AtomCertificate atom_validate(const SparseFunction& a, const GridSpec& spec, const Ball& B, double q) {
    if (!(q > 1.0)) throw Error("atom_validate: q must exceed 1");
    AtomCertificate cert;
    cert.q = q;
    cert.ball = B;
    cert.support_ok = true;
    double l1 = 0.0;
    for (std::size_t j = 0; j < a.cells.size(); ++j) {
        if (a.values[j] == 0.0) continue;
        if (!B.contains(spec.center(a.cells[j]))) cert.support_ok = false;
        l1 += std::abs(a.values[j]);
    }
    cert.mean_abs = std::abs(a.sum()) * spec.cell_volume();
    l1 *= spec.cell_volume();
    cert.mean_rel = l1 > 0.0 ? cert.mean_abs / l1 : 0.0;
    cert.size_ratio = size_ratio(a, spec, B, q);
    cert.valid = cert.support_ok && cert.mean_rel <= kMeanTol && cert.size_ratio <= 1.0 + kSizeTol;
    return cert;
}

AtomCertificate atom_validate(const GridFunction& a, const Ball& B, double q) {
    return atom_validate(SparseFunction::from_grid(a), a.spec(), B, q);
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> AtomDictionary::cells() const {
    std::set<std::size_t> s;
    for (const auto& g : generators) s.insert(g.values.cells.begin(), g.values.cells.end());
    return {s.begin(), s.end()};
}

nlohmann::json AtomDictionary::to_json() const {
    nlohmann::json gens = nlohmann::json::array();
    for (std::size_t j = 0; j < generators.size(); ++j) {
        const auto& g = generators[j];
        gens.push_back({{"id", j}, {"ball", g.ball}, {"shape", g.shape}});
    }
    return {{"q", std::isinf(q) ? nlohmann::json("inf") : nlohmann::json(q)},
            {"root", {{"level", root.level}, {"index", {root.index[0], root.index[1]}}}},
            {"max_level", max_level},
            {"ball_count", balls.size()},
            {"generators", gens}};
}

DyadicCube root_cube(const GridFunction& f) {
    const auto& spec = f.spec();
    const auto supp = f.support();
    if (supp.empty()) return DyadicCube{};
    CellIndex lo = spec.coords(supp.front()), hi = lo;
    for (auto c : supp) {
        const auto ci = spec.coords(c);
        for (int a = 0; a < 2; ++a) {
            lo[a] = std::min(lo[a], ci[a]);
            hi[a] = std::max(hi[a], ci[a]);
        }
    }
    for (int level = spec.max_level(); level >= 0; --level) {
        const int side = spec.cells_per_side() >> level;
        bool same = true;
        for (int a = 0; a < spec.dim(); ++a) same = same && lo[a] / side == hi[a] / side;
        if (same) return DyadicCube{level, {lo[0] / side, spec.dim() == 2 ? lo[1] / side : 0}};
    }
    return DyadicCube{};
}

namespace {

void normalize_generator(SparseFunction& g, const GridSpec& spec, const Ball& B, double q) {
    const double r = size_ratio(g, spec, B, q);
    for (double& v : g.values) v /= r;
}

std::vector<std::pair<std::string, SparseFunction>> haar_shapes(const DyadicCube& q, const GridSpec& spec) {
    std::vector<std::pair<std::string, SparseFunction>> out;
    const int s = q.side_cells(spec);
    if (s < 2) return out;
    const CellIndex first = q.first_cell(spec);
    const int half = s / 2;
    if (spec.dim() == 1) {
        SparseFunction g;
        for (int i = 0; i < s; ++i) {
            g.cells.push_back(static_cast<std::uint32_t>(first[0] + i));
            g.values.push_back(i < half ? 1.0 : -1.0);
        }
        out.emplace_back("haar-x", std::move(g));
        return out;
    }
    SparseFunction gx, gy, gc;
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < s; ++i) {
            const auto c = static_cast<std::uint32_t>(spec.flat({first[0] + i, first[1] + j}));
            const double sx = i < half ? 1.0 : -1.0, sy = j < half ? 1.0 : -1.0;
            for (auto* g : {&gx, &gy, &gc}) g->cells.push_back(c);
            gx.values.push_back(sx);
            gy.values.push_back(sy);
            gc.values.push_back(sx * sy);
        }
    out.emplace_back("haar-x", std::move(gx));
    out.emplace_back("haar-y", std::move(gy));
    out.emplace_back("checker", std::move(gc));
    return out;
}

bool descends_from(const DyadicCube& q, const DyadicCube& root) {
    if (q.level < root.level) return false;
    const int shift = q.level - root.level;
    return (q.index[0] >> shift) == root.index[0] && (q.index[1] >> shift) == root.index[1];
}

}  // namespace

AtomDictionary build_dictionary(const GridSpec& spec, const DictionaryOptions& opts) {
    if (!(opts.q > 1.0)) throw Error("dictionary: q must exceed 1");
    AtomDictionary d;
    d.spec = spec;
    d.q = opts.q;
    d.root = opts.root.value_or(DyadicCube{});
    d.max_level = opts.max_level < 0 ? spec.max_level() : std::min(opts.max_level, spec.max_level());
    if (d.root.level > d.max_level) throw Error("dictionary: root finer than max_level");

    std::set<std::pair<std::vector<std::uint32_t>, std::vector<double>>> seen;
    auto add = [&](std::size_t ball, std::string shape, SparseFunction g) {
        normalize_generator(g, spec, d.balls[ball], d.q);
        if (!seen.emplace(g.cells, g.values).second) return;
        d.generators.push_back({ball, std::move(shape), std::move(g)});
    };

    for (int level = d.root.level; level <= d.max_level; ++level) {
        for (const auto& q : dyadic_cubes(spec, level)) {
            if (!descends_from(q, d.root)) continue;
            const Ball B = q.circumscribed_ball(spec);
            const auto ball_cells = cells_in_ball(spec, B);
            d.balls.push_back(B);
            d.cubes.push_back(q);
            const std::size_t bi = d.balls.size() - 1;
            for (auto& [shape, g] : haar_shapes(q, spec)) add(bi, shape, std::move(g));

            const bool small = static_cast<int>(ball_cells.size()) <= opts.pair_cells_cap || level == d.max_level;
            if (!small || ball_cells.size() < 2) continue;
            std::set<std::size_t> in(ball_cells.begin(), ball_cells.end());
            for (auto c : ball_cells) {
                const auto ci = spec.coords(c);
                for (int a = 0; a < spec.dim(); ++a) {
                    CellIndex nb = ci;
                    ++nb[a];
                    if (!spec.contains(nb) || !in.count(spec.flat(nb))) continue;
                    SparseFunction g;
                    g.cells = {static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(spec.flat(nb))};
                    g.values = {1.0, -1.0};
                    add(bi, "pair", std::move(g));
                }
            }
        }
    }
    return d;
}

std::size_t dictionary_rank(const AtomDictionary& dict) {
    const auto cells = dict.cells();
    std::map<std::size_t, Eigen::Index> row;
    for (std::size_t r = 0; r < cells.size(); ++r) row[cells[r]] = static_cast<Eigen::Index>(r);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cells.size()),
                                              static_cast<Eigen::Index>(dict.generators.size()));
    for (std::size_t j = 0; j < dict.generators.size(); ++j) {
        const auto& g = dict.generators[j].values;
        for (std::size_t k = 0; k < g.cells.size(); ++k) M(row[g.cells[k]], static_cast<Eigen::Index>(j)) = g.values[k];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    lu.setThreshold(1e-10);
    return static_cast<std::size_t>(lu.rank());
}

// ---------------------------------------------------------------------------

double h1_proxy_norm(const GridFunction& f, const TestFamily& family) {
    if (f.is_zero()) return 0.0;
    return l1_norm(grand_maximal(f, family));
}

std::vector<Ball> dyadic_balls(const GridSpec& spec) {
    std::vector<Ball> out;
    for (int level = 0; level <= spec.max_level(); ++level)
        for (const auto& q : dyadic_cubes(spec, level)) out.push_back(q.circumscribed_ball(spec));
    return out;
}

double bmo_norm(const GridFunction& g, const std::vector<Ball>& balls) {
    if (balls.empty()) throw Error("bmo_norm: empty ball family");
    double best = 0.0;
    for (const auto& B : balls) {
        const auto cells = cells_in_ball(g.spec(), B);
        if (cells.empty()) throw Error("bmo_norm: ball contains no cell center");
        double mean = 0.0;
        for (auto c : cells) mean += g[c];
        mean /= static_cast<double>(cells.size());
        double osc = 0.0;
        for (auto c : cells) osc += std::abs(g[c] - mean);
        best = std::max(best, osc / static_cast<double>(cells.size()));
    }
    return best;
}

double bmo_norm(const GridFunction& g) { return bmo_norm(g, dyadic_balls(g.spec())); }

// ---------------------------------------------------------------------------

nlohmann::json LpNormResult::to_json() const {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& [id, c] : witness) w.push_back({{"generator", id}, {"coefficient", c}});
    return {{"value", value},         {"label", label},
            {"dual_value", dual_value}, {"max_dual_violation", max_dual_violation},
            {"iterations", iterations}, {"witness", w}};
}

LpNormResult finite_atomic_norm_lp(const GridFunction& f, const AtomDictionary& dict, const LpOptions& opts) {
    if (!(f.spec() == dict.spec)) throw Error("lp: grid mismatch between f and dictionary");
    LpNormResult res;
    if (f.is_zero()) return res;
    const double l1 = l1_norm(f);
    if (std::abs(integrate(f)) > kMeanTol * l1) throw Error("lp: f must have integral zero");

    res.rows = dict.cells();
    std::vector<std::int64_t> row_of(f.size(), -1);
    for (std::size_t r = 0; r < res.rows.size(); ++r) row_of[res.rows[r]] = static_cast<std::int64_t>(r);
    for (auto c : f.support())
        if (row_of[c] < 0) throw Error("f not in dictionary span");

    // The last row is implied by the others: every column and f have zero sum.
    const std::size_t m = res.rows.empty() ? 0 : res.rows.size() - 1;
    const std::size_t G = dict.generators.size();
    std::vector<double> A(m * 2 * G, 0.0), b(m), c(2 * G, 1.0);
    for (std::size_t j = 0; j < G; ++j) {
        const auto& g = dict.generators[j].values;
        for (std::size_t k = 0; k < g.cells.size(); ++k) {
            const auto r = static_cast<std::size_t>(row_of[g.cells[k]]);
            if (r >= m) continue;
            A[r * 2 * G + j] = g.values[k];
            A[r * 2 * G + G + j] = -g.values[k];
        }
    }
    for (std::size_t r = 0; r < m; ++r) b[r] = f[res.rows[r]];

    const auto lp = solve_standard_lp(A, m, 2 * G, b, c, opts);
    res.iterations = lp.iterations;
    if (lp.status == LpStatus::Infeasible) throw Error("f not in dictionary span");
    if (lp.status == LpStatus::IterationLimit)
        throw Error("simplex iteration cap reached; best bound " + std::to_string(lp.objective));
    if (lp.status != LpStatus::Optimal) throw Error(std::string("lp: ") + to_string(lp.status));

    res.value = lp.objective;
    for (std::size_t j = 0; j < G; ++j) {
        const double v = lp.x[j] - lp.x[G + j];
        if (v != 0.0) res.witness.emplace_back(j, v);
    }
    res.dual.assign(res.rows.size(), 0.0);
    for (std::size_t r = 0; r < m; ++r) res.dual[r] = lp.dual[r];
    for (std::size_t r = 0; r < res.rows.size(); ++r) res.dual_value += res.dual[r] * f[res.rows[r]];
    for (std::size_t j = 0; j < G; ++j) {
        const auto& g = dict.generators[j].values;
        double s = 0.0;
        for (std::size_t k = 0; k < g.cells.size(); ++k) s += g.values[k] * res.dual[row_of[g.cells[k]]];
        res.max_dual_violation = std::max(res.max_dual_violation, std::abs(s) - 1.0);
    }
    return res;
}

double decomposition_cost(const AtomicDecomposition& d) { return d.cost(); }

}  // namespace hardy
