// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "cli.hpp"
#include "corpus.hpp"
#include "hardy/atomic.hpp"
#include "hardy/grid_io.hpp"
#include "hardy/maximal.hpp"
#include "hardy/norms.hpp"
#include "hardy/operators.hpp"
#include "hardy/whitney.hpp"

using namespace hardy;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double spread(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (*lo <= 0.0) return *hi <= 0.0 ? 1.0 : kInfinity;
    return *hi / *lo;
}

const std::vector<int> kResolutions = {512, 1024, 2048};

// One CZ and one finite decomposition per corpus function and resolution.
struct Run {
    std::string name;
    bool continuous = false;
    GridFunction f;
    TestFamily family;
    GridFunction mf;
    DecayReport decay;
    AtomicDecomposition cz;
    AtomicDecomposition finite;
    std::string error;
};

std::map<int, std::vector<Run>>& runs() {
    static std::map<int, std::vector<Run>> cache;
    if (!cache.empty()) return cache;
    for (int cells : kResolutions) {
        for (auto& e : testing::corpus(cells)) {
            Run r;
            r.name = e.name;
            r.continuous = e.continuous;
            r.f = e.f;
            r.family = TestFamily::standard(e.f.spec(), e.f.spec().side_length());
            r.mf = grand_maximal(e.f, r.family);
            try {
                r.decay = decay_certificate(e.f, r.family, &r.mf);
                r.cz = cz_decompose(e.f, r.family, {}, &r.mf);
                r.finite = finite_decomposition(e.f, r.family, {}, &r.mf);
            } catch (const std::exception& ex) {
                r.error = ex.what();
            }
            cache[cells].push_back(std::move(r));
        }
    }
    return cache;
}

// Per-function stability of a measured quantity across the three resolutions.
Verdict stable_per_function(const std::string& what, const std::function<double(const Run&)>& q) {
    Verdict v;
    double worst = 1.0;
    std::string worst_name;
    auto& all = runs();
    for (std::size_t i = 0; i < all[512].size(); ++i) {
        std::vector<double> vals;
        for (int c : kResolutions) vals.push_back(q(all[c][i]));
        const double s = spread(vals);
        if (s > worst) {
            worst = s;
            worst_name = all[512][i].name;
        }
    }
    v.ok = worst <= 2.0;
    v.detail = fmt("%s worst spread x%.3f (%s)", what.c_str(), worst, worst_name.c_str());
    return v;
}

// ---------------------------------------------------------------------------

CellMask refine_mask(const CellMask& m) {
    const GridSpec fine = m.spec().refined();
    CellMask out(fine);
    for (std::size_t c = 0; c < fine.cell_count(); ++c) {
        auto ci = fine.coords(c);
        ci[0] /= 2;
        if (fine.dim() == 2) ci[1] /= 2;
        if (m[m.spec().flat(ci)]) out.set(c);
    }
    return out;
}

Verdict criterion1() {
    Verdict v;
    const Rational eta{1, 8};
    std::size_t covers = 0, cubes = 0, unstable = 0, layer = 0, cells = 0;
    int overlap_max = 0;
    for (int dim : {1, 2}) {
        const GridSpec base = dim == 1 ? GridSpec::box(1, 256, 0.0, 1.0) : GridSpec::box(2, 64, 0.0, 1.0);
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            // 1D: unions of intervals and boxes with holes; 2D: boxes with holes
            CellMask m = dim == 1 && seed < 25 ? testing::random_mask(base, 1000 + seed)
                                               : testing::random_holes_mask(base, 1000 + seed);
            std::vector<int> overlaps;
            for (int r = 0; r < 3; ++r, m = refine_mask(m)) {
                const auto cover = whitney_cover(m, eta);
                const auto rep = verify_cover(cover);
                ++covers;
                cubes += rep.cube_count;
                if (!rep.ok()) v.ok = false;
                overlaps.push_back(overlap_count(m.spec(), expanded_balls(cover, 2.0).balls));
                if (r == 2) {
                    layer += rep.layer_cells;
                    cells += m.count();
                }
            }
            overlap_max = std::max({overlap_max, overlaps[0], overlaps[1], overlaps[2]});
            if (overlaps[0] != overlaps[1] || overlaps[1] != overlaps[2]) ++unstable;
        }
    }
    if (unstable) v.ok = false;
    v.detail = fmt("%zu covers, %zu cubes checked exactly; cubes + boundary layer partition omega; "
                   "factor-2 overlap changes under refinement on %zu/100 sets (max %d); layer %.3f of omega at "
                   "finest",
                   covers, cubes, unstable, overlap_max, double(layer) / double(cells));
    return v;
}

Verdict criterion2() {
    Verdict v;
    double worst = 0.0;
    std::size_t n = 0;
    for (auto& [cells, rs] : runs()) {
        for (auto& r : rs) {
            if (!r.error.empty()) {
                v.ok = false;
                v.detail = r.name + ": " + r.error;
                return v;
            }
            const double l1 = l1_norm(r.f);
            for (const auto* d : {&r.cz, &r.finite}) {
                const double e = l1_norm(r.f - d->reconstruct()) / l1;
                worst = std::max(worst, e);
                ++n;
            }
        }
    }
    v.ok = worst <= 1e-8;
    v.detail = fmt("%zu decompositions, max ||f - sum||_1/||f||_1 = %.2e", n, worst);
    return v;
}

Verdict criterion3() {
    Verdict v;
    std::vector<double> c_level, overlap, c_sum;
    std::size_t violations = 0;
    for (int c : kResolutions) {
        double cl = 0, ov = 0, cs = 0;
        for (auto& r : runs()[c]) {
            cl = std::max(cl, r.cz.constants.c_level);
            ov = std::max(ov, double(r.cz.constants.overlap));
            cs = std::max(cs, r.cz.constants.c_sum);
            violations += balls_outside_level_sets(r.cz, r.mf).size();
        }
        c_level.push_back(cl);
        overlap.push_back(ov);
        c_sum.push_back(cs);
    }
    const auto a = stable_per_function("(a)", [](const Run& r) { return r.cz.constants.c_level; });
    const auto cc = stable_per_function("(c)", [](const Run& r) { return r.cz.constants.c_sum; });
    v.ok = spread(c_level) <= 2 && spread(overlap) <= 2 && spread(c_sum) <= 2 && a.ok && cc.ok && violations == 0;
    v.detail = fmt("corpus constants (a) %.0f/%.0f/%.0f overlap %.0f/%.0f/%.0f (c) %.1f/%.1f/%.1f; "
                   "per function: %s, %s; supp/ball/level-set violations %zu",
                   c_level[0], c_level[1], c_level[2], overlap[0], overlap[1], overlap[2], c_sum[0], c_sum[1],
                   c_sum[2], a.detail.c_str(), cc.detail.c_str(), violations);
    return v;
}

Verdict criterion4() {
    Verdict v;
    double worst = 0.0;
    std::size_t checked = 0;
    for (auto& [cells, rs] : runs())
        for (auto& r : rs) {
            worst = std::max(worst, r.decay.max_ratio);
            checked += r.decay.cells_checked;
            if (!r.decay.passed) v.ok = false;
        }
    v.ok = v.ok && worst <= 1.0;
    v.detail = fmt("%zu outside cells, max Mf/(R^-n ||f||_1) = %.4f", checked, worst);
    return v;
}

Verdict criterion5() {
    Verdict v;
    std::size_t leaks = 0, bad = 0;
    std::map<std::string, std::vector<double>> c_h;
    for (auto& [cells, rs] : runs())
        for (auto& r : rs) {
            try {
                const auto s = split_h_ell(r.cz);
                leaks += s.leaking.size();
                if (!s.atom_ok) ++bad;
                c_h[r.name].push_back(s.c_h);
            } catch (const Error&) {
                ++leaks;
            }
        }
    const auto st = stable_per_function("C_h", [](const Run& r) { return split_h_ell(r.cz).c_h; });
    v.ok = leaks == 0 && bad == 0 && st.ok;
    v.detail = fmt("leaking cells %zu, non-atoms %zu, %s", leaks, bad, st.detail.c_str());
    return v;
}

Verdict criterion6() {
    Verdict v;
    std::size_t nonzero = 0;
    std::map<int, std::vector<double>> ratio;
    for (auto& [cells, rs] : runs())
        for (auto& r : rs) {
            const auto rep = pointwise_domination_check(r.cz, r.mf);
            if (!rep.zero_where_mf_zero) ++nonzero;
            ratio[cells].push_back(rep.max_ratio);
        }
    std::vector<double> corpus_max;
    for (int c : kResolutions) corpus_max.push_back(*std::max_element(ratio[c].begin(), ratio[c].end()));
    // per function, over functions with a nonempty upper part at every resolution
    double worst = 1.0;
    std::string worst_name, skipped;
    const auto& names = runs()[512];
    for (std::size_t i = 0; i < names.size(); ++i) {
        std::vector<double> vals;
        for (int c : kResolutions) vals.push_back(ratio[c][i]);
        if (*std::min_element(vals.begin(), vals.end()) == 0.0) {
            skipped += (skipped.empty() ? "" : ",") + names[i].name;
            continue;
        }
        if (spread(vals) > worst) {
            worst = spread(vals);
            worst_name = names[i].name;
        }
    }
    v.ok = spread(corpus_max) <= 2.0 && worst <= 2.0 && nonzero == 0;
    v.detail = fmt("corpus constant %.1f/%.1f/%.1f (x%.3f); per function worst x%.3f (%s); empty upper part at "
                   "some resolution: %s; S>0 where Mf=0 on %zu runs",
                   corpus_max[0], corpus_max[1], corpus_max[2], spread(corpus_max), worst, worst_name.c_str(),
                   skipped.empty() ? "none" : skipped.c_str(), nonzero);
    return v;
}

Verdict criterion7() {
    Verdict v;
    std::vector<double> lo, hi;
    for (int c : kResolutions) {
        double a = kInfinity, b = 0.0;
        for (auto& r : runs()[c]) {
            DictionaryOptions o;
            o.q = 2.0;
            o.root = root_cube(r.f);
            const double ratio = finite_atomic_norm_lp(r.f, build_dictionary(r.f.spec(), o)).value / l1_norm(r.mf);
            a = std::min(a, ratio);
            b = std::max(b, ratio);
        }
        lo.push_back(a);
        hi.push_back(b);
    }
    const double c = *std::min_element(lo.begin(), lo.end());
    const double C = *std::max_element(hi.begin(), hi.end());
    v.ok = C / c <= 20.0;
    for (std::size_t i = 0; i < lo.size(); ++i) v.ok = v.ok && hi[i] / lo[i] <= 20.0;
    v.detail = fmt("[c, C] = [%.2f, %.2f], C/c = %.2f; per resolution %.2f-%.2f, %.2f-%.2f, %.2f-%.2f", c, C, C / c,
                   lo[0], hi[0], lo[1], hi[1], lo[2], hi[2]);
    return v;
}

Verdict criterion8() {
    Verdict v;
    std::vector<double> worst_cost;
    std::vector<double> worst_jump;
    std::size_t atoms = 0, runs_done = 0;
    for (int c : kResolutions) {
        double wc = 0.0, wj = 0.0;
        for (auto& r : runs()[c]) {
            if (!r.continuous) continue;
            FiniteOptions o;
            o.q = kInfinity;
            o.eps = 1e-3;
            AtomicDecomposition d;
            try {
                d = finite_decomposition(r.f, r.family, o, &r.mf);
            } catch (const std::exception& e) {
                v.ok = false;
                v.detail = r.name + ": " + e.what();
                return v;
            }
            ++runs_done;
            wc = std::max(wc, d.cost() / l1_norm(r.mf));
            if (l1_norm(r.f - d.reconstruct()) > 1e-8 * l1_norm(r.f)) v.ok = false;
            const double h = r.f.spec().h();
            const double omega_f = modulus_of_continuity(r.f, 1.5 * h);
            for (const auto& t : d.terms) {
                ++atoms;
                if (!atom_validate(t.atom, d.spec, t.ball, kInfinity).valid) v.ok = false;
                const GridFunction piece = std::abs(t.lambda) * t.atom.to_grid(d.spec);
                const double w = modulus_of_continuity(piece, 1.5 * h);
                if (!std::isfinite(w)) v.ok = false;
                wj = std::max(wj, w / std::max(omega_f, 1e-300));
            }
        }
        worst_cost.push_back(wc);
        worst_jump.push_back(wj);
    }
    v.ok = v.ok && spread(worst_cost) <= 2.0 && spread(worst_jump) <= 2.0;
    v.detail = fmt("%zu runs, %zu atoms; max cost/h1 %.1f/%.1f/%.1f; max term jump / jump of f %.2f/%.2f/%.2f",
                   runs_done, atoms, worst_cost[0], worst_cost[1], worst_cost[2], worst_jump[0], worst_jump[1],
                   worst_jump[2]);
    return v;
}

Verdict criterion9() {
    Verdict v;
    MeyerConfig cfg;
    cfg.j_min = 0;
    cfg.j_max = 4;
    cfg.cells = 1024;
    const auto rows = meyer_ratio_experiment(cfg);
    std::vector<double> step, moll, two;
    for (const auto& r : rows) {
        step.push_back(r.rho_inf_step);
        moll.push_back(r.rho_inf_mollified);
        two.push_back(r.rho_2_step);
    }
    for (std::size_t i = 1; i < step.size(); ++i) v.ok = v.ok && step[i] > step[i - 1];
    v.ok = v.ok && spread(two) <= 2.0 && spread(moll) <= 2.0;
    std::ostringstream s;
    s << "rho_inf(step)";
    for (double x : step) s << ' ' << fmt("%.2f", x);
    s << fmt(" (x%.2f); rho_2(step) x%.2f; rho_inf(mollified) x%.2f", step.back() / step.front(), spread(two),
             spread(moll));
    v.detail = s.str();
    return v;
}

// Exhaustive oracle for min ||lambda||_1 s.t. A lambda = f: the minimum is
// attained at a solution with linearly independent support, so enumerate
// every column subset of size rank(A).
double vertex_oracle(const Eigen::MatrixXd& A, const Eigen::VectorXd& f) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-10);
    const int r = static_cast<int>(lu.rank());
    // Keep r independent rows.
    Eigen::FullPivLU<Eigen::MatrixXd> lut(A.transpose());
    lut.setThreshold(1e-10);
    const auto& perm = lut.permutationQ().indices();
    Eigen::MatrixXd Ar(r, A.cols());
    Eigen::VectorXd fr(r);
    for (int k = 0; k < r; ++k) {
        Ar.row(k) = A.row(perm[k]);
        fr[k] = f[perm[k]];
    }
    const int n = static_cast<int>(A.cols());
    double best = kInfinity;
    std::vector<int> idx(r);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == r) {
            Eigen::MatrixXd S(r, r);
            for (int k = 0; k < r; ++k) S.col(k) = Ar.col(idx[k]);
            Eigen::FullPivLU<Eigen::MatrixXd> s(S);
            s.setThreshold(1e-10);
            if (!s.isInvertible()) return;
            const Eigen::VectorXd x = s.solve(fr);
            Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
            for (int k = 0; k < r; ++k) full[idx[k]] = x[k];
            if ((A * full - f).lpNorm<Eigen::Infinity>() > 1e-9) return;
            best = std::min(best, x.lpNorm<1>());
            return;
        }
        for (int j = start; j <= n - (r - depth); ++j) {
            idx[depth] = j;
            rec(j + 1, depth + 1);
        }
    };
    rec(0, 0);
    return best;
}

Verdict criterion10() {
    Verdict v;
    const GridSpec spec = GridSpec::box(1, 8, 0.0, 1.0);
    double worst = 0.0;
    std::size_t generators = 0;
    for (int t = 0; t < 100; ++t) {
        DictionaryOptions o;
        o.q = t % 2 == 0 ? 2.0 : kInfinity;
        o.pair_cells_cap = 4;
        const auto dict = build_dictionary(spec, o);
        generators = std::max(generators, dict.generators.size());
        GridFunction f = testing::random_function(spec, 500 + t);
        const double mean = integrate(f) / (spec.cell_volume() * 8);
        for (std::size_t c = 0; c < 8; ++c) f[c] -= mean;
        const auto lp = finite_atomic_norm_lp(f, dict);
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(8, static_cast<Eigen::Index>(dict.generators.size()));
        for (std::size_t j = 0; j < dict.generators.size(); ++j) {
            const auto& g = dict.generators[j].values;
            for (std::size_t k = 0; k < g.cells.size(); ++k) A(g.cells[k], static_cast<Eigen::Index>(j)) = g.values[k];
        }
        Eigen::VectorXd fv(8);
        for (int c = 0; c < 8; ++c) fv[c] = f[static_cast<std::size_t>(c)];
        const double oracle = vertex_oracle(A, fv);
        worst = std::max(worst, std::abs(lp.value - oracle) / std::max(1.0, oracle));
    }
    v.ok = worst <= 1e-9;
    v.detail = fmt("100 instances (q = 2 and inf), up to %zu generators, max |simplex - enumeration| = %.2e",
                   generators, worst);
    return v;
}

Verdict criterion11() {
    Verdict v;
    const GridSpec tiny = GridSpec::box(1, 8, 0.0, 1.0);
    DictionaryOptions o;
    o.q = 2.0;
    const auto dict = build_dictionary(tiny, o);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto T = random_dense(tiny, 700 + static_cast<std::uint64_t>(t) / 10);
        const double A = exact_atom_bound(T, dict);
        const auto f = testing::random_function(tiny, 900 + t);
        const auto rep = bmo_dual_check(T, f, dict, A);
        worst = std::max(worst, rep.ratio);
        if (!rep.ok) v.ok = false;
    }
    const GridSpec big = testing::corpus_grid(1024);
    DictionaryOptions ob;
    ob.q = 2.0;
    ob.root = DyadicCube{2, {1, 0}};  // [-0.5, 0.5)
    const auto bd = build_dictionary(big, ob);
    const auto H = hilbert_kernel(big, 0.5);
    const double a_est = atom_supremum(H, bd, 200, 3).value;
    const double a_cert = certified_atom_upper_bound(H, bd);
    const auto f = testing::random_function(big, 11, bd.cells());
    const auto sampled = bmo_dual_check(H, f, bd, a_est);
    const auto cert = bmo_dual_check(H, f, bd, a_cert);
    v.ok = v.ok && cert.ratio <= 2.0;
    v.detail = fmt("8 cells: max bmo/(A ||f||_inf) = %.3f over 100 cases; 1024 cells: A_est %.3f ratio %.3f, "
                   "certified A %.2f ratio %.3f",
                   worst, a_est, sampled.ratio, a_cert, cert.ratio);
    return v;
}

Verdict criterion12() {
    Verdict v;
    double worst = 0.0;
    std::size_t checks = 0;
    auto sweep = [&](const OperatorSpec& T, const std::vector<Run>& rs) {
        DictionaryOptions o;
        o.q = 2.0;
        o.root = DyadicCube{2, {1, 0}};
        const auto dict = build_dictionary(T.spec(), o);
        const double a_est = atom_supremum(T, dict, 50, 5).value;
        for (const auto& r : rs) {
            const auto rep = consistency_check(T, r.f, r.family, {}, a_est);
            ++checks;
            worst = std::max(worst, rep.difference / rep.threshold);
            if (!rep.ok) v.ok = false;
        }
    };
    sweep(hilbert_kernel(testing::corpus_grid(1024), 0.5), runs()[1024]);
    for (std::uint64_t s = 0; s < 5; ++s) sweep(random_dense(testing::corpus_grid(512), 40 + s), runs()[512]);
    v.detail = fmt("%zu checks (Hilbert at 1024 cells, 5 dense at 512), max difference/threshold = %.2e", checks,
                   worst);
    return v;
}

std::string read_all(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = read_all(e.path());
    return out;
}

Verdict criterion13() {
    Verdict v;
    // grand maximal: sublinear and homogeneous on random pairs
    const GridSpec spec = GridSpec::box(1, 128, -1.0, 2.0);
    const auto fam = TestFamily::standard(spec, spec.side_length(), 20);
    std::vector<std::size_t> mid;
    for (std::size_t c = 48; c < 80; ++c) mid.push_back(c);
    double sub = 0.0, hom = 0.0;
    for (int t = 0; t < 50; ++t) {
        const auto f = testing::random_function(spec, 2 * t, mid);
        const auto g = testing::random_function(spec, 2 * t + 1, mid);
        const auto mf = grand_maximal(f, fam), mg = grand_maximal(g, fam), ms = grand_maximal(f + g, fam);
        const double c = -3.0 + 0.25 * t;
        const auto mc = grand_maximal(c * f, fam);
        for (std::size_t x = 0; x < spec.cell_count(); ++x) {
            sub = std::max(sub, ms[x] - mf[x] - mg[x]);
            hom = std::max(hom, std::abs(mc[x] - std::abs(c) * mf[x]) / std::max(1e-300, std::abs(c) * mf[x]));
        }
    }
    const bool maximal_ok = sub <= 1e-14 && hom <= 1e-13;

    // bmo: zero on constants, invariant under adding constants and cell shifts
    const auto g = testing::random_function(spec, 77, mid);
    GridFunction constant(spec);
    for (std::size_t c = 0; c < spec.cell_count(); ++c) constant[c] = 3.5;
    GridFunction lifted = g;
    for (std::size_t c = 0; c < spec.cell_count(); ++c) lifted[c] += 2.25;
    const auto balls = dyadic_balls(spec);
    const double b0 = bmo_norm(g, balls);
    const double shift_const = std::abs(bmo_norm(lifted, balls) - b0) / b0;
    // A shift by a whole dyadic block maps the dyadic family onto itself away
    // from the box edge.
    std::vector<Ball> inner, moved;
    for (const auto& B : balls)
        if (B.radius <= 0.25 && B.center[0] > -0.7 && B.center[0] < 0.4) {
            inner.push_back(B);
            moved.push_back({{B.center[0] + 0.25, 0.0}, B.radius});
        }
    const double shift_space =
        std::abs(bmo_norm(g.shifted({16, 0}), moved) - bmo_norm(g, inner)) / bmo_norm(g, inner);
    const bool bmo_ok = bmo_norm(constant, balls) == 0.0 && shift_const <= 1e-12 && shift_space <= 1e-12;

    // CLI determinism
    const fs::path root = fs::temp_directory_path() / ("hardy_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(root);
    const auto input = root / "f.json";
    save_grid_function(testing::corpus(512)[10].f, input);
    bool cli_ok = true;
    std::size_t files = 0;
    const std::vector<std::vector<std::string>> commands = {
        {"decompose", "--input", input.string()},
        {"decompose", "--input", input.string(), "--q", "inf"},
        {"norms", "--input", input.string()},
        {"operator-check", "--input", input.string(), "--samples", "40", "--dict-level", "7"},
        {"maximal", "--input", input.string()},
        {"whitney", "--input", input.string(), "--threshold", "0.2"},
        {"report", "--sweep", "meyer", "--jmax", "1", "--cells", "256"},
    };
    for (std::size_t k = 0; k < commands.size(); ++k) {
        std::vector<std::map<std::string, std::string>> snaps;
        for (int rep = 0; rep < 2; ++rep) {
            const auto out = root / ("run" + std::to_string(k) + "_" + std::to_string(rep));
            std::vector<std::string> args = {"hardy", "--seed", "13", "--out-dir", out.string()};
            args.insert(args.end(), commands[k].begin(), commands[k].end());
            std::vector<const char*> argv;
            for (auto& a : args) argv.push_back(a.c_str());
            std::ostringstream o, e;
            const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
            if (code != cli::kExitOk) cli_ok = false;
            auto snap = snapshot(out);
            snap["<stdout>"] = o.str();
            snaps.push_back(std::move(snap));
        }
        files += snaps[0].size();
        if (snaps[0] != snaps[1]) cli_ok = false;
    }
    fs::remove_all(root);

    v.ok = maximal_ok && bmo_ok && cli_ok;
    v.detail = fmt("sublinearity excess %.1e, homogeneity error %.1e; bmo(const) = %g, constant shift %.1e, "
                   "cell shift %.1e; CLI %zu artifacts byte-identical: %s",
                   sub, hom, bmo_norm(constant, balls), shift_const, shift_space, files, cli_ok ? "yes" : "no");
    return v;
}

}  // namespace

int main() {
    const std::vector<std::function<Verdict()>> criteria = {criterion1, criterion2,  criterion3,  criterion4, criterion5,
                                                            criterion6, criterion7,  criterion8,  criterion9, criterion10,
                                                            criterion11, criterion12, criterion13};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i]();
        } catch (const std::exception& e) {
            v.ok = false;
            v.detail = std::string("exception: ") + e.what();
        }
        if (!v.ok) ++failed;
        std::printf("criterion %2zu %s  %s\n", i + 1, v.ok ? "PASS" : "FAIL", v.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
