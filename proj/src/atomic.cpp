#include "hardy/atomic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hardy {

double SparseFunction::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double SparseFunction::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

GridFunction SparseFunction::to_grid(const GridSpec& spec) const {
    GridFunction g(spec);
    add_to(g);
    return g;
}

void SparseFunction::add_to(GridFunction& g, double scale) const {
    for (std::size_t k = 0; k < cells.size(); ++k) g[cells[k]] += scale * values[k];
}

SparseFunction SparseFunction::from_grid(const GridFunction& g) {
    SparseFunction s;
    for (std::size_t c = 0; c < g.size(); ++c)
        if (g[c] != 0.0) {
            s.cells.push_back(static_cast<std::uint32_t>(c));
            s.values.push_back(g[c]);
        }
    return s;
}

GridFunction AtomicDecomposition::reconstruct() const {
    GridFunction g(spec);
    for (const auto& t : terms) t.atom.add_to(g, t.lambda);
    return g;
}

double AtomicDecomposition::cost() const {
    double s = 0.0;
    for (const auto& t : terms) s += std::abs(t.lambda);
    return s;
}

std::map<int, CellMask> level_sets(const GridFunction& mf) {
    std::map<int, CellMask> out;
    double lo = kInfinity, hi = 0.0;
    for (double v : mf.values()) {
        if (v < 0.0) throw Error("level_sets: maximal function must be nonnegative");
        if (v > 0.0) lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi == 0.0) return out;
    const int k_top = largest_k_below(hi);
    const int k_bottom = largest_k_below(lo) - 1;
    for (int k = k_bottom; k <= k_top; ++k) {
        const double thr = std::ldexp(1.0, k);
        CellMask m(mf.spec());
        for (std::size_t c = 0; c < mf.size(); ++c)
            if (mf[c] > thr) m.set(c);
        if (!m.empty() && !m.full()) out.emplace(k, std::move(m));
    }
    return out;
}

namespace {

double bump(double s) { return std::abs(s) >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - s * s)); }

// Partition of unity subordinate to the Whitney balls of one level set.
struct Level {
    int k = 0;
    std::vector<DyadicCube> cubes;
    std::vector<Ball> balls;
    std::vector<SparseFunction> chi;
    std::vector<double> mass;  // sum of chi (cell units)
    std::vector<double> avg;   // chi-weighted average of f
    // cell -> (ball, chi) entries
    std::vector<std::uint32_t> row_start;
    std::vector<std::uint32_t> entry_ball;
    std::vector<double> entry_chi;
};

Level build_level(const GridFunction& f, const CellMask& omega, const CzOptions& opts, int k) {
    const auto& spec = f.spec();
    Level lv;
    lv.k = k;
    lv.row_start.assign(spec.cell_count() + 1, 0);
    if (omega.empty()) return lv;

    const auto cover = whitney_cover(omega, Rational::from_double(opts.eta));
    const CellMask covered = cover.covered();
    std::vector<double> total(spec.cell_count(), 0.0);
    std::vector<SparseFunction> psi;
    for (const auto& wc : cover.cubes) {
        Ball b{wc.cube.center(spec), opts.ball_factor * wc.cube.diam(spec) / 2.0};
        SparseFunction p;
        for (auto c : cells_in_ball(spec, b)) {
            if (!covered[c]) continue;
            const double v = bump(distance(spec.center(c), b.center) / b.radius);
            if (v <= 0.0) continue;
            p.cells.push_back(static_cast<std::uint32_t>(c));
            p.values.push_back(v);
            total[c] += v;
        }
        lv.cubes.push_back(wc.cube);
        lv.balls.push_back(b);
        psi.push_back(std::move(p));
    }
    for (std::size_t c = 0; c < spec.cell_count(); ++c)
        if (covered[c] && !(total[c] > 0.0)) throw Error("partition of unity does not cover omega");

    std::vector<std::uint32_t> counts(spec.cell_count(), 0);
    for (auto& p : psi) {
        for (std::size_t j = 0; j < p.cells.size(); ++j) {
            p.values[j] /= total[p.cells[j]];
            ++counts[p.cells[j]];
        }
        double m = 0.0, fm = 0.0;
        for (std::size_t j = 0; j < p.cells.size(); ++j) {
            m += p.values[j];
            fm += p.values[j] * f[p.cells[j]];
        }
        lv.mass.push_back(m);
        lv.avg.push_back(fm / m);
    }
    lv.chi = std::move(psi);

    for (std::size_t c = 0; c < spec.cell_count(); ++c) lv.row_start[c + 1] = lv.row_start[c] + counts[c];
    lv.entry_ball.resize(lv.row_start.back());
    lv.entry_chi.resize(lv.row_start.back());
    std::vector<std::uint32_t> fill(lv.row_start.begin(), lv.row_start.end() - 1);
    for (std::uint32_t i = 0; i < lv.chi.size(); ++i)
        for (std::size_t j = 0; j < lv.chi[i].cells.size(); ++j) {
            const auto c = lv.chi[i].cells[j];
            lv.entry_ball[fill[c]] = i;
            lv.entry_chi[fill[c]] = lv.chi[i].values[j];
            ++fill[c];
        }
    return lv;
}

// Dense scratch buffer that remembers which cells were written.
struct Scratch {
    std::vector<double> v;
    std::vector<char> used;
    std::vector<std::uint32_t> touched;

    explicit Scratch(std::size_t n) : v(n, 0.0), used(n, 0) {}
    void add(std::uint32_t c, double x) {
        if (!used[c]) {
            used[c] = 1;
            touched.push_back(c);
        }
        v[c] += x;
    }
    SparseFunction take() {
        std::sort(touched.begin(), touched.end());
        SparseFunction s;
        for (auto c : touched) {
            if (v[c] != 0.0) {
                s.cells.push_back(c);
                s.values.push_back(v[c]);
            }
            v[c] = 0.0;
            used[c] = 0;
        }
        touched.clear();
        return s;
    }
};

AtomTerm make_term(int level, int index, SparseFunction piece, Ball ball, Ball dep, const GridSpec& spec) {
    // remove the rounding left in the integral
    const double drift = piece.sum() / static_cast<double>(piece.cells.size());
    for (double& v : piece.values) v -= drift;
    AtomTerm t;
    t.level = level;
    t.index = index;
    t.ball = ball;
    t.dep_ball = dep;
    const double amp = piece.max_abs();
    t.lambda = amp * measured_volume(spec, ball);
    for (double& v : piece.values) v /= t.lambda;
    t.atom = std::move(piece);
    return t;
}

void fill_constants(AtomicDecomposition& d) {
    auto& c = d.constants;
    c.c_atom = 0.0;
    c.c_level = 0.0;
    std::map<int, std::vector<Ball>> by_level, dep_by_level;
    for (const auto& t : d.terms) {
        const double vol = measured_volume(d.spec, t.ball);
        c.c_atom = std::max(c.c_atom, t.atom.max_abs() * vol);
        c.c_level = std::max(c.c_level, std::abs(t.lambda) * t.atom.max_abs() / std::ldexp(1.0, t.level));
        if (t.level > d.k_prime && t.index >= 0) {
            by_level[t.level].push_back(t.ball);
            dep_by_level[t.level].push_back(t.dep_ball);
        }
    }
    c.overlap = 0;
    c.dep_overlap = 0;
    for (const auto& [k, balls] : by_level) c.overlap = std::max(c.overlap, overlap_count(d.spec, balls));
    for (const auto& [k, balls] : dep_by_level) c.dep_overlap = std::max(c.dep_overlap, overlap_count(d.spec, balls));
    c.c_sum = c.mf_l1 > 0.0 ? d.cost() / c.mf_l1 : 0.0;
}

void check_mean_zero(const GridFunction& f) {
    const double l1 = l1_norm(f);
    if (std::abs(integrate(f)) > 1e-10 * std::max(l1, 1e-300) && l1 > 0.0)
        throw Error("input must have integral zero");
}

}  // namespace

AtomicDecomposition cz_decompose(const GridFunction& f, const TestFamily& family, const CzOptions& opts,
                                 const GridFunction* mf_in) {
    const auto& spec = f.spec();
    check_mean_zero(f);
    AtomicDecomposition d;
    d.spec = spec;
    d.residual = GridFunction(spec);
    d.constants.eta = opts.eta;
    d.constants.ball_factor = opts.ball_factor;
    d.constants.dep_factor = opts.dep_factor;
    if (f.is_zero()) return d;

    GridFunction mf_local;
    const GridFunction* mf = mf_in;
    if (!mf) {
        mf_local = grand_maximal(f, family);
        mf = &mf_local;
    }
    const auto decay = decay_certificate(f, family, mf);
    if (!decay.passed) throw Error("maximal function does not decay outside 2B");

    d.support_ball = decay.ball;
    d.k_prime = decay.k_prime_measured;
    d.constants.c_young = family_l1_bound(family, spec);
    d.k_double_prime = largest_k_below(d.constants.c_young * f.max_abs());
    d.constants.mf_l1 = l1_norm(*mf);
    d.constants.f_l1 = decay.l1;
    const int k1 = d.k_prime + 1, k2 = *d.k_double_prime;
    const Ball twice = d.support_ball.scaled(2.0);

    auto level_mask = [&](int k) {
        CellMask m(spec);
        const double thr = std::ldexp(1.0, k);
        for (std::size_t c = 0; c < spec.cell_count(); ++c)
            if ((*mf)[c] > thr) m.set(c);
        for (std::size_t c = 0; c < spec.cell_count(); ++c)
            if (m[c] && !twice.contains(spec.center(c))) throw Error("level set leaves 2B above k'");
        return m;
    };

    std::vector<Level> levels;
    for (int k = k1; k <= std::max(k1, k2 + 1); ++k) {
        CellMask m = level_mask(k);
        levels.push_back(build_level(f, m, opts, k));
    }
    levels.push_back(Level{});  // sentinel: empty level above the last one
    levels.back().k = levels[levels.size() - 2].k + 1;
    levels.back().row_start.assign(spec.cell_count() + 1, 0);

    // h = g_{k'+1}: f outside Omega_{k'+1}, the chi-weighted averages inside.
    {
        GridFunction h = f;
        const Level& lv = levels.front();
        for (std::size_t i = 0; i < lv.chi.size(); ++i)
            for (std::size_t j = 0; j < lv.chi[i].cells.size(); ++j) {
                const auto c = lv.chi[i].cells[j];
                h[c] -= (f[c] - lv.avg[i]) * lv.chi[i].values[j];
            }
        if (!h.is_zero()) d.terms.push_back(make_term(d.k_prime, -1, SparseFunction::from_grid(h), twice, twice, spec));
    }

    Scratch acc(spec.cell_count());
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * f.max_abs();
    std::vector<double> chi_here(spec.cell_count(), 0.0);
    std::vector<double> cross;
    std::vector<std::uint32_t> partners;
    std::vector<char> is_partner;

    for (std::size_t li = 0; li + 1 < levels.size(); ++li) {
        const Level& lv = levels[li];
        const Level& up = levels[li + 1];
        if (lv.k > k2) break;
        cross.assign(up.chi.size(), 0.0);
        is_partner.assign(up.chi.size(), 0);
        for (std::size_t i = 0; i < lv.chi.size(); ++i) {
            const auto& chi = lv.chi[i];
            partners.clear();
            for (std::size_t j = 0; j < chi.cells.size(); ++j) {
                const auto c = chi.cells[j];
                chi_here[c] = chi.values[j];
                acc.add(c, (f[c] - lv.avg[i]) * chi.values[j]);
                for (auto e = up.row_start[c]; e < up.row_start[c + 1]; ++e) {
                    const auto l = up.entry_ball[e];
                    if (!is_partner[l]) {
                        is_partner[l] = 1;
                        partners.push_back(l);
                    }
                    cross[l] += (f[c] - up.avg[l]) * chi.values[j] * up.entry_chi[e];
                }
            }
            double radius = lv.balls[i].radius;
            for (auto l : partners) {
                const double c_li = cross[l] / up.mass[l];
                const auto& chl = up.chi[l];
                for (std::size_t j = 0; j < chl.cells.size(); ++j) {
                    const auto c = chl.cells[j];
                    acc.add(c, -((f[c] - up.avg[l]) * chi_here[c] - c_li) * chl.values[j]);
                }
                radius = std::max(radius, distance(up.balls[l].center, lv.balls[i].center) + up.balls[l].radius);
                cross[l] = 0.0;
                is_partner[l] = 0;
            }
            for (auto c : chi.cells) chi_here[c] = 0.0;
            SparseFunction piece = acc.take();
            // drop pieces at rounding level
            if (piece.cells.empty() || piece.max_abs() <= noise) continue;
            double tight = 0.0;
            for (auto c : piece.cells) tight = std::max(tight, distance(spec.center(c), lv.balls[i].center));
            const Ball ball{lv.balls[i].center, tight};
            const Ball dep{lv.balls[i].center, std::max(radius, opts.dep_factor * lv.balls[i].radius)};
            d.terms.push_back(make_term(lv.k, static_cast<int>(i), std::move(piece), ball, dep, spec));
        }
    }

    d.residual = f - d.reconstruct();
    fill_constants(d);
    return d;
}

// ---------------------------------------------------------------------------

HEllSplit split_h_ell(const AtomicDecomposition& d) {
    HEllSplit s;
    s.h = GridFunction(d.spec);
    s.ell = GridFunction(d.spec);
    for (const auto& t : d.terms) t.atom.add_to(t.level <= d.k_prime ? s.h : s.ell, t.lambda);
    if (s.h.is_zero() && s.ell.is_zero()) {
        s.atom_ok = true;
        return s;
    }
    const Ball twice = d.support_ball.scaled(2.0);
    for (std::size_t c = 0; c < d.spec.cell_count(); ++c)
        if (!twice.contains(d.spec.center(c)) && (s.h[c] != 0.0 || s.ell[c] != 0.0)) s.leaking.push_back(c);
    if (!s.leaking.empty())
        throw Error("support leakage outside 2B at " + std::to_string(s.leaking.size()) + " cells");
    const double vol = measured_volume(d.spec, twice);
    s.lambda_h = s.h.max_abs() * vol;
    s.c_h = d.constants.mf_l1 > 0.0 ? s.lambda_h / d.constants.mf_l1 : 0.0;
    const double mean = std::abs(integrate(s.h));
    s.atom_ok = mean <= 1e-10 * std::max(l1_norm(s.h), 1e-300) || s.h.is_zero();
    return s;
}

std::vector<std::size_t> balls_outside_level_sets(const AtomicDecomposition& d, const GridFunction& mf) {
    std::vector<std::size_t> bad;
    for (std::size_t t = 0; t < d.terms.size(); ++t) {
        const auto& term = d.terms[t];
        if (term.level <= d.k_prime || term.index < 0) continue;
        const double thr = std::ldexp(1.0, term.level);
        bool ok = true;
        for (auto c : cells_in_ball(d.spec, term.ball)) ok = ok && mf[c] > thr;
        for (auto c : term.atom.cells) ok = ok && term.ball.contains(d.spec.center(c));
        if (!ok) bad.push_back(t);
    }
    return bad;
}

DominationReport pointwise_domination_check(const AtomicDecomposition& d, const GridFunction& mf) {
    DominationReport r;
    GridFunction s(d.spec);
    for (const auto& t : d.terms) {
        if (t.level <= d.k_prime) continue;
        for (std::size_t j = 0; j < t.atom.cells.size(); ++j)
            s[t.atom.cells[j]] += std::abs(t.lambda * t.atom.values[j]);
    }
    for (std::size_t c = 0; c < s.size(); ++c) {
        if (mf[c] > 0.0) r.max_ratio = std::max(r.max_ratio, s[c] / mf[c]);
        else if (s[c] != 0.0) r.zero_where_mf_zero = false;
    }
    return r;
}

namespace {

double packaged_coefficient(const GridFunction& g, double q, double vol) {
    if (std::isinf(q)) return g.max_abs() * vol;
    return lq_norm(g, q) * std::pow(vol, 1.0 - 1.0 / q);
}

AtomTerm package(const GridFunction& g, double coef, const Ball& ball, int level) {
    AtomTerm t;
    t.level = level;
    t.index = -1;
    t.lambda = coef;
    t.ball = ball;
    t.dep_ball = ball;
    t.atom = SparseFunction::from_grid(g);
    if (coef > 0.0)
        for (double& v : t.atom.values) v /= coef;
    return t;
}

}  // namespace

Truncation truncate(const AtomicDecomposition& d, double eps, double q) {
    if (!(eps > 0.0)) throw Error("truncate: eps must be positive");
    if (!(q > 1.0)) throw Error("truncate: q must exceed 1");
    std::vector<const AtomTerm*> ell;
    for (const auto& t : d.terms)
        if (t.level > d.k_prime) ell.push_back(&t);
    std::stable_sort(ell.begin(), ell.end(), [](const AtomTerm* a, const AtomTerm* b) {
        return a->level != b->level ? a->level < b->level : a->index < b->index;
    });

    const Ball twice = d.support_ball.scaled(2.0);
    const double vol = ell.empty() ? 1.0 : measured_volume(d.spec, twice);
    GridFunction tail(d.spec), majorant(d.spec);
    for (const auto* t : ell)
        for (std::size_t j = 0; j < t->atom.cells.size(); ++j) {
            tail[t->atom.cells[j]] += t->lambda * t->atom.values[j];
            majorant[t->atom.cells[j]] += std::abs(t->lambda * t->atom.values[j]);
        }

    Truncation tr;
    std::size_t chosen = ell.size();
    bool found = false;
    for (std::size_t n = 0; n <= ell.size(); ++n) {
        if (n > 0) {
            const auto* t = ell[n - 1];
            for (std::size_t j = 0; j < t->atom.cells.size(); ++j) {
                tail[t->atom.cells[j]] -= t->lambda * t->atom.values[j];
                majorant[t->atom.cells[j]] -= std::abs(t->lambda * t->atom.values[j]);
            }
        }
        if (n == ell.size()) {
            tail = GridFunction(d.spec);
            majorant = GridFunction(d.spec);
        }
        const double coef = packaged_coefficient(tail, q, vol);
        tr.coefficient_trace.push_back(coef);
        tr.majorant_trace.push_back(packaged_coefficient(majorant, q, vol));
        if (!found && coef < eps) {
            found = true;
            chosen = n;
            tr.tail_coefficient = coef;
            tr.tail = package(tail, coef, twice, d.k_double_prime.value_or(d.k_prime) + 1);
        }
    }
    tr.kept = chosen;
    for (std::size_t n = 0; n < chosen; ++n) tr.finite_part.push_back(*ell[n]);
    return tr;
}

// ---------------------------------------------------------------------------

namespace {

struct Offset {
    int dx, dy;
    long r2;
};

std::vector<Offset> sorted_offsets(const GridSpec& spec) {
    const int N = spec.cells_per_side();
    std::vector<Offset> offs;
    if (spec.dim() == 1) {
        for (int d = 1; d < N; ++d) offs.push_back({d, 0, long(d) * d});
        return offs;
    }
    // Half plane: each unordered pair once.
    for (int dy = 0; dy < N; ++dy)
        for (int dx = -(N - 1); dx < N; ++dx) {
            if (dy == 0 && dx <= 0) continue;
            offs.push_back({dx, dy, long(dx) * dx + long(dy) * dy});
        }
    std::stable_sort(offs.begin(), offs.end(), [](const Offset& a, const Offset& b) { return a.r2 < b.r2; });
    return offs;
}

double offset_jump(const GridFunction& f, const Offset& o) {
    const auto& spec = f.spec();
    double m = 0.0;
    for (std::size_t c = 0; c < f.size(); ++c) {
        CellIndex ci = spec.coords(c);
        CellIndex t{ci[0] + o.dx, ci[1] + o.dy};
        if (spec.contains(t)) m = std::max(m, std::abs(f[spec.flat(t)] - f[c]));
    }
    return m;
}

}  // namespace

double modulus_of_continuity(const GridFunction& f, double delta) {
    double m = 0.0;
    const double h = f.spec().h();
    for (const auto& o : sorted_offsets(f.spec())) {
        if (!(std::sqrt(double(o.r2)) * h < delta)) break;
        m = std::max(m, offset_jump(f, o));
    }
    return m;
}

double continuity_radius(const GridFunction& f, double eps) {
    const double h = f.spec().h();
    for (const auto& o : sorted_offsets(f.spec()))
        if (offset_jump(f, o) >= eps) return std::sqrt(double(o.r2)) * h;
    return kInfinity;
}

ContinuousSplit continuous_split(const AtomicDecomposition& d, const GridFunction& f, double eps) {
    if (!d.k_double_prime) throw Error("continuous_split: k'' is not set");
    if (!(eps > 0.0)) throw Error("continuous_split: eps must be positive");
    ContinuousSplit s;
    s.delta = continuity_radius(f, eps);
    s.ell2 = GridFunction(d.spec);
    for (const auto& t : d.terms) {
        if (t.level <= d.k_prime) continue;
        if (2.0 * t.dep_ball.radius >= s.delta) {
            s.f1.push_back(t);
        } else {
            s.f2.push_back(t);
            t.atom.add_to(s.ell2, t.lambda);
            s.max_term_ratio = std::max(s.max_term_ratio, std::abs(t.lambda) * t.atom.max_abs() / eps);
        }
    }
    s.f2_sup = s.ell2.max_abs();
    const int levels = std::max(0, *d.k_double_prime - d.k_prime);
    s.f2_bound = kLocalOscillationFactor * d.constants.dep_overlap * levels * eps;
    s.ok = s.f2_sup <= s.f2_bound * (1.0 + 1e-12) && s.max_term_ratio <= kLocalOscillationFactor * (1.0 + 1e-12);
    return s;
}

AtomicDecomposition finite_decomposition(const GridFunction& f, const TestFamily& family, const FiniteOptions& opts,
                                         const GridFunction* mf) {
    if (!(opts.q > 1.0)) throw Error("finite_decomposition: q must exceed 1");
    AtomicDecomposition full = cz_decompose(f, family, opts.cz, mf);
    AtomicDecomposition out;
    out.spec = full.spec;
    out.k_prime = full.k_prime;
    out.k_double_prime = full.k_double_prime;
    out.support_ball = full.support_ball;
    out.constants = full.constants;
    if (full.terms.empty()) {
        out.residual = GridFunction(f.spec());
        return out;
    }
    for (const auto& t : full.terms)
        if (t.level <= full.k_prime) out.terms.push_back(t);

    const Ball twice = full.support_ball.scaled(2.0);
    if (std::isinf(opts.q)) {
        auto cs = continuous_split(full, f, opts.eps);
        if (!cs.ok) throw Error("continuous split bound failed");
        for (auto& t : cs.f1) out.terms.push_back(std::move(t));
        if (!cs.ell2.is_zero()) {
            const double coef = cs.ell2.max_abs() * measured_volume(f.spec(), twice);
            out.terms.push_back(package(cs.ell2, coef, twice, full.k_double_prime.value_or(full.k_prime) + 1));
        }
    } else {
        auto tr = truncate(full, opts.eps, opts.q);
        for (auto& t : tr.finite_part) out.terms.push_back(std::move(t));
        if (tr.tail_coefficient > 0.0) out.terms.push_back(std::move(tr.tail));
    }
    out.residual = f - out.reconstruct();
    out.constants.c_sum = out.constants.mf_l1 > 0.0 ? out.cost() / out.constants.mf_l1 : 0.0;
    return out;
}

nlohmann::json to_json(const AtomicDecomposition& d) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : d.terms) {
        terms.push_back({{"k", t.level},
                         {"i", t.index},
                         {"lambda", t.lambda},
                         {"ball", {{"center", {t.ball.center[0], t.ball.center[1]}}, {"radius", t.ball.radius}}},
                         {"dep_ball", {{"center", {t.dep_ball.center[0], t.dep_ball.center[1]}}, {"radius", t.dep_ball.radius}}},
                         {"atom", {{"cells", t.atom.cells}, {"values", t.atom.values}}}});
    }
    const auto& c = d.constants;
    nlohmann::json meta = {{"k_prime", d.k_prime},
                           {"k_double_prime", d.k_double_prime ? nlohmann::json(*d.k_double_prime) : nlohmann::json()},
                           {"support_ball", {{"center", {d.support_ball.center[0], d.support_ball.center[1]}},
                                             {"radius", d.support_ball.radius}}},
                           {"residual_l1", l1_norm(d.residual)},
                           {"cost", d.cost()},
                           {"constants",
                            {{"c_atom", c.c_atom}, {"c_level", c.c_level}, {"overlap", c.overlap},
                             {"dep_overlap", c.dep_overlap}, {"c_sum", c.c_sum}, {"c_young", c.c_young},
                             {"mf_l1", c.mf_l1}, {"f_l1", c.f_l1}, {"eta", c.eta}, {"ball_factor", c.ball_factor},
                             {"dep_factor", c.dep_factor}}}};
    return {{"metadata", meta}, {"terms", terms}};
}

}  // namespace hardy
