#include "hardy/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hardy/grid_io.hpp"

namespace hardy {

OperatorSpec OperatorSpec::dense(GridSpec spec, std::vector<double> matrix) {
    const auto n = spec.cell_count();
    if (matrix.size() != n * n) throw Error("operator: matrix must be square on the cell count");
    OperatorSpec T;
    T.kind_ = Kind::Dense;
    T.spec_ = spec;
    T.data_ = std::move(matrix);
    return T;
}

OperatorSpec OperatorSpec::kernel(GridSpec spec, int radius, std::vector<double> values) {
    if (radius < 0) throw Error("operator: negative kernel radius");
    std::size_t w = 2 * static_cast<std::size_t>(radius) + 1;
    if (values.size() != (spec.dim() == 1 ? w : w * w)) throw Error("operator: kernel size does not match radius");
    if (radius >= spec.cells_per_side()) throw Error("operator: kernel wider than the grid");
    OperatorSpec T;
    T.kind_ = Kind::Kernel;
    T.spec_ = spec;
    T.radius_ = radius;
    T.data_ = std::move(values);
    return T;
}

OperatorSpec OperatorSpec::identity(GridSpec spec) {
    const auto n = spec.cell_count();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
    return dense(spec, std::move(m));
}

OperatorSpec OperatorSpec::zero(GridSpec spec) {
    return kernel(spec, 0, std::vector<double>(1, 0.0));
}

namespace {

// Nonzero entries (row, value) of column c.
std::vector<std::pair<std::size_t, double>> column(const OperatorSpec& T, std::size_t c) {
    std::vector<std::pair<std::size_t, double>> out;
    const auto& spec = T.spec();
    if (T.kind() == OperatorSpec::Kind::Dense) {
        const auto n = spec.cell_count();
        for (std::size_t x = 0; x < n; ++x)
            if (T.data()[x * n + c] != 0.0) out.emplace_back(x, T.data()[x * n + c]);
        return out;
    }
    const int r = T.radius();
    const int w = 2 * r + 1;
    const double hn = spec.cell_volume();
    const CellIndex ci = spec.coords(c);
    const int ry = spec.dim() == 2 ? r : 0;
    for (int dy = -ry; dy <= ry; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            const double k = T.data()[static_cast<std::size_t>((dy + ry) * w + dx + r)];
            if (k == 0.0) continue;
            const CellIndex x{ci[0] + dx, ci[1] + dy};
            if (spec.contains(x)) out.emplace_back(spec.flat(x), hn * k);
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

OperatorSpec OperatorSpec::to_dense() const {
    if (kind_ == Kind::Dense) return *this;
    const auto n = spec_.cell_count();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t c = 0; c < n; ++c)
        for (const auto& [x, v] : column(*this, c)) m[x * n + c] = v;
    return dense(spec_, std::move(m));
}

nlohmann::json OperatorSpec::to_json() const {
    return {{"kind", kind_ == Kind::Dense ? "dense" : "kernel"},
            {"grid", grid_spec_to_json(spec_)},
            {"radius", radius_},
            {"values", data_}};
}

OperatorSpec OperatorSpec::from_json(const nlohmann::json& j) {
    const auto spec = grid_spec_from_json(j.at("grid"));
    const auto kind = j.at("kind").get<std::string>();
    auto values = j.at("values").get<std::vector<double>>();
    if (kind == "dense") return dense(spec, std::move(values));
    if (kind == "kernel") return kernel(spec, j.at("radius").get<int>(), std::move(values));
    throw Error("operator: unknown kind '" + kind + "'");
}

GridFunction apply(const OperatorSpec& T, const GridFunction& f) {
    if (!(f.spec() == T.spec())) throw Error("apply: shape mismatch");
    return apply(T, SparseFunction::from_grid(f));
}

GridFunction apply(const OperatorSpec& T, const SparseFunction& a) {
    const auto& spec = T.spec();
    GridFunction out(spec);
    if (T.kind() == OperatorSpec::Kind::Dense) {
        const auto n = spec.cell_count();
        for (std::size_t x = 0; x < n; ++x) {
            const double* row = &T.data()[x * n];
            double s = 0.0;
            for (std::size_t j = 0; j < a.cells.size(); ++j) s += row[a.cells[j]] * a.values[j];
            out[x] = s;
        }
        return out;
    }
    for (std::size_t j = 0; j < a.cells.size(); ++j)
        for (const auto& [x, v] : column(T, a.cells[j])) out[x] += v * a.values[j];
    return out;
}

GridFunction adjoint(const OperatorSpec& T, const GridFunction& f) {
    if (!(f.spec() == T.spec())) throw Error("adjoint: shape mismatch");
    const auto& spec = T.spec();
    GridFunction out(spec);
    if (T.kind() == OperatorSpec::Kind::Dense) {
        const auto n = spec.cell_count();
        for (std::size_t x = 0; x < n; ++x) {
            if (f[x] == 0.0) continue;
            const double* row = &T.data()[x * n];
            for (std::size_t y = 0; y < n; ++y) out[y] += row[y] * f[x];
        }
        return out;
    }
    for (std::size_t y = 0; y < spec.cell_count(); ++y) {
        double s = 0.0;
        for (const auto& [x, v] : column(T, y)) s += v * f[x];
        out[y] = s;
    }
    return out;
}

OperatorSpec hilbert_kernel(const GridSpec& spec, double W) {
    if (spec.dim() != 1) throw Error("hilbert_kernel: 1D grids only");
    const int r = static_cast<int>(std::floor(W / spec.h() + 1e-9));
    if (r < 1) throw Error("hilbert_kernel: truncation below one cell");
    std::vector<double> k(2 * static_cast<std::size_t>(r) + 1, 0.0);
    for (int d = 1; d <= r; ++d) {
        k[static_cast<std::size_t>(r + d)] = 1.0 / (d * spec.h());
        k[static_cast<std::size_t>(r - d)] = -1.0 / (d * spec.h());
    }
    return OperatorSpec::kernel(spec, r, std::move(k));
}

OperatorSpec random_dense(const GridSpec& spec, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto n = spec.cell_count();
    std::vector<double> m(n * n);
    for (double& v : m) v = scale * u(rng);
    return OperatorSpec::dense(spec, std::move(m));
}

// ---------------------------------------------------------------------------

SparseFunction random_atom(const AtomDictionary& dict, std::mt19937_64& rng, std::size_t* ball) {
    if (dict.balls.empty()) throw Error("random_atom: dictionary has no balls");
    std::uniform_int_distribution<std::size_t> pick(0, dict.balls.size() - 1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const std::size_t b = pick(rng);
        const auto cells = cells_in_ball(dict.spec, dict.balls[b]);
        if (cells.size() < 2) continue;
        SparseFunction a;
        double mean = 0.0;
        for (auto c : cells) {
            a.cells.push_back(static_cast<std::uint32_t>(c));
            a.values.push_back(u(rng));
            mean += a.values.back();
        }
        mean /= static_cast<double>(cells.size());
        for (double& v : a.values) v -= mean;
        const double r = size_ratio(a, dict.spec, dict.balls[b], dict.q);
        if (!(r > 0.0)) continue;
        for (double& v : a.values) v /= r;
        if (ball) *ball = b;
        return a;
    }
    throw Error("random_atom: no ball with two or more cells");
}

AtomSupremum atom_supremum(const OperatorSpec& T, const AtomDictionary& dict, std::size_t extra_samples,
                           std::uint64_t seed) {
    AtomSupremum s;
    for (const auto& g : dict.generators) s.dictionary_value = std::max(s.dictionary_value, l1_norm(apply(T, g.values)));
    s.value = s.dictionary_value;
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < extra_samples; ++k) {
        s.value = std::max(s.value, l1_norm(apply(T, random_atom(dict, rng))));
        ++s.samples;
    }
    return s;
}

namespace {

// T restricted to the columns of one ball: rows touched, each as a dense
// vector over the ball's cells.
struct BallBlock {
    std::vector<std::size_t> rows;
    std::vector<std::vector<double>> entries;
};

BallBlock ball_block(const OperatorSpec& T, const std::vector<std::size_t>& cells) {
    std::map<std::size_t, std::vector<double>> by_row;
    for (std::size_t j = 0; j < cells.size(); ++j)
        for (const auto& [x, v] : column(T, cells[j])) {
            auto& r = by_row[x];
            if (r.empty()) r.assign(cells.size(), 0.0);
            r[j] = v;
        }
    BallBlock b;
    for (auto& [x, r] : by_row) {
        b.rows.push_back(x);
        b.entries.push_back(std::move(r));
    }
    return b;
}

// max of v.a over mean-zero a with |a| <= t.
double box_mean_zero_max(std::vector<double> v, double t) {
    std::sort(v.begin(), v.end());
    double s = 0.0;
    const std::size_t n = v.size();
    for (std::size_t k = 0; k < n / 2; ++k) s += v[n - 1 - k] - v[k];
    return t * s;
}

// max of v.a over mean-zero a with ||a||_2 <= rho.
double l2_mean_zero_max(const std::vector<double>& v, double rho) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return rho * std::sqrt(s);
}

struct AtomBox {
    bool sup;     // q = inf
    double bound; // t for the box, rho for the l2 ball
};

AtomBox atom_box(const AtomDictionary& dict, const Ball& B) {
    const double vol = measured_volume(dict.spec, B);
    if (std::isinf(dict.q)) return {true, 1.0 / vol};
    if (dict.q != 2.0) throw Error("atom bound: only q = 2 and q = inf are supported");
    return {false, 1.0 / std::sqrt(vol * dict.spec.cell_volume())};
}

double linear_max(const AtomBox& box, const std::vector<double>& v) {
    return box.sup ? box_mean_zero_max(v, box.bound) : l2_mean_zero_max(v, box.bound);
}

}  // namespace

double exact_atom_bound(const OperatorSpec& T, const AtomDictionary& dict) {
    const double hn = dict.spec.cell_volume();
    double best = 0.0;
    for (const auto& B : dict.balls) {
        const auto cells = cells_in_ball(dict.spec, B);
        if (cells.size() < 2) continue;
        const auto block = ball_block(T, cells);
        const std::size_t R = block.rows.size();
        if (R == 0) continue;
        if (R > 22) throw Error("exact_atom_bound: too many output rows for sign enumeration");
        const AtomBox box = atom_box(dict, B);
        std::vector<double> v(cells.size());
        // sigma and -sigma give the same value; fix the first sign.
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (R - 1)); ++mask) {
            std::fill(v.begin(), v.end(), 0.0);
            for (std::size_t r = 0; r < R; ++r) {
                const double sg = (r > 0 && (mask >> (r - 1)) & 1) ? -1.0 : 1.0;
                for (std::size_t j = 0; j < v.size(); ++j) v[j] += sg * block.entries[r][j];
            }
            best = std::max(best, hn * linear_max(box, v));
        }
    }
    return best;
}

double certified_atom_upper_bound(const OperatorSpec& T, const AtomDictionary& dict) {
    const double hn = dict.spec.cell_volume();
    double best = 0.0;
    for (const auto& B : dict.balls) {
        const auto cells = cells_in_ball(dict.spec, B);
        if (cells.size() < 2) continue;
        const auto block = ball_block(T, cells);
        const AtomBox box = atom_box(dict, B);
        double s = 0.0;
        for (const auto& row : block.entries) s += linear_max(box, row);
        best = std::max(best, hn * s);
    }
    return best;
}

// ---------------------------------------------------------------------------

Extension extend_apply(const OperatorSpec& T, const GridFunction& f, const TestFamily& family,
                       const FiniteOptions& opts, double a_est) {
    Extension e;
    e.decomposition = finite_decomposition(f, family, opts);
    e.tf = GridFunction(f.spec());
    auto& ch = e.chain;
    ch.a_sampled = a_est;
    ch.a_est = a_est;
    std::vector<double> term_norms;
    for (const auto& t : e.decomposition.terms) {
        GridFunction ta = apply(T, t.atom);
        term_norms.push_back(l1_norm(ta));
        ch.a_est = std::max(ch.a_est, term_norms.back());
        ta *= t.lambda;
        e.tf += ta;
    }
    ch.tf_l1 = l1_norm(e.tf);
    ch.cost = e.decomposition.cost();
    ch.h1_proxy = e.decomposition.constants.mf_l1;
    ch.c_sum = ch.h1_proxy > 0.0 ? ch.cost / ch.h1_proxy : 0.0;
    const double slack = 1.0 + 1e-12;
    ch.termwise_ok = std::all_of(term_norms.begin(), term_norms.end(), [&](double v) { return v <= ch.a_est * slack; });
    ch.first_ok = ch.tf_l1 <= ch.a_est * ch.cost * slack + 1e-300;
    ch.second_ok = ch.a_est * ch.cost <= ch.a_est * ch.c_sum * ch.h1_proxy * slack + 1e-300;
    return e;
}

BmoDualReport bmo_dual_check(const OperatorSpec& T, const GridFunction& f_inf, const AtomDictionary& dict,
                             double a_bound) {
    BmoDualReport r;
    r.a_bound = a_bound;
    r.f_sup = f_inf.max_abs();
    r.bmo = bmo_norm(adjoint(T, f_inf), dict.balls);
    const double denom = a_bound * r.f_sup;
    r.ratio = denom > 0.0 ? r.bmo / denom : (r.bmo == 0.0 ? 0.0 : kInfinity);
    r.ok = r.ratio <= 2.0 * (1.0 + 1e-12);
    return r;
}

ConsistencyReport consistency_check(const OperatorSpec& T, const GridFunction& f, const TestFamily& family,
                                    const FiniteOptions& opts, double a_est) {
    ConsistencyReport r;
    const GridFunction tf = apply(T, f);
    const auto ext = extend_apply(T, f, family, opts, a_est);
    r.difference = l1_norm(tf - ext.tf);
    r.tf_l1 = l1_norm(tf);
    r.residual_l1 = l1_norm(ext.decomposition.residual);
    r.threshold = 1e-6 * r.tf_l1 + ext.chain.a_est * 1e-8 * l1_norm(f);
    r.ok = r.difference <= r.threshold;
    return r;
}

// ---------------------------------------------------------------------------

GridFunction meyer_step(const GridSpec& spec, int j) {
    if (spec.dim() != 1) throw Error("meyer: 1D grids only");
    if (j < 0) throw Error("meyer: j must be nonnegative");
    const int blocks = 1 << j;
    const double len = 1.0 / blocks;
    GridFunction f = GridFunction::sample(spec, [&](const Point& p) {
        const double x = p[0] + 0.5;
        if (x < 0.0 || x >= 1.0) return 0.0;
        const int i = std::min(blocks - 1, static_cast<int>(x / len));
        const double u = (x - i * len) / len;
        const double sign = (i % 2 ? -1.0 : 1.0) * (u < 0.5 ? 1.0 : -1.0);
        return sign / (i + 1);
    });
    return f;
}

GridFunction mollify(const GridFunction& f, double radius) {
    const auto& spec = f.spec();
    if (spec.dim() != 1) throw Error("mollify: 1D grids only");
    const int R = static_cast<int>(std::floor(radius / spec.h() + 1e-9));
    if (R < 1) return f;
    std::vector<double> k(2 * static_cast<std::size_t>(R) + 1);
    double total = 0.0;
    for (int d = -R; d <= R; ++d) {
        const double t = d * spec.h() / radius;
        k[static_cast<std::size_t>(d + R)] = std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
        total += k[static_cast<std::size_t>(d + R)];
    }
    const int N = spec.cells_per_side();
    GridFunction g(spec);
    for (int i = 0; i < N; ++i) {
        double s = 0.0;
        for (int d = -R; d <= R; ++d) {
            const int m = i - d;
            if (m >= 0 && m < N) s += k[static_cast<std::size_t>(d + R)] * f[static_cast<std::size_t>(m)];
        }
        g[static_cast<std::size_t>(i)] = s / total;
    }
    return g;
}

std::vector<MeyerRow> meyer_ratio_experiment(const MeyerConfig& cfg) {
    if (cfg.j_max < cfg.j_min || cfg.j_min < 0) throw Error("meyer: j range must be increasing and nonnegative");
    const auto spec = GridSpec::box(1, cfg.cells, -1.5, 4.0);
    if ((1 << (cfg.j_max + 1)) * 4 > cfg.cells) throw Error("meyer: blocks finer than the grid; raise cells");
    const auto family = TestFamily::standard(spec, spec.side_length(), cfg.family_scales);
    auto lp = [&](const GridFunction& f, double q) {
        DictionaryOptions o;
        o.q = q;
        o.root = root_cube(f);
        try {
            return finite_atomic_norm_lp(f, build_dictionary(spec, o)).value;
        } catch (const Error& e) {
            throw Error(std::string(e.what()) + " (raise the dictionary level)");
        }
    };
    std::vector<MeyerRow> rows;
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
        MeyerRow r;
        r.j = j;
        const auto f = meyer_step(spec, j);
        const auto g = mollify(f, cfg.mollifier_radius);
        r.h1_step = h1_proxy_norm(f, family);
        r.h1_mollified = h1_proxy_norm(g, family);
        r.lp_inf_step = lp(f, kInfinity);
        r.lp_inf_mollified = lp(g, kInfinity);
        r.lp_2_step = lp(f, 2.0);
        r.rho_inf_step = r.lp_inf_step / r.h1_step;
        r.rho_inf_mollified = r.lp_inf_mollified / r.h1_mollified;
        r.rho_2_step = r.lp_2_step / r.h1_step;
        rows.push_back(r);
    }
    return rows;
}

std::string meyer_csv(const std::vector<MeyerRow>& rows) {
    std::ostringstream out;
    out << "j,rho_inf_step,rho_inf_mollified,rho_2_step,h1_step,h1_mollified,lp_inf_step,lp_inf_mollified,lp_2_step\n";
    for (const auto& r : rows)
        out << r.j << ',' << format_double(r.rho_inf_step) << ',' << format_double(r.rho_inf_mollified) << ','
            << format_double(r.rho_2_step) << ',' << format_double(r.h1_step) << ','
            << format_double(r.h1_mollified) << ',' << format_double(r.lp_inf_step) << ','
            << format_double(r.lp_inf_mollified) << ',' << format_double(r.lp_2_step) << '\n';
    return out.str();
}

nlohmann::json to_json(const MeyerConfig& cfg) {
    return {{"j_min", cfg.j_min},
            {"j_max", cfg.j_max},
            {"cells", cfg.cells},
            {"mollifier_radius", cfg.mollifier_radius},
            {"family_scales", cfg.family_scales},
            {"box", {-1.5, 2.5}},
            {"step_family", "2^j Haar blocks on [-1/2,1/2), sign (-1)^i, amplitude 1/(i+1)"}};
}

}  // namespace hardy
