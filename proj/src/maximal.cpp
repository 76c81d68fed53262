#include "hardy/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hardy {

namespace {

double bump1(double s) {
    // exp(-1/(1-s^2)) on |s| < 1
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

// Default reference resolution: fine enough that K is stable to well under 1%.
int default_ref_cells(int n) { return n == 1 ? 4096 : 512; }

}  // namespace

std::string to_string(Prototype p) {
    switch (p) {
        case Prototype::EvenBump: return "even_bump";
        case Prototype::ShiftedBump: return "shifted_bump";
        case Prototype::AnnularBump: return "annular_bump";
    }
    return "unknown";
}

Prototype prototype_from_string(const std::string& s) {
    if (s == "even_bump") return Prototype::EvenBump;
    if (s == "shifted_bump") return Prototype::ShiftedBump;
    if (s == "annular_bump") return Prototype::AnnularBump;
    throw Error("unknown prototype formula '" + s + "'");
}

double prototype_raw(Prototype p, int n, const Point& x) {
    const double r = n == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
    switch (p) {
        case Prototype::EvenBump: return bump1(r);
        case Prototype::ShiftedBump: {
            const double dx = x[0] - 0.5;
            const double dy = n == 2 ? x[1] : 0.0;
            return bump1(std::hypot(dx, dy) / 0.5);
        }
        case Prototype::AnnularBump: return bump1((r - 0.625) / 0.375);
    }
    return 0.0;
}

GridSpec reference_grid(int n, int cells_per_side) { return GridSpec::box(n, cells_per_side, -1.25, 2.5); }

GridFunction sample_prototype(Prototype p, int n, int cells_per_side) {
    return GridFunction::sample(reference_grid(n, cells_per_side),
                                [&](const Point& x) { return prototype_raw(p, n, x); });
}

namespace {

// Applies the order-`order` central difference along `axis`.
std::vector<double> difference(const GridSpec& spec, const std::vector<double>& v, int axis, int order) {
    const int n = spec.cells_per_side();
    const double h = spec.h();
    auto at = [&](const std::vector<double>& w, CellIndex c) {
        return spec.contains(c) ? w[spec.flat(c)] : 0.0;
    };
    std::vector<double> cur = v;
    auto step = [&](bool second) {
        std::vector<double> next(cur.size());
        for (std::size_t k = 0; k < cur.size(); ++k) {
            CellIndex c = spec.coords(k), lo = c, hi = c;
            lo[axis] -= 1;
            hi[axis] += 1;
            next[k] = second ? (at(cur, hi) - 2.0 * cur[k] + at(cur, lo)) / (h * h)
                             : (at(cur, hi) - at(cur, lo)) / (2.0 * h);
        }
        cur = std::move(next);
    };
    (void)n;
    for (int k = 0; k < order / 2; ++k) step(true);
    if (order % 2 == 1) step(false);
    return cur;
}

}  // namespace

NormalizedPrototype normalize_into_am(const GridFunction& raw, int m) {
    const auto& spec = raw.spec();
    if (m <= spec.dim()) throw Error("normalize_into_am requires m > n");
    if (raw.is_zero()) throw Error("cannot normalize the zero function");

    std::vector<double> weight(raw.size());
    for (std::size_t c = 0; c < raw.size(); ++c) {
        Point x = spec.center(c);
        weight[c] = std::pow(1.0 + std::hypot(x[0], x[1]), m);
    }
    const std::vector<double> base(raw.values().begin(), raw.values().end());
    double K = 0.0;
    auto sweep = [&](const std::vector<double>& d) {
        for (std::size_t c = 0; c < d.size(); ++c) K = std::max(K, weight[c] * std::abs(d[c]));
    };
    if (spec.dim() == 1) {
        for (int a = 0; a <= m; ++a) sweep(difference(spec, base, 0, a));
    } else {
        for (int a = 0; a <= m; ++a) {
            auto dx = difference(spec, base, 0, a);
            for (int b = 0; a + b <= m; ++b) sweep(difference(spec, dx, 1, b));
        }
    }
    NormalizedPrototype out{raw, K};
    out.phi *= 1.0 / K;
    return out;
}

int largest_k_below(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw Error("largest_k_below requires a positive finite value");
    int e = 0;
    const double mant = std::frexp(x, &e);  // x = mant * 2^e, mant in [0.5, 1)
    return mant == 0.5 ? e - 2 : e - 1;
}

// ---------------------------------------------------------------------------

double TestFamily::evaluate(std::size_t i, const Point& x) const {
    const auto& e = prototypes[i];
    return prototype_raw(e.formula, n, x) / e.K;
}

TestFamily TestFamily::standard(const GridSpec& grid, double r_max, int num_scales, int ref_cells) {
    TestFamily fam;
    fam.n = grid.dim();
    fam.m = fam.n + 1;
    if (ref_cells <= 0) ref_cells = default_ref_cells(fam.n);
    for (Prototype p : {Prototype::EvenBump, Prototype::ShiftedBump, Prototype::AnnularBump}) {
        auto norm = normalize_into_am(sample_prototype(p, fam.n, ref_cells), fam.m);
        fam.prototypes.push_back({p, norm.K});
    }
    const double t0 = grid.h(), t1 = 4.0 * r_max;
    if (num_scales < 1) throw Error("family needs at least one scale");
    if (num_scales == 1 || t1 <= t0) {
        fam.scales = {t0};
    } else {
        const double ratio = std::pow(t1 / t0, 1.0 / (num_scales - 1));
        for (int k = 0; k < num_scales; ++k) fam.scales.push_back(t0 * std::pow(ratio, k));
        fam.scales.back() = t1;
    }
    return fam;
}

nlohmann::json TestFamily::to_json() const {
    nlohmann::json protos = nlohmann::json::array();
    for (const auto& e : prototypes) protos.push_back({{"formula", to_string(e.formula)}, {"K", e.K}});
    return {{"n", n}, {"m", m}, {"prototypes", protos}, {"scales", scales}};
}

TestFamily TestFamily::from_json(const nlohmann::json& j) {
    TestFamily fam;
    fam.n = j.at("n").get<int>();
    fam.m = j.at("m").get<int>();
    for (const auto& p : j.at("prototypes"))
        fam.prototypes.push_back({prototype_from_string(p.at("formula").get<std::string>()), p.at("K").get<double>()});
    fam.scales = j.at("scales").get<std::vector<double>>();
    if (fam.m <= fam.n) throw Error("family requires m > n");
    return fam;
}

// ---------------------------------------------------------------------------

namespace {

// Kernel h^n phi_t(d h) for offsets d in [-w, w]^n, row-major.
struct SampledKernel {
    int w = 0;
    std::vector<double> values;
};

SampledKernel sample_kernel(const TestFamily& fam, std::size_t p, double t, const GridSpec& spec) {
    const double h = spec.h();
    const int n = spec.dim();
    SampledKernel k;
    k.w = std::min(static_cast<int>(std::ceil(t / h)), spec.cells_per_side());
    const int side = 2 * k.w + 1;
    const double scale = std::pow(h / t, n);
    k.values.assign(n == 1 ? side : side * side, 0.0);
    for (int dy = (n == 2 ? -k.w : 0); dy <= (n == 2 ? k.w : 0); ++dy)
        for (int dx = -k.w; dx <= k.w; ++dx) {
            Point z{dx * h / t, dy * h / t};
            const std::size_t idx = n == 1 ? dx + k.w : (dy + k.w) * side + (dx + k.w);
            k.values[idx] = scale * fam.evaluate(p, z);
        }
    return k;
}

void check_family(const TestFamily& fam, const GridSpec& spec) {
    if (fam.scales.empty()) throw Error("test family has no scales");
    if (fam.prototypes.empty()) throw Error("test family has no prototypes");
    if (fam.n != spec.dim()) throw Error("test family dimension does not match grid");
}

}  // namespace

GridFunction grand_maximal(const GridFunction& f, const TestFamily& family) {
    const auto& spec = f.spec();
    check_family(family, spec);
    GridFunction out(spec);
    const auto supp = f.support();
    if (supp.empty()) return out;
    const int N = spec.cells_per_side();
    std::vector<double> conv(spec.cell_count());

    for (std::size_t p = 0; p < family.prototypes.size(); ++p)
        for (double t : family.scales) {
            const auto k = sample_kernel(family, p, t, spec);
            const int side = 2 * k.w + 1;
            std::fill(conv.begin(), conv.end(), 0.0);
            for (auto y : supp) {
                const double fy = f[y];
                const CellIndex cy = spec.coords(y);
                if (spec.dim() == 1) {
                    const int lo = std::max(-k.w, -cy[0]), hi = std::min(k.w, N - 1 - cy[0]);
                    const double* kv = k.values.data() + k.w;
                    double* out_row = conv.data() + cy[0];
                    for (int d = lo; d <= hi; ++d) out_row[d] += kv[d] * fy;
                } else {
                    const int lox = std::max(-k.w, -cy[0]), hix = std::min(k.w, N - 1 - cy[0]);
                    const int loy = std::max(-k.w, -cy[1]), hiy = std::min(k.w, N - 1 - cy[1]);
                    for (int dy = loy; dy <= hiy; ++dy) {
                        const double* kv = k.values.data() + (dy + k.w) * side + k.w;
                        double* out_row = conv.data() + static_cast<std::size_t>(cy[1] + dy) * N + cy[0];
                        for (int dx = lox; dx <= hix; ++dx) out_row[dx] += kv[dx] * fy;
                    }
                }
            }
            for (std::size_t c = 0; c < conv.size(); ++c) out[c] = std::max(out[c], std::abs(conv[c]));
        }
    return out;
}

double family_l1_bound(const TestFamily& family, const GridSpec& spec) {
    check_family(family, spec);
    double best = 0.0;
    for (std::size_t p = 0; p < family.prototypes.size(); ++p)
        for (double t : family.scales) {
            const auto k = sample_kernel(family, p, t, spec);
            double s = 0.0;
            for (double v : k.values) s += std::abs(v);
            best = std::max(best, s);
        }
    return best;
}

GridFunction hl_maximal(const GridFunction& f) {
    const auto& spec = f.spec();
    const int N = spec.cells_per_side();
    GridFunction out(spec);
    if (spec.dim() == 1) {
        for (int x = 0; x < N; ++x) {
            double sum = std::abs(f[x]);
            int count = 1;
            double best = sum;
            for (int d = 1; d < N; ++d) {
                if (x - d >= 0) sum += std::abs(f[x - d]), ++count;
                if (x + d < N) sum += std::abs(f[x + d]), ++count;
                best = std::max(best, sum / count);
            }
            out[x] = best;
        }
        return out;
    }
    // Offsets sorted by distance; every distinct distance closes a ball.
    struct Off {
        int dx, dy;
        long r2;
    };
    std::vector<Off> offs;
    for (int dy = -(N - 1); dy <= N - 1; ++dy)
        for (int dx = -(N - 1); dx <= N - 1; ++dx) offs.push_back({dx, dy, long(dx) * dx + long(dy) * dy});
    std::stable_sort(offs.begin(), offs.end(), [](const Off& a, const Off& b) { return a.r2 < b.r2; });
    for (std::size_t c = 0; c < spec.cell_count(); ++c) {
        const CellIndex ci = spec.coords(c);
        double sum = 0.0, best = 0.0;
        int count = 0;
        for (std::size_t k = 0; k < offs.size(); ++k) {
            CellIndex t{ci[0] + offs[k].dx, ci[1] + offs[k].dy};
            if (spec.contains(t)) sum += std::abs(f[spec.flat(t)]), ++count;
            const bool closes = k + 1 == offs.size() || offs[k + 1].r2 != offs[k].r2;
            if (closes && count > 0) best = std::max(best, sum / count);
        }
        out[c] = best;
    }
    return out;
}

DecayReport decay_certificate(const GridFunction& f, const TestFamily& family, const GridFunction* mf) {
    DecayReport rep;
    rep.ball = enclosing_ball(f);
    const int n = f.spec().dim();
    const double R = rep.ball.radius;
    rep.l1 = l1_norm(f);
    rep.bound = std::pow(R, -n) * rep.l1;
    rep.k_prime = largest_k_below(std::pow(R, -n));
    rep.k_prime_scaled = largest_k_below(rep.bound);

    GridFunction local;
    if (!mf) {
        local = grand_maximal(f, family);
        mf = &local;
    }
    const Ball twice = rep.ball.scaled(2.0);
    for (std::size_t c = 0; c < f.size(); ++c) {
        if (twice.contains(f.spec().center(c))) continue;
        ++rep.cells_checked;
        rep.outside_sup = std::max(rep.outside_sup, (*mf)[c]);
    }
    if (rep.cells_checked == 0) throw Error("insufficient margin: no cells outside 2B");
    rep.max_ratio = rep.outside_sup / rep.bound;
    rep.k_prime_measured =
        rep.outside_sup > 0.0 ? std::min(rep.k_prime_scaled, largest_k_below(rep.outside_sup)) : rep.k_prime_scaled;
    rep.passed = rep.max_ratio <= 1.0;
    return rep;
}

}  // namespace hardy
