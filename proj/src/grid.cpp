#include "hardy/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace hardy {

double distance(const Point& a, const Point& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

double unit_ball_volume(int n) {
    return n == 1 ? 2.0 : std::numbers::pi;
}

GridSpec::GridSpec(int dim, int cells_per_side, double h, Point origin)
    : dim_(dim), cells_(cells_per_side), h_(h), origin_(origin) {
    if (dim != 1 && dim != 2) throw Error("grid dimension must be 1 or 2");
    if (cells_per_side <= 0 || !std::has_single_bit(static_cast<unsigned>(cells_per_side)))
        throw Error("cells_per_side must be a positive power of two");
    if (!(h > 0.0) || !std::isfinite(h)) throw Error("grid spacing must be positive");
    if (dim == 1) origin_[1] = 0.0;
    log2_cells_ = std::countr_zero(static_cast<unsigned>(cells_per_side));
}

GridSpec GridSpec::box(int dim, int cells_per_side, double lo, double length) {
    return GridSpec(dim, cells_per_side, length / cells_per_side, {lo, dim == 2 ? lo : 0.0});
}

std::size_t GridSpec::cell_count() const {
    return dim_ == 1 ? static_cast<std::size_t>(cells_)
                     : static_cast<std::size_t>(cells_) * static_cast<std::size_t>(cells_);
}

double GridSpec::cell_volume() const { return dim_ == 1 ? h_ : h_ * h_; }

CellIndex GridSpec::coords(std::size_t flat) const {
    if (dim_ == 1) return {static_cast<int>(flat), 0};
    return {static_cast<int>(flat % cells_), static_cast<int>(flat / cells_)};
}

std::size_t GridSpec::flat(const CellIndex& c) const {
    if (dim_ == 1) return static_cast<std::size_t>(c[0]);
    return static_cast<std::size_t>(c[1]) * cells_ + static_cast<std::size_t>(c[0]);
}

bool GridSpec::contains(const CellIndex& c) const {
    if (c[0] < 0 || c[0] >= cells_) return false;
    if (dim_ == 1) return c[1] == 0;
    return c[1] >= 0 && c[1] < cells_;
}

Point GridSpec::center(const CellIndex& c) const {
    Point p{origin_[0] + (c[0] + 0.5) * h_, 0.0};
    if (dim_ == 2) p[1] = origin_[1] + (c[1] + 0.5) * h_;
    return p;
}

Point GridSpec::center(std::size_t flat_index) const { return center(coords(flat_index)); }

GridSpec GridSpec::refined() const { return GridSpec(dim_, cells_ * 2, h_ / 2.0, origin_); }

bool GridSpec::operator==(const GridSpec& o) const {
    return dim_ == o.dim_ && cells_ == o.cells_ && h_ == o.h_ && origin_ == o.origin_;
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(GridSpec spec) : spec_(spec), values_(spec.cell_count(), 0.0) {}

GridFunction::GridFunction(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.cell_count()) throw Error("value count does not match grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw Error("grid function values must be finite");
}

bool GridFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<std::size_t> GridFunction::support() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < values_.size(); ++c)
        if (values_[c] != 0.0) out.push_back(c);
    return out;
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    if (!(spec_ == o.spec_)) throw Error("grid mismatch");
    for (std::size_t c = 0; c < values_.size(); ++c) values_[c] += o.values_[c];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    if (!(spec_ == o.spec_)) throw Error("grid mismatch");
    for (std::size_t c = 0; c < values_.size(); ++c) values_[c] -= o.values_[c];
    return *this;
}

GridFunction& GridFunction::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

GridFunction GridFunction::shifted(const CellIndex& offset) const {
    GridFunction out(spec_);
    for (std::size_t c = 0; c < values_.size(); ++c) {
        CellIndex ci = spec_.coords(c);
        CellIndex t{ci[0] + offset[0], ci[1] + (spec_.dim() == 2 ? offset[1] : 0)};
        if (spec_.contains(t)) out.values_[spec_.flat(t)] = values_[c];
    }
    return out;
}

GridFunction GridFunction::refined() const {
    GridSpec fine = spec_.refined();
    GridFunction out(fine);
    for (std::size_t c = 0; c < out.size(); ++c) {
        CellIndex ci = fine.coords(c);
        out.values_[c] = values_[spec_.flat({ci[0] / 2, ci[1] / 2})];
    }
    return out;
}

// ---------------------------------------------------------------------------

bool Ball::contains(const Point& p) const { return distance(center, p) <= radius; }

double Ball::euclidean_volume(int n) const { return unit_ball_volume(n) * std::pow(radius, n); }

std::vector<std::size_t> cells_in_ball(const GridSpec& spec, const Ball& b) {
    std::vector<std::size_t> out;
    const double h = spec.h();
    auto range = [&](int axis) {
        int lo = static_cast<int>(std::floor((b.center[axis] - b.radius - spec.origin()[axis]) / h - 0.5));
        int hi = static_cast<int>(std::ceil((b.center[axis] + b.radius - spec.origin()[axis]) / h - 0.5));
        return std::pair{std::max(lo, 0), std::min(hi, spec.cells_per_side() - 1)};
    };
    auto [x0, x1] = range(0);
    if (spec.dim() == 1) {
        for (int i = x0; i <= x1; ++i)
            if (b.contains(spec.center(CellIndex{i, 0}))) out.push_back(static_cast<std::size_t>(i));
        return out;
    }
    auto [y0, y1] = range(1);
    for (int j = y0; j <= y1; ++j)
        for (int i = x0; i <= x1; ++i)
            if (b.contains(spec.center(CellIndex{i, j}))) out.push_back(spec.flat({i, j}));
    return out;
}

double measured_volume(const GridSpec& spec, const Ball& b) {
    return static_cast<double>(cells_in_ball(spec, b).size()) * spec.cell_volume();
}

// ---------------------------------------------------------------------------

int DyadicCube::side_cells(const GridSpec& spec) const { return spec.cells_per_side() >> level; }

double DyadicCube::side(const GridSpec& spec) const { return side_cells(spec) * spec.h(); }

double DyadicCube::diam(const GridSpec& spec) const {
    return std::sqrt(static_cast<double>(spec.dim())) * side(spec);
}

CellIndex DyadicCube::first_cell(const GridSpec& spec) const {
    const int s = side_cells(spec);
    return {index[0] * s, spec.dim() == 2 ? index[1] * s : 0};
}

Point DyadicCube::center(const GridSpec& spec) const {
    const double s = side(spec);
    Point p{spec.origin()[0] + (index[0] + 0.5) * s, 0.0};
    if (spec.dim() == 2) p[1] = spec.origin()[1] + (index[1] + 0.5) * s;
    return p;
}

std::vector<std::size_t> DyadicCube::cells(const GridSpec& spec) const {
    const int s = side_cells(spec);
    const CellIndex f = first_cell(spec);
    std::vector<std::size_t> out;
    if (spec.dim() == 1) {
        for (int i = 0; i < s; ++i) out.push_back(static_cast<std::size_t>(f[0] + i));
        return out;
    }
    out.reserve(static_cast<std::size_t>(s) * s);
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < s; ++i) out.push_back(spec.flat({f[0] + i, f[1] + j}));
    return out;
}

Ball DyadicCube::circumscribed_ball(const GridSpec& spec) const { return {center(spec), diam(spec) / 2.0}; }

std::vector<DyadicCube> DyadicCube::children(int dim) const {
    std::vector<DyadicCube> out;
    if (dim == 1) {
        for (int a = 0; a < 2; ++a) out.push_back({level + 1, {2 * index[0] + a, 0}});
        return out;
    }
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a) out.push_back({level + 1, {2 * index[0] + a, 2 * index[1] + b}});
    return out;
}

std::vector<DyadicCube> dyadic_cubes(const GridSpec& spec, int level) {
    std::vector<DyadicCube> out;
    const int m = 1 << level;
    if (spec.dim() == 1) {
        for (int i = 0; i < m; ++i) out.push_back({level, {i, 0}});
        return out;
    }
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) out.push_back({level, {i, j}});
    return out;
}

// ---------------------------------------------------------------------------

CellMask::CellMask(GridSpec spec, bool value) : spec_(spec), bits_(spec.cell_count(), value ? 1 : 0) {}

CellMask::CellMask(GridSpec spec, std::vector<std::uint8_t> bits) : spec_(spec), bits_(std::move(bits)) {
    if (bits_.size() != spec_.cell_count()) throw Error("mask size does not match grid");
    for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t CellMask::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

// ---------------------------------------------------------------------------

double integrate(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values()) s += v;
    return s * f.spec().cell_volume();
}

double lq_norm(const GridFunction& f, double q) {
    if (!(q >= 1.0)) throw Error("lq_norm requires q >= 1");
    if (std::isinf(q)) return f.max_abs();
    double s = 0.0;
    if (q == 1.0) {
        for (double v : f.values()) s += std::abs(v);
        return s * f.spec().cell_volume();
    }
    if (q == 2.0) {
        for (double v : f.values()) s += v * v;
        return std::sqrt(s * f.spec().cell_volume());
    }
    for (double v : f.values()) s += std::pow(std::abs(v), q);
    return std::pow(s * f.spec().cell_volume(), 1.0 / q);
}

double mean_on_ball(const GridFunction& f, const Ball& b) {
    const auto cells = cells_in_ball(f.spec(), b);
    if (cells.empty()) throw Error("empty ball at this resolution");
    double s = 0.0;
    for (auto c : cells) s += f[c];
    return s / static_cast<double>(cells.size());
}

Ball enclosing_ball(const GridFunction& f) {
    const auto& spec = f.spec();
    const auto supp = f.support();
    if (supp.empty()) throw Error("enclosing_ball of the zero function");
    CellIndex lo{spec.cells_per_side(), spec.cells_per_side()}, hi{-1, -1};
    for (auto c : supp) {
        CellIndex ci = spec.coords(c);
        for (int a = 0; a < 2; ++a) {
            lo[a] = std::min(lo[a], ci[a]);
            hi[a] = std::max(hi[a], ci[a]);
        }
    }
    const double h = spec.h();
    Point center{spec.origin()[0] + 0.5 * (lo[0] + hi[0] + 1) * h, 0.0};
    if (spec.dim() == 2) center[1] = spec.origin()[1] + 0.5 * (lo[1] + hi[1] + 1) * h;
    // Farthest cell corner from the center.
    double r = 0.0;
    for (auto c : supp) {
        Point p = spec.center(c);
        double dx = std::abs(p[0] - center[0]) + h / 2.0;
        double dy = spec.dim() == 2 ? std::abs(p[1] - center[1]) + h / 2.0 : 0.0;
        r = std::max(r, std::hypot(dx, dy));
    }
    return {center, r};
}

std::int64_t cell_gap_squared(const CellIndex& a, const CellIndex& b) {
    std::int64_t s = 0;
    for (int k = 0; k < 2; ++k) {
        std::int64_t g = std::max<std::int64_t>(0, std::abs(a[k] - b[k]) - 1);
        s += g * g;
    }
    return s;
}

namespace {

std::int64_t gap_sq_1d(int delta) {
    std::int64_t g = std::max(0, std::abs(delta) - 1);
    return g * g;
}

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max() / 4;

}  // namespace

std::vector<std::int64_t> complement_gap_squared(const CellMask& omega) {
    const auto& spec = omega.spec();
    const int n = spec.cells_per_side();
    if (omega.full()) return {};

    // Separable min-plus transform: the gap metric splits into per-axis terms.
    std::vector<std::int64_t> along_x(spec.cell_count(), kUnreached);
    const int rows = spec.dim() == 2 ? n : 1;
    for (int j = 0; j < rows; ++j) {
        std::vector<int> comp;
        for (int i = 0; i < n; ++i)
            if (!omega[spec.flat({i, j})]) comp.push_back(i);
        if (comp.empty()) continue;
        std::size_t k = 0;
        for (int i = 0; i < n; ++i) {
            while (k + 1 < comp.size() && std::abs(comp[k + 1] - i) <= std::abs(comp[k] - i)) ++k;
            along_x[spec.flat({i, j})] = gap_sq_1d(i - comp[k]);
        }
    }
    if (spec.dim() == 1) return along_x;

    std::vector<std::int64_t> out(spec.cell_count(), kUnreached);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::int64_t best = kUnreached;
            for (int jj = 0; jj < n; ++jj) {
                std::int64_t v = along_x[spec.flat({i, jj})];
                if (v == kUnreached) continue;
                best = std::min(best, v + gap_sq_1d(j - jj));
            }
            out[spec.flat({i, j})] = best;
        }
    return out;
}

double cube_dist_to_complement(const DyadicCube& q, const CellMask& omega) {
    const auto& spec = omega.spec();
    const auto cells = q.cells(spec);
    for (auto c : cells)
        if (!omega[c]) throw Error("cube is not contained in omega");
    if (omega.full()) return kInfinity;
    std::int64_t best = kUnreached;
    for (std::size_t c = 0; c < spec.cell_count(); ++c) {
        if (omega[c]) continue;
        const CellIndex cc = spec.coords(c);
        for (auto p : cells) best = std::min(best, cell_gap_squared(spec.coords(p), cc));
    }
    return std::sqrt(static_cast<double>(best)) * spec.h();
}

}  // namespace hardy
