#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardy {

/// Raised when an operation's precondition does not hold for its input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Point in R^n, n <= 2. The second coordinate is unused (zero) in 1D.
using Point = std::array<double, 2>;
/// Integer cell coordinates; the second entry is zero in 1D.
using CellIndex = std::array<int, 2>;

double distance(const Point& a, const Point& b);

/// Euclidean volume of the unit ball in R^n.
double unit_ball_volume(int n);

/**
 * Uniform grid on the box origin + [0, cells_per_side * h]^n.
 *
 * Cells are numbered row-major: in 2D the flat index is j * cells_per_side + i
 * where i runs along the first axis.
 */
class GridSpec {
public:
    GridSpec() = default;
    GridSpec(int dim, int cells_per_side, double h, Point origin = {0.0, 0.0});

    /// Grid covering [lo, lo + length)^n with the given number of cells per side.
    static GridSpec box(int dim, int cells_per_side, double lo, double length);

    int dim() const { return dim_; }
    int cells_per_side() const { return cells_; }
    double h() const { return h_; }
    const Point& origin() const { return origin_; }

    std::size_t cell_count() const;
    double cell_volume() const;
    double side_length() const { return cells_ * h_; }
    int max_level() const { return log2_cells_; }

    CellIndex coords(std::size_t flat) const;
    std::size_t flat(const CellIndex& c) const;
    bool contains(const CellIndex& c) const;
    Point center(std::size_t flat) const;
    Point center(const CellIndex& c) const;

    /// Spec with every cell split into 2^n children on the same box.
    GridSpec refined() const;

    bool operator==(const GridSpec& other) const;

private:
    int dim_ = 1;
    int cells_ = 1;
    double h_ = 1.0;
    Point origin_{0.0, 0.0};
    int log2_cells_ = 0;
};

/// Real samples at cell centers. Value semantics; all entries finite.
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(GridSpec spec);
    GridFunction(GridSpec spec, std::vector<double> values);

    template <class F>
    static GridFunction sample(const GridSpec& spec, F&& fn) {
        GridFunction out(spec);
        for (std::size_t c = 0; c < spec.cell_count(); ++c) out.values_[c] = fn(spec.center(c));
        return out;
    }

    const GridSpec& spec() const { return spec_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    double operator[](std::size_t c) const { return values_[c]; }
    double& operator[](std::size_t c) { return values_[c]; }

    bool is_zero() const;
    double max_abs() const;
    std::vector<std::size_t> support() const;

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(double s);
    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(double s, GridFunction a) { return a *= s; }

    /// Shift by whole cells; cells leaving the box are dropped, vacated ones zeroed.
    GridFunction shifted(const CellIndex& offset) const;

    /// Piecewise-constant prolongation onto spec().refined().
    GridFunction refined() const;

private:
    GridSpec spec_;
    std::vector<double> values_;
};

struct Ball {
    Point center{0.0, 0.0};
    double radius = 0.0;

    /// Closed-ball membership.
    bool contains(const Point& p) const;
    /// omega_n r^n.
    double euclidean_volume(int n) const;
    Ball scaled(double factor) const { return {center, radius * factor}; }
};

/// Cells whose centers lie in the closed ball.
std::vector<std::size_t> cells_in_ball(const GridSpec& spec, const Ball& b);
/// Cell-counted volume: (number of cell centers in B) * h^n.
double measured_volume(const GridSpec& spec, const Ball& b);

/// Dyadic cube of the grid box's tree: level j, index in [0, 2^j)^n.
struct DyadicCube {
    int level = 0;
    CellIndex index{0, 0};

    int side_cells(const GridSpec& spec) const;
    double side(const GridSpec& spec) const;
    double diam(const GridSpec& spec) const;
    Point center(const GridSpec& spec) const;
    /// First cell (lowest coordinates) covered by the cube.
    CellIndex first_cell(const GridSpec& spec) const;
    std::vector<std::size_t> cells(const GridSpec& spec) const;
    Ball circumscribed_ball(const GridSpec& spec) const;
    std::vector<DyadicCube> children(int dim) const;

    bool operator==(const DyadicCube& o) const { return level == o.level && index == o.index; }
};

/// All cubes of one level, row-major.
std::vector<DyadicCube> dyadic_cubes(const GridSpec& spec, int level);

/// Set of grid cells, the discrete stand-in for an open set.
class CellMask {
public:
    CellMask() = default;
    explicit CellMask(GridSpec spec, bool value = false);
    CellMask(GridSpec spec, std::vector<std::uint8_t> bits);

    const GridSpec& spec() const { return spec_; }
    bool operator[](std::size_t c) const { return bits_[c] != 0; }
    void set(std::size_t c, bool v = true) { bits_[c] = v ? 1 : 0; }
    std::size_t count() const;
    bool empty() const { return count() == 0; }
    bool full() const { return count() == bits_.size(); }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    bool operator==(const CellMask& o) const { return spec_ == o.spec_ && bits_ == o.bits_; }

private:
    GridSpec spec_;
    std::vector<std::uint8_t> bits_;
};

/// h^n * sum of values.
double integrate(const GridFunction& f);
/// Discrete L^q norm; q = infinity gives max |f|. Rejects q < 1.
double lq_norm(const GridFunction& f, double q);
inline double l1_norm(const GridFunction& f) { return lq_norm(f, 1.0); }
/// Average of f over the cells whose centers lie in B, cell-counted denominator.
double mean_on_ball(const GridFunction& f, const Ball& b);
/// Smallest ball centered at the support's bounding-box center that contains
/// every nonzero cell (as a closed box).
Ball enclosing_ball(const GridFunction& f);

/// Squared Euclidean distance between two closed cells, in units of h^2.
std::int64_t cell_gap_squared(const CellIndex& a, const CellIndex& b);

/// Distance from the closed cube Q to the nearest cell outside omega.
/// +infinity when omega is the whole grid. Throws if Q is not inside omega.
double cube_dist_to_complement(const DyadicCube& q, const CellMask& omega);

/**
 * Exact squared distance (units h^2) from every cell to the closest cell of
 * the complement of omega, measured between closed cells. Cells outside omega
 * get 0. Returns an empty vector if the complement is empty.
 */
std::vector<std::int64_t> complement_gap_squared(const CellMask& omega);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace hardy
