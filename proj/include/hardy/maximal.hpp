#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardy/grid.hpp"
#include "json.hpp"

namespace hardy {

/// Smooth compactly supported bump shapes used as test functions.
enum class Prototype {
    EvenBump,     ///< exp(-1/(1-|x|^2)) on |x| < 1
    ShiftedBump,  ///< even bump rescaled to the ball B(e_1/2, 1/2)
    AnnularBump,  ///< radial bump on the shell 1/4 < |x| < 1
};

std::string to_string(Prototype p);
Prototype prototype_from_string(const std::string& s);

/// Unnormalized prototype value at x in R^n. Zero outside the unit ball.
double prototype_raw(Prototype p, int n, const Point& x);

/// Reference grid [-1.25, 1.25]^n with the given number of cells per side.
GridSpec reference_grid(int n, int cells_per_side);
GridFunction sample_prototype(Prototype p, int n, int cells_per_side);

struct NormalizedPrototype {
    GridFunction phi;
    double K = 0.0;
};

/**
 * Divides a sampled bump by K = max over cells x and |beta| <= m of
 * (1+|x|)^m |D^beta phi(x)|, derivatives by second-order central differences.
 * Cells outside the box are treated as zero. Throws on the zero function.
 */
NormalizedPrototype normalize_into_am(const GridFunction& raw, int m);

/// The largest integer k with 2^k < x (x > 0).
int largest_k_below(double x);

/**
 * Finite sampled sub-family of the normalized test functions: prototypes with
 * their normalization constants, and a geometric list of dilation scales.
 */
struct TestFamily {
    struct Entry {
        Prototype formula;
        double K;
    };

    int n = 1;
    int m = 2;
    std::vector<Entry> prototypes;
    std::vector<double> scales;

    /// Normalized prototype i at x.
    double evaluate(std::size_t i, const Point& x) const;

    /**
     * Three prototypes normalized on a reference grid with `ref_cells` cells
     * per side, m = n + 1, and `num_scales` geometric scales from grid.h() to
     * 4 * r_max.
     */
    static TestFamily standard(const GridSpec& grid, double r_max, int num_scales = 40, int ref_cells = 0);

    nlohmann::json to_json() const;
    static TestFamily from_json(const nlohmann::json& j);
};

/// Pointwise max over the family of |phi_t * f|. A lower bound for the true
/// grand maximal function.
GridFunction grand_maximal(const GridFunction& f, const TestFamily& family);

/// max over prototypes and scales of the discrete L^1 mass of phi_t on this
/// grid; grand_maximal(f) <= this * max|f|.
double family_l1_bound(const TestFamily& family, const GridSpec& spec);

/// Centered Hardy-Littlewood maximal function over cell-quantized radii.
GridFunction hl_maximal(const GridFunction& f);

struct DecayReport {
    Ball ball;              ///< enclosing ball B of supp f
    double l1 = 0.0;        ///< ||f||_1
    double bound = 0.0;     ///< R^{-n} ||f||_1
    double max_ratio = 0.0; ///< max over cells outside 2B of Mf / bound
    std::size_t cells_checked = 0;
    int k_prime = 0;        ///< largest k with 2^k < R^{-n}
    int k_prime_scaled = 0; ///< largest k with 2^k < R^{-n} ||f||_1
    double outside_sup = 0.0;  ///< max of Mf over cells outside 2B
    /// Largest k with 2^k < outside_sup, capped at k_prime_scaled. Above it
    /// every level set lies inside 2B.
    int k_prime_measured = 0;
    bool passed = false;
};

/// Checks the decay of the maximal function outside 2B. `mf` may carry a
/// precomputed grand_maximal(f, family).
DecayReport decay_certificate(const GridFunction& f, const TestFamily& family,
                              const GridFunction* mf = nullptr);

}  // namespace hardy
