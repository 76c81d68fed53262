#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hardy/grid.hpp"
#include "json.hpp"

namespace hardy {

/// Exact positive rational, used for the Whitney proportionality constant.
struct Rational {
    std::int64_t num = 1;
    std::int64_t den = 8;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    /// Exact for dyadic inputs; otherwise rounded to a denominator of 2^30.
    static Rational from_double(double x);
};

struct WhitneyCube {
    DyadicCube cube;
    std::int64_t gap2 = 0;  ///< squared distance to the complement, units h^2
    double dist = 0.0;      ///< the same distance in length units
};

/**
 * Dyadic Whitney cubes of a cell mask plus the boundary layer: cells of omega
 * too close to the complement for any dyadic cube through them to satisfy
 * diam <= eta * dist at this resolution. Cubes and layer cells partition omega.
 */
struct WhitneyCover {
    CellMask omega;
    Rational eta;
    std::vector<WhitneyCube> cubes;
    std::vector<std::size_t> layer;

    /// Union of the cubes (omega minus the boundary layer).
    CellMask covered() const;
};

/// Greedy dyadic descent. Requires a nonempty complement; never throws for a
/// missing resolution, leaving unresolved cells in the layer instead.
WhitneyCover whitney_cover(const CellMask& omega, Rational eta);

/// As whitney_cover, but requires omega nonempty, eta in (0,1), and at least
/// one certified cube ("resolution too coarse for eta" otherwise).
WhitneyCover whitney_decompose(const CellMask& omega, double eta);

/// diam(Q) <= eta * dist(Q, omega^c), exact integer arithmetic.
bool whitney_lower_holds(int dim, int side_cells, std::int64_t gap2, Rational eta);
/// eta * dist(Q, omega^c) <= 4 diam(Q), exact integer arithmetic.
bool whitney_upper_holds(int dim, int side_cells, std::int64_t gap2, Rational eta);

struct WhitneyReport {
    bool lower_ok = true;
    bool upper_ok = true;
    bool partition_ok = true;  ///< cubes and layer tile omega exactly, disjointly
    std::size_t cube_count = 0;
    std::size_t layer_cells = 0;
    double max_upper_ratio = 0.0;  ///< max eta*dist/diam over cubes

    bool ok() const { return lower_ok && upper_ok && partition_ok; }
};

/// Recomputes every distance by brute force over the complement and checks the
/// two-sided proportionality and the partition property.
WhitneyReport verify_cover(const WhitneyCover& cover);

struct ExpandedBalls {
    std::vector<Ball> balls;
    std::vector<std::size_t> escaping;  ///< balls containing a cell center outside omega
};

/// Ball centered at each cube with radius factor * diam / 2.
ExpandedBalls expanded_balls(const WhitneyCover& cover, double factor);

/// Max over cell centers of the number of closed balls containing it.
int overlap_count(const GridSpec& spec, std::span<const Ball> balls);

nlohmann::json to_json(const WhitneyCover& cover);

}  // namespace hardy
