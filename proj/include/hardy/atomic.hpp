#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hardy/grid.hpp"
#include "hardy/maximal.hpp"
#include "hardy/whitney.hpp"
#include "json.hpp"

namespace hardy {

/// Values on a sorted list of cells.
struct SparseFunction {
    std::vector<std::uint32_t> cells;
    std::vector<double> values;

    double max_abs() const;
    double sum() const;
    GridFunction to_grid(const GridSpec& spec) const;
    void add_to(GridFunction& g, double scale = 1.0) const;
    static SparseFunction from_grid(const GridFunction& g);
};

struct AtomTerm {
    int level = 0;
    int index = 0;        ///< cube index within the level; -1 for packaged parts
    double lambda = 0.0;
    SparseFunction atom;  ///< normalized: max|atom| = 1 / vol(ball)
    Ball ball;            ///< smallest ball about the Whitney cube center holding the support
    Ball dep_ball;        ///< ball on which the term reads f
};

struct DecompositionConstants {
    double c_atom = 0.0;       ///< max ||a||_inf vol(B)
    double c_level = 0.0;      ///< max |lambda| ||a||_inf / 2^k
    int overlap = 0;           ///< max over k of the overlap of {B_i^k}
    int dep_overlap = 0;       ///< max over k of the overlap of {dep balls}
    double c_sum = 0.0;        ///< sum |lambda| / ||Mf||_1
    double c_young = 0.0;      ///< max over the family of ||phi_t||_1 on this grid
    double mf_l1 = 0.0;
    double f_l1 = 0.0;
    double eta = 0.0;
    double ball_factor = 0.0;
    double dep_factor = 0.0;
};

struct AtomicDecomposition {
    GridSpec spec;
    std::vector<AtomTerm> terms;
    int k_prime = 0;
    std::optional<int> k_double_prime;
    Ball support_ball;  ///< B, the enclosing ball of supp f
    GridFunction residual;
    DecompositionConstants constants;

    GridFunction reconstruct() const;
    double cost() const;
};

struct CzOptions {
    double eta = 0.125;
    double ball_factor = 2.0;  ///< B_i^k radius, in units of diam(Q)/2
    double dep_factor = 2.0;   ///< minimum enlargement of B_i^k for the dependency ball
};

/// Omega_k = {Mf > 2^k} for every k at which the set is nonempty and not the
/// whole grid. Nested decreasing in k.
std::map<int, CellMask> level_sets(const GridFunction& mf);

/**
 * Calderon-Zygmund atomic decomposition of a mean-zero f along the level sets
 * of its grand maximal function.
 *
 * For each level k' < k <= k'' a smooth partition of unity subordinate to the
 * Whitney balls of Omega_k defines the good part g_k; the difference
 * g_{k+1} - g_k is split into exactly mean-zero pieces, one per Whitney cube.
 * Everything at or below k' collapses to the single term h = g_{k'+1},
 * supported in 2B. The result reconstructs f to rounding.
 *
 * Throws on nonzero mean or when the maximal function does not decay outside 2B.
 */
AtomicDecomposition cz_decompose(const GridFunction& f, const TestFamily& family, const CzOptions& opts = {},
                                 const GridFunction* mf = nullptr);

struct HEllSplit {
    GridFunction h;
    GridFunction ell;
    double lambda_h = 0.0;      ///< ||h||_inf vol(2B): h / lambda_h is a (1,inf)-atom on 2B
    double c_h = 0.0;           ///< lambda_h / ||Mf||_1
    std::vector<std::size_t> leaking;  ///< cells outside 2B where h or ell is nonzero
    bool atom_ok = false;
};

/// h = sum of terms with k <= k', ell = the rest. Throws with the offending
/// cells if either part leaks outside 2B.
HEllSplit split_h_ell(const AtomicDecomposition& d);

/// Indices of level-k terms whose support is not inside their ball or whose
/// ball is not inside Omega_k = {mf > 2^k}.
std::vector<std::size_t> balls_outside_level_sets(const AtomicDecomposition& d, const GridFunction& mf);

struct DominationReport {
    double max_ratio = 0.0;
    bool zero_where_mf_zero = true;
};

/// max over cells of sum_{k>k'} |lambda a|(x) / Mf(x).
DominationReport pointwise_domination_check(const AtomicDecomposition& d, const GridFunction& mf);

struct Truncation {
    std::vector<AtomTerm> finite_part;
    std::size_t kept = 0;
    double tail_coefficient = 0.0;
    AtomTerm tail;                        ///< packaged tail (lambda = coefficient)
    std::vector<double> coefficient_trace;  ///< tail coefficient for N = 0, 1, ...
    std::vector<double> majorant_trace;     ///< same size-condition applied to sum |terms| of the tail
};

/**
 * Keeps the first N ell-terms (ordered by level, then cube) for the smallest N
 * whose tail, packaged as coefficient * (1,q)-atom on 2B, has coefficient < eps.
 */
Truncation truncate(const AtomicDecomposition& d, double eps, double q);

/// max |f(x) - f(y)| over cell pairs with |x - y| < delta.
double modulus_of_continuity(const GridFunction& f, double delta);
/// Largest grid-quantized delta with modulus_of_continuity(f, delta) < eps.
double continuity_radius(const GridFunction& f, double eps);

struct ContinuousSplit {
    double delta = 0.0;
    std::vector<AtomTerm> f1;
    std::vector<AtomTerm> f2;
    GridFunction ell2;
    double f2_sup = 0.0;        ///< max |ell_2|
    double f2_bound = 0.0;      ///< 6 * dep_overlap * (k'' - k') * eps
    double max_term_ratio = 0.0;  ///< max over F2 of ||lambda a||_inf / eps
    bool ok = false;
};

/// Per-term bound |lambda a| <= 6 * oscillation of f on the dependency ball.
inline constexpr double kLocalOscillationFactor = 6.0;

/**
 * Splits the ell-terms by dependency-ball diameter against the continuity
 * radius of eps. Terms in F2 read f only where it oscillates by less than eps.
 */
ContinuousSplit continuous_split(const AtomicDecomposition& d, const GridFunction& f, double eps);

struct FiniteOptions {
    double q = 2.0;   ///< infinity selects the continuous (1,inf) construction
    double eps = 1e-3;
    CzOptions cz;
};

/**
 * Finite atomic decomposition: h, a finite set of CZ atoms, and one packaged
 * remainder atom with small coefficient. Every atom is a (1,q)-atom.
 */
AtomicDecomposition finite_decomposition(const GridFunction& f, const TestFamily& family, const FiniteOptions& opts,
                                         const GridFunction* mf = nullptr);

nlohmann::json to_json(const AtomicDecomposition& d);

}  // namespace hardy
