#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hardy/atomic.hpp"
#include "hardy/grid.hpp"
#include "hardy/maximal.hpp"
#include "hardy/simplex.hpp"
#include "json.hpp"

namespace hardy {

inline constexpr double kMeanTol = 1e-10;  // relative to ||a||_1
inline constexpr double kSizeTol = 1e-9;
inline constexpr double kLpTol = 1e-9;

struct AtomCertificate {
    double q = 2.0;
    Ball ball;
    double mean_abs = 0.0;    ///< |integral of a|
    double mean_rel = 0.0;    ///< mean_abs / ||a||_1
    double size_ratio = 0.0;  ///< size of a over vol(B)^{-1}
    bool support_ok = false;
    bool valid = false;
};

/// Checks the (1,q)-atom conditions at grid scale with cell-counted volumes.
AtomCertificate atom_validate(const GridFunction& a, const Ball& B, double q);
AtomCertificate atom_validate(const SparseFunction& a, const GridSpec& spec, const Ball& B, double q);

/// Size of a on B relative to vol(B)^{-1}: 1 means exactly at the atom bound.
double size_ratio(const SparseFunction& a, const GridSpec& spec, const Ball& B, double q);

struct DictionaryOptions {
    double q = 2.0;
    int max_level = -1;  ///< finest cube level; -1 means single cells
    std::optional<DyadicCube> root;  ///< defaults to the whole grid box
    int pair_cells_cap = 16;         ///< adjacent-pair generators in balls this small
};

struct Generator {
    std::size_t ball = 0;
    std::string shape;  ///< "haar-x", "haar-y", "checker" or "pair"
    SparseFunction values;
};

/**
 * Finite set of (1,q)-atoms: two-block Haar shapes on every dyadic cube below
 * the root, supported in the cube's circumscribed ball, and adjacent-cell
 * pairs in small balls. Every generator sits exactly at the size bound.
 */
struct AtomDictionary {
    GridSpec spec;
    double q = 2.0;
    DyadicCube root;
    int max_level = 0;
    std::vector<Ball> balls;
    std::vector<DyadicCube> cubes;  ///< one per ball
    std::vector<Generator> generators;

    /// Sorted union of generator supports.
    std::vector<std::size_t> cells() const;
    nlohmann::json to_json() const;
};

AtomDictionary build_dictionary(const GridSpec& spec, const DictionaryOptions& opts = {});

/// Smallest dyadic cube of the grid tree containing supp f.
DyadicCube root_cube(const GridFunction& f);

/// Rank of the generator matrix on the covered cells.
std::size_t dictionary_rank(const AtomDictionary& dict);

/// ||grand_maximal(f)||_1.
double h1_proxy_norm(const GridFunction& f, const TestFamily& family);

/// Circumscribed balls of every dyadic cube of the grid.
std::vector<Ball> dyadic_balls(const GridSpec& spec);

/// max over balls of (1/|B|) sum_B |g - g_B| h^n. A lower bound for the sup
/// over all balls when the family is finite.
double bmo_norm(const GridFunction& g, const std::vector<Ball>& balls);
double bmo_norm(const GridFunction& g);

struct LpNormResult {
    double value = 0.0;
    std::vector<std::pair<std::size_t, double>> witness;  ///< (generator id, coefficient)
    std::vector<std::size_t> rows;  ///< cells carrying an equality constraint
    std::vector<double> dual;       ///< one per row
    double dual_value = 0.0;        ///< f . dual
    double max_dual_violation = 0.0;  ///< max_j |a_j . dual| - 1, clipped at 0
    std::size_t iterations = 0;
    std::string label = "dictionary-relative";

    nlohmann::json to_json() const;
};

/**
 * min sum |lambda_j| subject to sum lambda_j a_j = f over the dictionary. An
 * upper bound for the unrestricted finite atomic norm.
 */
LpNormResult finite_atomic_norm_lp(const GridFunction& f, const AtomDictionary& dict, const LpOptions& opts = {});

/// sum |lambda| over the terms of a decomposition, packaged tail included.
double decomposition_cost(const AtomicDecomposition& d);

}  // namespace hardy
