#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hardy/atomic.hpp"
#include "hardy/grid.hpp"
#include "hardy/maximal.hpp"
#include "hardy/norms.hpp"
#include "json.hpp"

namespace hardy {

/**
 * Linear operator on grid functions: a dense matrix acting on cell values, or
 * a translation-invariant kernel, Tf(x) = sum_y h^n k(x - y) f(y), with no
 * wrap-around at the box edge.
 */
class OperatorSpec {
public:
    enum class Kind { Dense, Kernel };

    static OperatorSpec dense(GridSpec spec, std::vector<double> matrix);
    /// Kernel values at integer offsets -radius..radius per axis, row-major.
    static OperatorSpec kernel(GridSpec spec, int radius, std::vector<double> values);
    static OperatorSpec identity(GridSpec spec);
    static OperatorSpec zero(GridSpec spec);

    Kind kind() const { return kind_; }
    const GridSpec& spec() const { return spec_; }
    int radius() const { return radius_; }
    const std::vector<double>& data() const { return data_; }

    /// Matrix with the same action (kernel operators only on small grids).
    OperatorSpec to_dense() const;

    nlohmann::json to_json() const;
    static OperatorSpec from_json(const nlohmann::json& j);

private:
    Kind kind_ = Kind::Dense;
    GridSpec spec_;
    int radius_ = 0;
    std::vector<double> data_;
};

GridFunction apply(const OperatorSpec& T, const GridFunction& f);
/// Adjoint for <u, v> = h^n sum u v.
GridFunction adjoint(const OperatorSpec& T, const GridFunction& f);
/// Action on a sparse function.
GridFunction apply(const OperatorSpec& T, const SparseFunction& a);

/// Odd kernel 1/x for h <= |x| <= W, zero elsewhere. 1D only.
OperatorSpec hilbert_kernel(const GridSpec& spec, double W);

/// Dense matrix with independent uniform(-1, 1) entries scaled by `scale`.
OperatorSpec random_dense(const GridSpec& spec, std::uint64_t seed, double scale = 1.0);

struct AtomSupremum {
    double value = 0.0;            ///< max ||Ta||_1: a lower bound for the true sup
    double dictionary_value = 0.0; ///< over dictionary generators only
    std::size_t samples = 0;
};

/// Random valid (1,q)-atom: random mean-zero values on a random dictionary
/// ball, scaled to the size bound.
SparseFunction random_atom(const AtomDictionary& dict, std::mt19937_64& rng, std::size_t* ball = nullptr);

AtomSupremum atom_supremum(const OperatorSpec& T, const AtomDictionary& dict, std::size_t extra_samples,
                           std::uint64_t seed);

/**
 * max ||Ta||_1 over every (1,q)-atom on the dictionary balls, exact: the
 * maximum of a convex function over each ball's atom set is attained at an
 * extreme point, enumerated through sign vectors. Small grids only.
 */
double exact_atom_bound(const OperatorSpec& T, const AtomDictionary& dict);

/// Upper bound for the same quantity at any size, from a row-wise
/// Cauchy-Schwarz (q = 2) or Holder (q = inf) estimate on each ball.
double certified_atom_upper_bound(const OperatorSpec& T, const AtomDictionary& dict);

struct BoundChain {
    double tf_l1 = 0.0;        ///< ||T~f||_1
    double a_sampled = 0.0;    ///< the supplied estimate
    double a_est = 0.0;        ///< a_sampled, raised to cover the decomposition's own atoms
    double cost = 0.0;         ///< sum |lambda|
    double h1_proxy = 0.0;
    double c_sum = 0.0;        ///< cost / h1_proxy
    bool first_ok = false;     ///< ||T~f||_1 <= A_est * cost
    bool second_ok = false;    ///< A_est * cost <= A_est * c_sum * h1_proxy
    bool termwise_ok = false;  ///< ||T a_j||_1 <= A_est for every term
};

struct Extension {
    GridFunction tf;
    AtomicDecomposition decomposition;
    BoundChain chain;
};

/// T~f = sum lambda_j T a_j over a finite decomposition of f.
Extension extend_apply(const OperatorSpec& T, const GridFunction& f, const TestFamily& family,
                       const FiniteOptions& opts, double a_est);

struct BmoDualReport {
    double bmo = 0.0;
    double f_sup = 0.0;
    double a_bound = 0.0;
    double ratio = 0.0;  ///< bmo / (a_bound * f_sup)
    bool ok = false;     ///< ratio <= 2
};

/// BMO norm of T*f over the dictionary balls against 2 A ||f||_inf, where A
/// bounds ||Ta||_1 over atoms on those balls.
BmoDualReport bmo_dual_check(const OperatorSpec& T, const GridFunction& f_inf, const AtomDictionary& dict,
                             double a_bound);

struct ConsistencyReport {
    double difference = 0.0;  ///< ||Tf - T~f||_1
    double tf_l1 = 0.0;
    double residual_l1 = 0.0;
    double threshold = 0.0;
    bool ok = false;
};

ConsistencyReport consistency_check(const OperatorSpec& T, const GridFunction& f, const TestFamily& family,
                                    const FiniteOptions& opts, double a_est);

struct MeyerConfig {
    int j_min = 0;
    int j_max = 4;
    int cells = 1024;
    double mollifier_radius = 0.0078125;
    int family_scales = 40;
};

struct MeyerRow {
    int j = 0;
    double h1_step = 0.0;
    double h1_mollified = 0.0;
    double lp_inf_step = 0.0;
    double lp_inf_mollified = 0.0;
    double lp_2_step = 0.0;
    double rho_inf_step = 0.0;
    double rho_inf_mollified = 0.0;
    double rho_2_step = 0.0;
};

/// f_j: 2^j Haar blocks on [-1/2, 1/2) with signs (-1)^i and amplitudes 1/(i+1),
/// on the box [-3/2, 5/2).
GridFunction meyer_step(const GridSpec& spec, int j);
/// Convolution with a normalized bump of the given radius.
GridFunction mollify(const GridFunction& f, double radius);

std::vector<MeyerRow> meyer_ratio_experiment(const MeyerConfig& cfg);
std::string meyer_csv(const std::vector<MeyerRow>& rows);
nlohmann::json to_json(const MeyerConfig& cfg);

}  // namespace hardy
