#pragma once

#include "geotherm/geometry/coset.hpp"
#include "geotherm/models/model_spec.hpp"

namespace geotherm::isometry {

using models::ModelSpec;
using num::Matrix;
using num::Vec;

struct OutsideCone : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// True when g preserves the model's invariant structure (bilinear form where
/// one exists, unit determinant otherwise).
bool is_group_element(const ModelSpec& spec, const Matrix& g, double tol = 1e-9);

/// Action of g on the solvable chart: factor g L(y) L(y)^T g^T back into
/// upper-triangular form and read off the new chart point.
Vec act(const ModelSpec& spec, const Matrix& g, const Vec& y);

/// Killing vector field of the full-basis generator J_Lambda at y, by
/// Richardson-extrapolated central differences of the one-parameter action.
Vec killing_field(const ModelSpec& spec, std::size_t lambda, const Vec& y);
Vec killing_field_generator(const ModelSpec& spec, const Matrix& generator, const Vec& y);

/// Closed-form Killing fields where the catalog has them (H2 and the Siegel
/// plane); falls back to the generic construction otherwise.
Vec killing_field_closed(const ModelSpec& spec, std::size_t lambda, const Vec& y);
bool has_closed_killing_fields(const ModelSpec& spec);

/// max over generator pairs of || [k_A, k_B] + f_AB^C k_C || at the sample
/// points (the fields of the left action close on minus the structure
/// constants). sign_flip negates one field as a negative control.
double killing_algebra_residual(const ModelSpec& spec, const std::vector<Vec>& points,
                                bool sign_flip = false);

/// Expansion of g^{-1} J_Lambda g over the full basis via dual-basis trace
/// projections: Adj(g)_Lambda^Sigma with g^{-1} J_Lambda g = Adj_L^S J_Sigma.
Matrix adjoint_matrix(const ModelSpec& spec, const Matrix& g);

/// Coefficient action tau -> Adj^T(g) tau on temperature vectors over the
/// full basis; as a matrix statement this is B -> g^{-1} B g.
Vec coadjoint_apply(const ModelSpec& spec, const Matrix& g, const Vec& tau);

/// H2 temperature reduction: find N = sqrt(delta^2-beta^2-zeta^2) and g in
/// SL(2,R) with g^{-1} B g = N X_c for the temperature matrix B.
struct H2Reduction {
    double norm;
    Matrix g;
};
H2Reduction reduce_temperature_h2(double delta, double beta, double zeta);

/// Temperature coefficients (alpha,beta,gamma) -> matrix over the H2 full
/// basis (X_c, T1, T2), and the (delta,beta,zeta) relabeling.
Matrix h2_temperature_matrix(double delta, double beta, double zeta);

}  // namespace geotherm::isometry
