#pragma once

#include "geotherm/models/model_spec.hpp"

namespace geotherm::coset {

using models::ModelSpec;
using num::Matrix;
using num::Vec;

struct NotInImage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coframe data at a point: rows of e_matrix are the left-invariant form
/// coefficients e^A_alpha, v_matrix = nu * e_matrix is the vielbein.
struct CoFrame {
    Matrix e_matrix;
    Matrix v_matrix;
};

/// Upper-triangular coset representative L(Y) of the solvable chart point.
Matrix coset_rep(const ModelSpec& spec, const Vec& y);

/// Inverse of the chart map: recover Y from an upper-triangular L in the
/// image of coset_rep. Diagonal logs first, then the nilpotent entries.
Vec sigma_log(const ModelSpec& spec, const Matrix& l_tri);

CoFrame left_invariant_forms(const ModelSpec& spec, const Vec& y);

/// ||de^A + 1/2 f_BC^A e^B ^ e^C||_inf at the point, with the exterior
/// derivative taken by finite differences of the closed-form coframe.
double maurer_cartan_residual(const ModelSpec& spec, const Vec& y);
/// Same residual with the structure constants replaced by f + perturbation
/// (negative control hook).
double maurer_cartan_residual_perturbed(const ModelSpec& spec, const Vec& y,
                                        double perturbation);

/// Metric g = e^T kappa e.
Matrix metric_at(const ModelSpec& spec, const Vec& y);

/// Kahler two-form as the evaluation matrix K(e_a, e_b) = 2 (V^T A V)_ab,
/// where A is the normalized adjoint action of the compact center on the
/// coset directions.
Matrix kahler_form_at(const ModelSpec& spec, const Vec& y);

/// Complex structure J = (V^T A V) g^{-1}; squares to minus the identity.
Matrix complex_structure_at(const ModelSpec& spec, const Vec& y);

/// Pfaffian of the Kahler evaluation matrix; constant over the chart.
double volume_density(const ModelSpec& spec, const Vec& y);

}  // namespace geotherm::coset
