#pragma once

#include <functional>

#include "geotherm/numkit/matrix.hpp"

namespace geotherm::thermo {

using num::Matrix;
using num::Vec;

struct OutsideCone : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parametric family beta -> Z(beta) with a cone membership predicate.
struct StochasticModel {
    std::function<double(const Vec&)> partition;
    std::function<bool(const Vec&)> in_cone;
    std::size_t parameter_dim = 0;
};

/// -log Z(beta).
double stochastic_hamiltonian(const StochasticModel& m, const Vec& beta);

/// Legendre transform H - beta . grad H, with the gradient by central
/// differences.
double shannon_information(const StochasticModel& m, const Vec& beta);

/// Hessian of the stochastic Hamiltonian (the information metric).
Matrix hessian_metric(const StochasticModel& m, const Vec& beta);

/// --- closed forms for the hyperbolic-plane temperature space ------------
double h2_stochastic_hamiltonian(double delta, double beta, double zeta);
double h2_shannon_information(double delta, double beta, double zeta);
/// Thermo metric over (delta, beta, zeta), equal to the Hessian above.
Matrix h2_thermo_metric(const Vec& b);
num::MatrixC h2_thermo_metric_c(const std::vector<std::complex<double>>& b);
/// Orthonormal frame with eta = -identity; rows are frame covectors.
Matrix h2_thermo_dreibein(const Vec& b);

StochasticModel h2_stochastic_model();
StochasticModel gds_sl3_stochastic_model(double volume);

}  // namespace geotherm::thermo
