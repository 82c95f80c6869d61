#pragma once

#include <array>
#include <functional>

#include "geotherm/gibbs/souriau.hpp"
#include "geotherm/models/model_spec.hpp"

namespace geotherm::gds {

using gibbs::PartitionEvaluation;
using models::ModelSpec;
using num::Matrix;
using num::Vec;

struct PhasePoint {
    Vec y;  // chart coordinates
    Vec p;  // anholonomic momenta
};

struct SingularMomentum : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutsideCone : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quadratic flow Hamiltonian 1/2 kappa^{AB} p_A p_B.
double gds_hamiltonian(const ModelSpec& spec, const Vec& p);

/// Symplectic form on phase space in the (p, y) block ordering, and its
/// inverse bivector; omega * pi = identity.
Matrix symplectic_form_gds(const ModelSpec& spec, const PhasePoint& pt);
Matrix poisson_bivector(const ModelSpec& spec, const PhasePoint& pt);

using PhaseFunction = std::function<double(const PhasePoint&)>;

/// Full phase-space Poisson bracket; the momentum-only reduction carries the
/// same -2 normalization, so {p_A, p_B} = -2 f_AB^C p_C.
double poisson_bracket(const ModelSpec& spec, const PhaseFunction& f,
                       const PhaseFunction& g, const PhasePoint& pt);
double reduced_bracket(const ModelSpec& spec, const std::function<double(const Vec&)>& f,
                       const std::function<double(const Vec&)>& g, const Vec& p);

/// The three conserved Hamiltonians of the SL(3,R)/SO(3) flow. h3 is rational
/// in p_5 and refuses to evaluate on its singular locus.
std::array<double, 3> sl3_hamiltonians(const Vec& p);

/// Diagonalizing change of momentum variables for the SL3 quadratic form,
/// h1(w) = sum w_i^2, and its inverse.
Vec w_change_of_variables(const Vec& p);
Vec w_change_inverse(const Vec& w);

/// Constant Nomizu connection coefficients Gamma^C_{AB} of the invariant
/// metric (the torsion-free, metric-compatible connection on the solvable
/// algebra).
std::vector<Matrix> nomizu_connection(const ModelSpec& spec);

struct TrajectorySample {
    double t;
    Vec y;
    Vec p;
    std::array<double, 3> h;  // conserved Hamiltonians where defined (SL3)
};

/// Fixed-step RK4 integration of the first-order geodesic system
///   dPi^A/dt = -Gamma^A_BC Pi^B Pi^C,  dy^alpha/dt = (e^{-1})^alpha_M Pi^M.
/// Throws StepTooLarge when the quadratic Hamiltonian drifts beyond drift_tol.
std::vector<TrajectorySample> geodesic_integrate(const ModelSpec& spec,
                                                 const PhasePoint& start, double t_end,
                                                 std::size_t steps,
                                                 double drift_tol = 1e-6);

/// Momentum-sector partition function of the SL3 flow at lambda_2 = 0:
///   Z = 2 pi^{5/2} exp(lambda_3^2 / (12 lambda_1)) lambda_1^{-5/2} V.
PartitionEvaluation gds_partition_sl3(double lambda1, double lambda3, double volume);

/// Quadrature oracle for the same quantity: the diagonalized momentum
/// integral over its region of absolute convergence |w_1| > |lambda_3|/(2 lambda_1)
/// carrying the measure constant 2 that normalizes the closed form.
PartitionEvaluation gds_partition_sl3_quadrature(double lambda1, double lambda3,
                                                 double volume, double tol = 1e-7);

struct GdsThermo {
    double stochastic_hamiltonian;
    double shannon_information;
    Matrix metric;              // Hessian in (lambda1, lambda3, V)
    double frame_curvature_12;  // curvature coefficient on the temperature block
};

GdsThermo gds_thermo(double lambda1, double lambda3, double volume);

/// Closed-form pieces used by the thermodynamic layer.
double gds_stochastic_hamiltonian(double lambda1, double lambda3, double volume);
Matrix gds_thermo_metric(double lambda1, double lambda3, double volume);
/// Orthonormal frame of the thermo metric with eta = diag(-1,-1,1); rows are
/// frame covectors over (lambda1, lambda3, V).
Matrix gds_thermo_dreibein(double lambda1, double lambda3, double volume);

}  // namespace geotherm::gds
