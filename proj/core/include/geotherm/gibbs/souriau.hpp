#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>

#include "geotherm/geometry/moment_maps.hpp"
#include "geotherm/models/model_spec.hpp"
#include "geotherm/numkit/quadrature.hpp"
#include "geotherm/numkit/rng.hpp"

namespace geotherm::gibbs {

using models::ModelSpec;
using num::Matrix;
using num::QuadratureResult;
using num::Vec;

struct OutsideCone : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutsideDisk : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateTemperatures : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergenceDetected : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EnvelopeTooTight : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Temperature vector over a model's full generator basis. For H2 the
/// canonical components are (delta, beta, zeta); the raw basis coefficients
/// (alpha, beta, gamma) relate through alpha = delta + zeta, gamma = -2 zeta.
/// For the Siegel plane the canonical form lives on the compact Cartan pair
/// (H3, H0) with coefficients (mu, lambda).
struct TemperatureVector {
    models::ModelName model;
    Vec coefficients;  // over the full basis

    static TemperatureVector h2(double delta, double beta, double zeta);
    static TemperatureVector h2_raw(double alpha, double beta, double gamma);
    static TemperatureVector sh2_canonical(double lambda, double mu);

    /// (delta, beta, zeta) for H2 vectors.
    Vec h2_canonical() const;
};

bool in_cone(const TemperatureVector& tau);

enum class PartitionMethod { ClosedForm, Staged, Quadrature, MonteCarlo };

struct PartitionEvaluation {
    double value = 0.0;
    double error_estimate = 0.0;
    PartitionMethod method = PartitionMethod::ClosedForm;
};

std::string to_string(PartitionMethod m);

/// Gibbs exponent A(y) = sum_Lambda tau^Lambda P_Lambda(y); the statistical
/// weight of the state is exp(A), which decays at infinity inside the cone.
double gibbs_exponent(const ModelSpec& spec, const TemperatureVector& tau, const Vec& y);

/// --- hyperbolic plane -------------------------------------------------
/// Closed form Z = pi exp(-N)/N, N = sqrt(delta^2 - beta^2 - zeta^2).
PartitionEvaluation partition_h2(double delta, double beta, double zeta);
/// Independent oracle: 2D adaptive quadrature of the weight over the chart.
PartitionEvaluation partition_h2_quadrature(double delta, double beta, double zeta,
                                            double tol = 1e-10);
/// Normalized density exp(A)/Z on the solvable chart.
double gibbs_density_h2(const TemperatureVector& tau, const Vec& y);

/// Disk model <-> solvable chart transforms.
Vec disk_transform(double x, double y);
Vec disk_inverse(const Vec& solvable);
/// Density on the unit disk, Jacobian included so it integrates to one
/// against dx dy. Polar temperatures: beta = mu cos(theta), zeta = mu sin(theta).
double gibbs_density_disk(double delta, double mu, double theta, double x, double y);

/// --- Siegel plane -----------------------------------------------------
/// Exponent of the canonical two-temperature weight, as the closed rational
/// expression in (rho_1, rho_2) = (e^{w1}, e^{w2}) and the nilpotent
/// coordinates; equals mu P_9 + lambda P_10.
double siegel_exponent(const Vec& w, double lambda, double mu);
double siegel_exponent_rational(double rho1, double rho2, double w3, double w4,
                                double w5, double w6, double lambda, double mu);

/// Staged reductions of the nilpotent integrals. Each stage integrates one
/// more coordinate of exp(A) in closed form.
double siegel_stage_w34(double rho1, double rho2, double w5, double w6,
                        double lambda, double mu);
double siegel_stage_w5(double rho1, double rho2, double w6, double lambda, double mu);
/// Fully reduced integrand F(rho1, rho2) including the Bessel K0 factor.
double siegel_reduced_integrand(double rho1, double rho2, double lambda, double mu);

/// Two-dimensional quadrature of F over the Cartan logs.
PartitionEvaluation partition_siegel(double lambda, double mu, double tol = 1e-7);

/// --- generic brute-force oracle ----------------------------------------
/// Lebesgue-measure partition integral on the solvable chart: adaptive
/// quadrature for d = 2, stratified Monte Carlo with a Gaussian importance
/// envelope for d >= 6. Divergence is flagged by growth over expanding boxes.
PartitionEvaluation partition_numeric(const ModelSpec& spec, const TemperatureVector& tau,
                                      long budget = 400000, num::Rng* rng = nullptr);

/// Canonical form: compact-Cartan temperatures beta0 evaluated along a group
/// translation, exp(sum_i beta0_i P_i(act(g, y))) / Z(beta0).
double canonical_gibbs(const ModelSpec& spec, const Vec& beta0, const Matrix& g,
                       const Vec& y);

/// Rejection sampling of the disk density with a uniform envelope over a
/// bounding sub-disk. Returns (x, y) pairs.
std::vector<std::array<double, 2>> sample_gibbs_h2(const TemperatureVector& tau,
                                                   std::size_t count, num::Rng& rng);

}  // namespace geotherm::gibbs
