#pragma once

#include <functional>

#include "geotherm/thermo/curvature.hpp"

namespace geotherm::thermo {

struct OutsideDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Equilibrium-surface immersion: the thermic function A(T,V) (the equation
/// of state solved for pressure) and the caloric function B(T,V) (internal
/// energy).
struct EquilibriumSurface {
    std::function<double(double, double)> thermic;  // A(T, V)
    std::function<double(double, double)> caloric;  // B(T, V)
};

/// T dA/dT - A - dB/dV at (T, V); zero exactly when the surface is a
/// Lagrangian immersion.
double lagrangian_constraint(const EquilibriumSurface& s, double t, double v);

EquilibriumSurface ideal_gas_surface(double kb, double n_particles);
EquilibriumSurface vdw_surface(double a, double b, double n_moles, double r_gas);

/// Flat two-dimensional thermo metric of the ideal gas over (T, V).
Matrix ideal_gas_metric(double kb, double n_particles, double t, double v);

struct VdwThermo {
    Matrix metric;                 // over (T, V)
    double frame_curvature;        // R^{12}_{12} in the orthonormal frame
    double closed_curvature;       // the rational closed form
    double dimensionless_curvature;  // calR(T/Tc, V/Vc)
};

VdwThermo vdw_thermo(double t, double v, double a, double b, double n_moles, double r_gas);

struct VdwCritical {
    double v_c, t_c, p_c;
};
VdwCritical vdw_critical(double a, double b, double n_moles, double r_gas);

/// Denominator of the dimensionless curvature; its zero set is the singular
/// locus in the reduced (T, v) plane.
double vdw_singular_denominator(double t_reduced, double v_reduced);
double vdw_dimensionless_curvature(double t_reduced, double v_reduced);

Matrix vdw_metric(double t, double v, double a, double b, double n_moles, double r_gas);
Matrix vdw_zweibein(double t, double v, double a, double b, double n_moles, double r_gas);

}  // namespace geotherm::thermo
