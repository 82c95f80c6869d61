#pragma once

#include <functional>

#include "geotherm/numkit/matrix.hpp"

namespace geotherm::thermo {

using num::Matrix;
using num::MatrixC;
using num::Vec;

struct SingularMetric : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A metric field with an optional complex-analytic evaluator. When the
/// complex evaluator is present, first derivatives use complex-step
/// differentiation and only the outer derivative level is finite-differenced,
/// which buys three to four extra digits in curvature components.
struct MetricField {
    std::function<Matrix(const Vec&)> real;
    std::function<MatrixC(const std::vector<std::complex<double>>&)> complex;

    bool has_complex() const { return static_cast<bool>(complex); }
};

MetricField metric_field(std::function<Matrix(const Vec&)> real);
MetricField metric_field(std::function<Matrix(const Vec&)> real,
                         std::function<MatrixC(const std::vector<std::complex<double>>&)> cplx);

/// Christoffel symbols Gamma[a](b,c) = Gamma^a_{bc} at the point.
std::vector<Matrix> christoffel(const MetricField& g, const Vec& x, double step = 0.0);

struct CurvatureResult {
    /// riemann[m][n](a,b) = R^m_{n a b}
    std::vector<std::vector<Matrix>> riemann_up;
    Matrix ricci;
    double scalar;
    /// max residual of antisymmetry in the last pair and the first Bianchi sum
    double symmetry_residual;
};

/// Levi-Civita curvature by nested differentiation of the metric field.
CurvatureResult curvature_from_metric(const MetricField& g, const Vec& x,
                                      double step = 0.0);

/// Frame components R^{ij}{}_{kl} of the curvature for an orthonormal frame
/// field E (rows are frame covectors) with constant frame metric eta:
/// project the lowered Riemann tensor with the inverse frame and raise the
/// first two labels with eta^{-1}.
struct FrameCurvature {
    /// component(i, j, k, l)
    double component(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return data[((i * n + j) * n + k) * n + l];
    }
    std::size_t n = 0;
    std::vector<double> data;
};

FrameCurvature frame_curvature(const MetricField& g,
                               const std::function<Matrix(const Vec&)>& frame,
                               const Matrix& eta, const Vec& x, double step = 0.0);

}  // namespace geotherm::thermo
