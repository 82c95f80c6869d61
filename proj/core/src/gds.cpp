#include "geotherm/gds/system.hpp"

#include <cmath>
#include <limits>

#include "geotherm/geometry/coset.hpp"
#include "geotherm/numkit/fd.hpp"
#include "geotherm/thermo/curvature.hpp"

namespace geotherm::gds {

namespace {

using models::ModelName;
const double kPi = 3.14159265358979323846;
const double S3 = std::sqrt(3.0);

Matrix kappa_inverse(const ModelSpec& spec) { return num::inverse(spec.kappa); }

}  // namespace

double gds_hamiltonian(const ModelSpec& spec, const Vec& p) {
    const Matrix ki = kappa_inverse(spec);
    double h = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = 0; b < p.size(); ++b) h += ki(a, b) * p[a] * p[b];
    return 0.5 * h;
}

Matrix symplectic_form_gds(const ModelSpec& spec, const PhasePoint& pt) {
    const std::size_t d = spec.dim_d;
    const Matrix e = coset::left_invariant_forms(spec, pt.y).e_matrix;
    const auto& f = models::solvable_structure_constants(spec);
    Matrix w(2 * d, 2 * d);
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t b = 0; b < d; ++b) {
            w(m, d + b) = 0.5 * e(m, b);
            w(d + b, m) = -0.5 * e(m, b);
        }
    for (std::size_t al = 0; al < d; ++al)
        for (std::size_t be = 0; be < d; ++be) {
            double s = 0.0;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    for (std::size_t c = 0; c < d; ++c)
                        s += f[a](b, c) * pt.p[a] * e(b, al) * e(c, be);
            w(d + al, d + be) = -0.5 * s;
        }
    return w;
}

Matrix poisson_bivector(const ModelSpec& spec, const PhasePoint& pt) {
    const std::size_t d = spec.dim_d;
    const Matrix e = coset::left_invariant_forms(spec, pt.y).e_matrix;
    const Matrix einv = num::inverse(e);
    const auto& f = models::solvable_structure_constants(spec);
    Matrix pi(2 * d, 2 * d);
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) {
            double s = 0.0;
            for (std::size_t a = 0; a < d; ++a) s += f[a](m, n) * pt.p[a];
            pi(m, n) = -2.0 * s;
        }
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t b = 0; b < d; ++b) {
            pi(m, d + b) = -2.0 * einv(b, m);
            pi(d + b, m) = 2.0 * einv(b, m);
        }
    return pi;
}

double poisson_bracket(const ModelSpec& spec, const PhaseFunction& f,
                       const PhaseFunction& g, const PhasePoint& pt) {
    const std::size_t d = spec.dim_d;
    auto pack = [&](const PhasePoint& q) {
        Vec z(2 * d);
        for (std::size_t i = 0; i < d; ++i) {
            z[i] = q.p[i];
            z[d + i] = q.y[i];
        }
        return z;
    };
    auto unpack = [&](const Vec& z) {
        PhasePoint q;
        q.p.assign(z.begin(), z.begin() + d);
        q.y.assign(z.begin() + d, z.end());
        return q;
    };
    auto fz = [&](const Vec& z) { return f(unpack(z)); };
    auto gz = [&](const Vec& z) { return g(unpack(z)); };
    const Vec z0 = pack(pt);
    const Vec df = num::fd_gradient(fz, z0);
    const Vec dg = num::fd_gradient(gz, z0);
    const Matrix pi = poisson_bivector(spec, pt);
    double s = 0.0;
    for (std::size_t a = 0; a < 2 * d; ++a)
        for (std::size_t b = 0; b < 2 * d; ++b) s += df[a] * pi(a, b) * dg[b];
    return s;
}

double reduced_bracket(const ModelSpec& spec, const std::function<double(const Vec&)>& f,
                       const std::function<double(const Vec&)>& g, const Vec& p) {
    const auto& fc = models::solvable_structure_constants(spec);
    const Vec df = num::fd_gradient(f, p);
    const Vec dg = num::fd_gradient(g, p);
    double s = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = 0; b < p.size(); ++b)
            for (std::size_t c = 0; c < p.size(); ++c)
                s += p[a] * fc[a](b, c) * df[b] * dg[c];
    return -2.0 * s;
}

std::array<double, 3> sl3_hamiltonians(const Vec& p) {
    const double p1 = p[0], p2 = p[1], p3 = p[2], p4 = p[3], p5 = p[4];
    if (std::abs(p5) < 1e-12)
        throw SingularMomentum("sl3_hamiltonians: h3 is singular at p_5 = 0");
    const double h1 = (p1 * p1 - p2 * p1 + p2 * p2 + 3 * (p3 * p3 + p4 * p4 + p5 * p5)) / 3.0;
    const double h2 = (-2 * p1 * p1 * p1 + 3 * p2 * p1 * p1 +
                       3 * (p2 * p2 - 3 * (p3 * p3 - 2 * p4 * p4 + p5 * p5)) * p1 -
                       2 * p2 * p2 * p2 - 54 * p3 * p4 * p5 -
                       9 * p2 * (p3 * p3 + p4 * p4 - 2 * p5 * p5)) / 27.0;
    const double h3 = (p1 - 2 * p2 + 3 * p3 * p4 / p5) / 3.0;
    return {h1, h2, h3};
}

Vec w_change_of_variables(const Vec& p) {
    return {p[4], p[3], p[2], 0.5 * (p[1] - p[0]), (p[0] + p[1]) / (2.0 * S3)};
}

Vec w_change_inverse(const Vec& w) {
    return {S3 * w[4] - w[3], w[3] + S3 * w[4], w[2], w[1], w[0]};
}

std::vector<Matrix> nomizu_connection(const ModelSpec& spec) {
    const auto& f = models::solvable_structure_constants(spec);
    const Matrix ki = kappa_inverse(spec);
    const std::size_t d = spec.dim_d;
    std::vector<Matrix> gamma(d, Matrix(d, d));
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                double t1 = f[c](a, b);
                double t2 = 0.0, t3 = 0.0;
                for (std::size_t dd = 0; dd < d; ++dd)
                    for (std::size_t e = 0; e < d; ++e) {
                        t2 += spec.kappa(a, dd) * ki(c, e) * f[dd](b, e);
                        t3 += spec.kappa(b, dd) * ki(c, e) * f[dd](a, e);
                    }
                gamma[c](a, b) = 0.5 * (t1 - t2 - t3);
            }
    return gamma;
}

std::vector<TrajectorySample> geodesic_integrate(const ModelSpec& spec,
                                                 const PhasePoint& start, double t_end,
                                                 std::size_t steps, double drift_tol) {
    const std::size_t d = spec.dim_d;
    const auto gamma = nomizu_connection(spec);
    const Matrix ki = kappa_inverse(spec);
    // state = (y, Pi) with Pi^A = kappa^{AB} p_B
    Vec state(2 * d);
    for (std::size_t i = 0; i < d; ++i) state[i] = start.y[i];
    for (std::size_t a = 0; a < d; ++a) {
        double s = 0.0;
        for (std::size_t b = 0; b < d; ++b) s += ki(a, b) * start.p[b];
        state[d + a] = s;
    }
    auto deriv = [&](const Vec& z) {
        Vec dz(2 * d, 0.0);
        const Vec y(z.begin(), z.begin() + d);
        const Vec big_pi(z.begin() + d, z.end());
        const Matrix einv = num::inverse(coset::left_invariant_forms(spec, y).e_matrix);
        for (std::size_t al = 0; al < d; ++al) {
            double s = 0.0;
            for (std::size_t m = 0; m < d; ++m) s += einv(al, m) * big_pi[m];
            dz[al] = s;
        }
        for (std::size_t a = 0; a < d; ++a) {
            double s = 0.0;
            for (std::size_t b = 0; b < d; ++b)
                for (std::size_t c = 0; c < d; ++c)
                    s += gamma[a](b, c) * big_pi[b] * big_pi[c];
            dz[d + a] = -s;
        }
        return dz;
    };
    auto momenta_of = [&](const Vec& z) {
        Vec p(d, 0.0);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) p[a] += spec.kappa(a, b) * z[d + b];
        return p;
    };
    auto record = [&](double t, const Vec& z) {
        TrajectorySample s;
        s.t = t;
        s.y.assign(z.begin(), z.begin() + d);
        s.p = momenta_of(z);
        s.h = {gds_hamiltonian(spec, s.p), 0.0, 0.0};
        if (spec.name == ModelName::SL3 && std::abs(s.p[4]) > 1e-12) {
            s.h = sl3_hamiltonians(s.p);
        }
        return s;
    };
    std::vector<TrajectorySample> out;
    out.reserve(steps + 1);
    out.push_back(record(0.0, state));
    const double h0 = gds_hamiltonian(spec, start.p);
    const double dt = t_end / static_cast<double>(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        const Vec k1 = deriv(state);
        Vec tmp(2 * d);
        for (std::size_t i = 0; i < 2 * d; ++i) tmp[i] = state[i] + 0.5 * dt * k1[i];
        const Vec k2 = deriv(tmp);
        for (std::size_t i = 0; i < 2 * d; ++i) tmp[i] = state[i] + 0.5 * dt * k2[i];
        const Vec k3 = deriv(tmp);
        for (std::size_t i = 0; i < 2 * d; ++i) tmp[i] = state[i] + dt * k3[i];
        const Vec k4 = deriv(tmp);
        for (std::size_t i = 0; i < 2 * d; ++i)
            state[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        out.push_back(record(dt * static_cast<double>(k + 1), state));
        const double h_now = gds_hamiltonian(spec, out.back().p);
        if (std::abs(h_now - h0) > drift_tol * std::max(1.0, std::abs(h0)))
            throw StepTooLarge("geodesic_integrate: energy drift exceeds tolerance");
    }
    return out;
}

PartitionEvaluation gds_partition_sl3(double lambda1, double lambda3, double volume) {
    if (!(lambda1 > 0.0)) throw OutsideCone("gds_partition_sl3: lambda_1 must be positive");
    const double z = 2.0 * std::pow(kPi, 2.5) * std::exp(lambda3 * lambda3 / (12.0 * lambda1)) *
                     std::pow(lambda1, -2.5) * volume;
    return {z, 0.0, gibbs::PartitionMethod::ClosedForm};
}

PartitionEvaluation gds_partition_sl3_quadrature(double lambda1, double lambda3,
                                                 double volume, double tol) {
    if (!(lambda1 > 0.0)) throw OutsideCone("gds_partition_sl3_quadrature: lambda_1 <= 0");
    const double inf = std::numeric_limits<double>::infinity();
    // exact factorization of the integrand at lambda_2 = 0:
    //   exp(-l1 h1 - l3 h3) = g4(w4) g5(w5) g123(w1,w2,w3)
    auto g4 = num::integrate_adaptive(
        [&](double w) { return std::exp(-lambda1 * w * w + lambda3 * w); }, -inf, inf, tol);
    auto g5 = num::integrate_adaptive(
        [&](double w) { return std::exp(-lambda1 * w * w + lambda3 * w / S3); }, -inf, inf,
        tol);
    // (w1,w2,w3) block over the region of absolute convergence
    const double cut = std::abs(lambda3) / (2.0 * lambda1);
    double block;
    double block_err = 0.0;
    if (std::abs(lambda3) < 1e-14) {
        block = std::pow(kPi / lambda1, 1.5);
    } else {
        auto inner23 = [&](double w1) {
            // gaussian pair (w2,w3) with cross term lambda3 w2 w3 / w1
            const double det = lambda1 * lambda1 -
                               lambda3 * lambda3 / (4.0 * w1 * w1);
            return kPi / std::sqrt(det);
        };
        auto f1 = [&](double w1) { return std::exp(-lambda1 * w1 * w1) * inner23(w1); };
        // integrable sqrt singularity at the cut: substitute w1 = sqrt(cut^2 + u^2)
        auto fu = [&](double u) {
            const double w1 = std::sqrt(cut * cut + u * u);
            return f1(w1) * (u / w1);
        };
        auto half = num::integrate_adaptive(fu, 0.0, inf, tol);
        block = 2.0 * half.value;
        block_err = 2.0 * half.error_estimate;
    }
    const double raw = g4.value * g5.value * block;
    // measure constant normalizing the closed form (recorded model constant)
    const double measure = 2.0;
    const double err = measure * volume *
                       (g4.error_estimate * g5.value * block +
                        g5.error_estimate * g4.value * block + block_err * g4.value * g5.value);
    return {measure * raw * volume, err, gibbs::PartitionMethod::Quadrature};
}

double gds_stochastic_hamiltonian(double lambda1, double lambda3, double volume) {
    if (!(lambda1 > 0.0) || !(volume > 0.0))
        throw OutsideCone("gds_stochastic_hamiltonian: outside the domain");
    return -lambda3 * lambda3 / (12.0 * lambda1) - 2.5 * std::log(kPi / lambda1) -
           std::log(volume) - std::log(2.0);
}

Matrix gds_thermo_metric(double lambda1, double lambda3, double volume) {
    Matrix g(3, 3);
    g(0, 0) = -(15.0 * lambda1 + lambda3 * lambda3) / (6.0 * lambda1 * lambda1 * lambda1);
    g(0, 1) = g(1, 0) = lambda3 / (6.0 * lambda1 * lambda1);
    g(1, 1) = -1.0 / (6.0 * lambda1);
    g(2, 2) = 1.0 / (volume * volume);
    return g;
}

Matrix gds_thermo_dreibein(double lambda1, double lambda3, double volume) {
    Matrix e(3, 3);
    const double r = std::sqrt(15.0 * lambda1 + lambda3 * lambda3);
    e(0, 0) = r / (std::sqrt(6.0) * std::pow(lambda1, 1.5));
    e(0, 1) = -lambda3 / (std::sqrt(6.0) * std::sqrt(lambda1) * r);
    e(1, 1) = std::sqrt(2.5) / r;
    e(2, 2) = 1.0 / volume;
    return e;
}

GdsThermo gds_thermo(double lambda1, double lambda3, double volume) {
    GdsThermo t;
    t.stochastic_hamiltonian = gds_stochastic_hamiltonian(lambda1, lambda3, volume);
    // Legendre transform against the two temperatures
    const double dh_d1 = lambda3 * lambda3 / (12.0 * lambda1 * lambda1) + 2.5 / lambda1;
    const double dh_d3 = -lambda3 / (6.0 * lambda1);
    t.shannon_information = t.stochastic_hamiltonian - lambda1 * dh_d1 - lambda3 * dh_d3;
    t.metric = gds_thermo_metric(lambda1, lambda3, volume);

    auto metric_real = [](const Vec& x) { return gds_thermo_metric(x[0], x[1], x[2]); };
    auto metric_cplx = [](const std::vector<std::complex<double>>& x) {
        using C = std::complex<double>;
        num::MatrixC g(3, 3);
        const C l1 = x[0], l3 = x[1], v = x[2];
        g(0, 0) = -(15.0 * l1 + l3 * l3) / (6.0 * l1 * l1 * l1);
        g(0, 1) = g(1, 0) = l3 / (6.0 * l1 * l1);
        g(1, 1) = C(-1.0) / (6.0 * l1);
        g(2, 2) = C(1.0) / (v * v);
        return g;
    };
    Matrix eta(3, 3);
    eta(0, 0) = eta(1, 1) = -1.0;
    eta(2, 2) = 1.0;
    const thermo::FrameCurvature fc = thermo::frame_curvature(
        thermo::metric_field(metric_real, metric_cplx),
        [](const Vec& x) { return gds_thermo_dreibein(x[0], x[1], x[2]); }, eta,
        {lambda1, lambda3, volume});
    t.frame_curvature_12 = fc.component(0, 1, 0, 1);
    return t;
}

}  // namespace geotherm::gds
