#include "geotherm/gibbs/souriau.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "geotherm/geometry/isometry.hpp"
#include "geotherm/numkit/bessel.hpp"

namespace geotherm::gibbs {

namespace {

using models::ModelName;
const double S2 = std::sqrt(2.0);
const double kPi = 3.14159265358979323846;

}  // namespace

TemperatureVector TemperatureVector::h2(double delta, double beta, double zeta) {
    // basis (X_c, T1, T2); raw coefficients per the linear relabeling
    return {ModelName::H2, {delta + zeta, beta, -2.0 * zeta}};
}

TemperatureVector TemperatureVector::h2_raw(double alpha, double beta, double gamma) {
    return {ModelName::H2, {alpha, beta, gamma}};
}

TemperatureVector TemperatureVector::sh2_canonical(double lambda, double mu) {
    Vec c(10, 0.0);
    c[8] = mu;      // H3
    c[9] = lambda;  // H0
    return {ModelName::SH2_vector, c};
}

Vec TemperatureVector::h2_canonical() const {
    const double alpha = coefficients[0], beta = coefficients[1], gamma = coefficients[2];
    const double zeta = -0.5 * gamma;
    return {alpha - zeta, beta, zeta};
}

bool in_cone(const TemperatureVector& tau) {
    switch (tau.model) {
        case ModelName::H2: {
            const Vec c = tau.h2_canonical();
            return c[0] > 0.0 &&
                   c[0] * c[0] - c[1] * c[1] - c[2] * c[2] > 0.0;
        }
        case ModelName::SH2_vector:
        case ModelName::SH2_spinor: {
            const double mu = tau.coefficients[8], lambda = tau.coefficients[9];
            bool canonical = true;
            for (std::size_t i = 0; i < 8; ++i)
                if (tau.coefficients[i] != 0.0) canonical = false;
            if (!canonical) return false;  // only the Cartan form is decidable in closed form
            return lambda + mu > 0.0 && lambda - mu > 0.0;
        }
        default: return false;
    }
}

double gibbs_exponent(const ModelSpec& spec, const TemperatureVector& tau, const Vec& y) {
    // far outside a ball of chart radius ~300 the coset representative
    // overflows double range; the weight there is indistinguishable from zero
    for (double v : y)
        if (std::abs(v) > 300.0) return -1e308;
    const Vec p = moment::moment_vector(spec, y);
    double a = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) a += tau.coefficients[i] * p[i];
    if (!std::isfinite(a)) return -1e308;
    return a;
}

PartitionEvaluation partition_h2(double delta, double beta, double zeta) {
    const double n2 = delta * delta - beta * beta - zeta * zeta;
    if (!(delta > 0.0) || !(n2 > 0.0))
        throw OutsideCone("partition_h2: temperature outside the cone");
    const double n = std::sqrt(n2);
    return {kPi * std::exp(-n) / n, 0.0, PartitionMethod::ClosedForm};
}

PartitionEvaluation partition_h2_quadrature(double delta, double beta, double zeta,
                                            double tol) {
    const double alpha = delta + zeta;
    const double gamma = -2.0 * zeta;
    if (!(alpha > 0.0) || !(alpha * (alpha + gamma) - beta * beta > 0.0))
        throw OutsideCone("partition_h2_quadrature: temperature outside the cone");
    // The nilpotent direction is recentred on the ridge and rescaled to unit
    // width (an exact change of variables y = -beta e^{-2x}/alpha + u e^{-x}/
    // sqrt(alpha)), which keeps the iterated quadrature well conditioned for
    // arbitrarily eccentric temperatures.
    auto f = [&](double x, double u) {
        if (std::abs(x) > 300.0 || std::abs(u) > 1e150) return 0.0;
        const double e2x = std::exp(2.0 * x);
        const double em2x = std::exp(-2.0 * x);
        const double expo = 0.5 * u * u +
                            0.5 * em2x * (alpha * (alpha + gamma) - beta * beta) / alpha +
                            0.5 * alpha * e2x;
        if (expo > 700.0) return 0.0;
        return std::exp(-expo) * std::exp(-x) / std::sqrt(alpha);
    };
    const double inf = std::numeric_limits<double>::infinity();
    QuadratureResult r = num::integrate_adaptive_2d(f, -inf, inf, -inf, inf, tol);
    return {r.value, r.error_estimate, PartitionMethod::Quadrature};
}

double gibbs_density_h2(const TemperatureVector& tau, const Vec& y) {
    if (!in_cone(tau)) throw OutsideCone("gibbs_density_h2: temperature outside the cone");
    const Vec c = tau.h2_canonical();
    const double z = partition_h2(c[0], c[1], c[2]).value;
    const double a = gibbs_exponent(models::load_model(ModelName::H2), tau, y);
    return std::exp(a) / z;
}

Vec disk_transform(double x, double y) {
    const double s = 1.0 - x * x - y * y;
    if (!(s > 0.0)) throw OutsideDisk("disk_transform: point outside the unit disk");
    const double d = (x - 1.0) * (x - 1.0) + y * y;
    return {std::log(s / d), -4.0 * y / s};
}

Vec disk_inverse(const Vec& u) {
    const double em = std::exp(-u[0]);
    const double s = 16.0 * em / (4.0 * (1.0 + em) * (1.0 + em) + u[1] * u[1]);
    return {1.0 - 0.5 * s * (1.0 + em), -0.25 * u[1] * s};
}

namespace {

double disk_jacobian(double x, double y) {
    const double s = 1.0 - x * x - y * y;
    const double d = (x - 1.0) * (x - 1.0) + y * y;
    const double du1dx = -2.0 * x / s - 2.0 * (x - 1.0) / d;
    const double du1dy = -2.0 * y / s - 2.0 * y / d;
    const double du2dx = -8.0 * x * y / (s * s);
    const double du2dy = -4.0 / s - 8.0 * y * y / (s * s);
    return std::abs(du1dx * du2dy - du1dy * du2dx);
}

}  // namespace

double gibbs_density_disk(double delta, double mu, double theta, double x, double y) {
    const double beta = mu * std::cos(theta);
    const double zeta = mu * std::sin(theta);
    const TemperatureVector tau = TemperatureVector::h2(delta, beta, zeta);
    const Vec u = disk_transform(x, y);
    return gibbs_density_h2(tau, u) * disk_jacobian(x, y);
}

double siegel_exponent_rational(double rho1, double rho2, double w3, double w4,
                                double w5, double w6, double lambda, double mu) {
    const double r1 = rho1 * rho1, r2 = rho2 * rho2;
    const double q6 = w6 * w6 + 4.0, q5 = w5 * w5 + 4.0;
    const double na =
        r1 * (-(r2 * (8 * w4 * w4 - 4 * S2 * w5 * w6 * w4 + q5 * q6) * (lambda - mu) +
                2 * (q6 * w3 * w3 + 2 * S2 * w5 * w6 * w3 + 2 * q5) * (lambda + mu))) -
        4 * (4 * (lambda - mu) + r2 * q6 * (lambda + mu));
    return na / (64.0 * rho1 * rho2);
}

double siegel_exponent(const Vec& w, double lambda, double mu) {
    return siegel_exponent_rational(std::exp(w[0]), std::exp(w[1]), w[2], w[3], w[4],
                                    w[5], lambda, mu);
}

namespace {

void check_siegel_cone(double lambda, double mu) {
    if (!(lambda + mu > 0.0) || lambda - mu < 0.0)
        throw OutsideCone("siegel: temperatures outside the cone");
    if (lambda - mu < 1e-6 * std::abs(lambda))
        throw DegenerateTemperatures("siegel: lambda - mu too close to zero");
}

}  // namespace

double siegel_stage_w34(double rho1, double rho2, double w5, double w6, double lambda,
                        double mu) {
    check_siegel_cone(lambda, mu);
    const double r1 = rho1 * rho1, r2 = rho2 * rho2;
    const double q6 = w6 * w6 + 4.0;
    const double nb = 16 * lambda - 16 * mu - r2 * r1 * w5 * w5 * w6 * w6 * (lambda - mu) +
                      4 * r2 * q6 * (lambda + mu) +
                      r1 * (r2 * (w5 * w5 + 4) * q6 * q6 * (lambda - mu) +
                            16 * (w5 * w5 + w6 * w6 + 4) * (lambda + mu)) /
                          q6;
    const double b = nb / (64.0 * rho1 * rho2);
    return 16.0 * kPi * std::exp(-b) /
           (rho1 * std::sqrt(lambda - mu) * std::sqrt(q6 * (lambda + mu)));
}

double siegel_stage_w5(double rho1, double rho2, double w6, double lambda, double mu) {
    check_siegel_cone(lambda, mu);
    const double r1 = rho1 * rho1, r2 = rho2 * rho2;
    const double q6 = w6 * w6 + 4.0;
    const double expo = (4 * (r1 * (lambda + mu) + lambda - mu) +
                         r2 * q6 * (r1 * (lambda - mu) + lambda + mu)) /
                        (16.0 * rho1 * rho2);
    const double den = rho1 * std::sqrt(q6 * (lambda - mu) * (lambda + mu)) *
                       std::sqrt(rho2 * rho1 * (lambda - mu) +
                                 4.0 * rho1 * (lambda + mu) / (rho2 * q6));
    return 64.0 * std::pow(kPi, 1.5) * std::exp(-expo) / den;
}

double siegel_reduced_integrand(double rho1, double rho2, double lambda, double mu) {
    check_siegel_cone(lambda, mu);
    const double lm = lambda - mu, lp = lambda + mu;
    const double r1 = rho1 * rho1, r2 = rho2 * rho2;
    const double d2 = r2 * lm + lp;
    const double x = (lm * r1 + lp) * (lm * r2 + lp) / (8.0 * lm * rho1 * rho2);
    const double expo = (lambda * lambda + lm * (r1 * (r2 * lm + lp) + r2 * lp) -
                         6.0 * lambda * mu + mu * mu) /
                        (8.0 * rho1 * rho2 * lm);
    // guard: the exponent and K0 argument both grow like rho, so compute
    // log-scaled to survive large Cartan coordinates
    if (!(x < 600.0)) {
        const double logk0 = std::log(std::sqrt(kPi / (2.0 * x))) - x +
                             std::log1p(-1.0 / (8.0 * x));
        const double logval = std::log(64.0 * std::pow(kPi, 1.5) * std::sqrt(lm)) - expo +
                              logk0 -
                              std::log(std::sqrt(rho2 * lp) *
                                       std::pow(rho1 * lm / d2, 1.5) * std::pow(d2, 1.5));
        return logval > -700.0 ? std::exp(logval) : 0.0;
    }
    const double num_ = 64.0 * std::pow(kPi, 1.5) * std::sqrt(lm) * std::exp(-expo) *
                        num::bessel_k0(x);
    const double den = std::sqrt(rho2 * lp) * std::pow(rho1 * lm / d2, 1.5) *
                       std::pow(d2, 1.5);
    return num_ / den;
}

PartitionEvaluation partition_siegel(double lambda, double mu, double tol) {
    check_siegel_cone(lambda, mu);
    auto f = [&](double w1, double w2) {
        if (std::abs(w1) > 150.0 || std::abs(w2) > 150.0) return 0.0;
        return siegel_reduced_integrand(std::exp(w1), std::exp(w2), lambda, mu);
    };
    const double inf = std::numeric_limits<double>::infinity();
    QuadratureResult r = num::integrate_adaptive_2d(f, -inf, inf, -inf, inf, tol, 3000);
    return {r.value, r.error_estimate, PartitionMethod::Staged};
}

namespace {

PartitionEvaluation partition_numeric_2d(const ModelSpec& spec,
                                         const TemperatureVector& tau) {
    // Expanding boxes with growth-based divergence detection. The probe
    // clamps the exponent so a divergent weight stays finite and the growth
    // ratio between boxes remains meaningful.
    const std::array<double, 3> radii = {4.0, 6.0, 8.0};
    std::array<double, 3> values{};
    for (std::size_t k = 0; k < radii.size(); ++k) {
        auto f = [&](double x, double y) {
            return std::exp(std::min(500.0, gibbs_exponent(spec, tau, {x, y})));
        };
        const double r = radii[k];
        values[k] = num::integrate_adaptive_2d(f, -r, r, -r, r, 1e-6).value;
    }
    if (values[1] > 1.5 * values[0] || values[2] > 1.5 * values[1])
        throw DivergenceDetected("partition_numeric: integral grows over expanding boxes");
    auto f = [&](double x, double y) {
        return std::exp(gibbs_exponent(spec, tau, {x, y}));
    };
    const double inf = std::numeric_limits<double>::infinity();
    QuadratureResult r = num::integrate_adaptive_2d(f, -inf, inf, -inf, inf, 1e-9);
    return {r.value, r.error_estimate, PartitionMethod::Quadrature};
}

PartitionEvaluation partition_numeric_mc(const ModelSpec& spec,
                                         const TemperatureVector& tau, long budget,
                                         num::Rng& rng) {
    // Importance envelope: product Gaussian on the chart, scale per direction
    // tuned to the curvature of the exponent at the origin.
    const std::size_t d = spec.dim_d;
    Vec sigma(d, 1.0);
    const double h = 1e-3;
    for (std::size_t i = 0; i < d; ++i) {
        Vec p(d, 0.0), m(d, 0.0);
        p[i] = h;
        m[i] = -h;
        const double a0 = gibbs_exponent(spec, tau, Vec(d, 0.0));
        const double second = (gibbs_exponent(spec, tau, p) - 2 * a0 +
                               gibbs_exponent(spec, tau, m)) / (h * h);
        sigma[i] = second < -1e-6 ? 1.0 / std::sqrt(-second) : 2.0;
        sigma[i] = std::min(4.0, std::max(0.1, sigma[i] * 1.8));
    }
    // divergence probe over expanding boxes (crude Riemann sums)
    double prev = 0.0;
    for (double r : {4.0, 6.0, 8.0}) {
        double sum = 0.0;
        const long n_probe = 20000;
        num::Rng probe_rng(12345);
        double vol = 1.0;
        for (std::size_t i = 0; i < d; ++i) vol *= 2.0 * r;
        for (long k = 0; k < n_probe; ++k) {
            Vec y(d);
            for (std::size_t i = 0; i < d; ++i) y[i] = probe_rng.uniform(-r, r);
            sum += std::exp(std::min(500.0, gibbs_exponent(spec, tau, y)));
        }
        const double est = vol * sum / n_probe;
        if (prev > 0.0 && est > 1.5 * prev)
            throw DivergenceDetected("partition_numeric: growth over expanding boxes");
        prev = est;
    }
    double sum = 0.0, sum2 = 0.0;
    const double log_norm = -0.5 * d * std::log(2.0 * kPi);
    for (long k = 0; k < budget; ++k) {
        Vec y(d);
        double logq = log_norm;
        for (std::size_t i = 0; i < d; ++i) {
            // Box-Muller from two uniforms
            const double u1 = std::max(rng.uniform01(), 1e-17);
            const double u2 = rng.uniform01();
            const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
            y[i] = sigma[i] * z;
            logq += -0.5 * z * z - std::log(sigma[i]);
        }
        const double w = std::exp(gibbs_exponent(spec, tau, y) - logq);
        sum += w;
        sum2 += w * w;
    }
    const double mean = sum / budget;
    const double var = std::max(0.0, sum2 / budget - mean * mean);
    const double err = std::sqrt(var / budget);
    if (!std::isfinite(mean)) throw BudgetExhausted("partition_numeric: estimator overflow");
    return {mean, err, PartitionMethod::MonteCarlo};
}

}  // namespace

PartitionEvaluation partition_numeric(const ModelSpec& spec, const TemperatureVector& tau,
                                      long budget, num::Rng* rng) {
    if (!spec.is_kahler) throw models::NotKahler("partition_numeric: model is not Kahler");
    if (spec.dim_d == 2) return partition_numeric_2d(spec, tau);
    num::Rng local(20240813);
    return partition_numeric_mc(spec, tau, budget, rng ? *rng : local);
}

double canonical_gibbs(const ModelSpec& spec, const Vec& beta0, const Matrix& g,
                       const Vec& y) {
    const Vec yy = isometry::act(spec, g, y);
    double z;
    TemperatureVector tau{spec.name, Vec(spec.full_dim(), 0.0)};
    if (spec.name == ModelName::H2) {
        tau.coefficients[0] = beta0[0];  // compact Cartan = X_c
        z = partition_h2(beta0[0], 0.0, 0.0).value;
    } else if (spec.name == ModelName::SH2_vector) {
        tau.coefficients[8] = beta0[0];
        tau.coefficients[9] = beta0[1];
        z = partition_siegel(beta0[1], beta0[0]).value;
    } else {
        throw models::UnknownModel("canonical_gibbs: no canonical Cartan data for model");
    }
    return std::exp(gibbs_exponent(spec, tau, yy)) / z;
}

std::vector<std::array<double, 2>> sample_gibbs_h2(const TemperatureVector& tau,
                                                   std::size_t count, num::Rng& rng) {
    if (!in_cone(tau)) throw OutsideCone("sample_gibbs_h2: temperature outside the cone");
    const Vec c = tau.h2_canonical();
    const double delta = c[0];
    const double mu = std::hypot(c[1], c[2]);
    const double theta = std::atan2(c[2], c[1]);
    // scan for the density maximum and the effective support radius
    double fmax = 0.0;
    double r_bound = 0.0;
    const int n_r = 220, n_t = 96;
    for (int i = 0; i < n_r; ++i) {
        const double r = (i + 0.5) / n_r;
        double ring_max = 0.0;
        for (int j = 0; j < n_t; ++j) {
            const double t = 2.0 * kPi * j / n_t;
            ring_max = std::max(ring_max,
                                gibbs_density_disk(delta, mu, theta, r * std::cos(t),
                                                   r * std::sin(t)));
        }
        fmax = std::max(fmax, ring_max);
        if (ring_max > 1e-14 * (fmax > 0 ? fmax : 1.0)) r_bound = r + 1.0 / n_r;
    }
    r_bound = std::min(1.0 - 1e-9, r_bound + 0.02);
    const double envelope = fmax * 1.25;
    std::vector<std::array<double, 2>> out;
    out.reserve(count);
    const std::size_t max_tries = count * 4000 + 100000;
    std::size_t tries = 0;
    while (out.size() < count) {
        if (++tries > max_tries)
            throw EnvelopeTooTight("sample_gibbs_h2: acceptance rate too low");
        const double x = rng.uniform(-r_bound, r_bound);
        const double y = rng.uniform(-r_bound, r_bound);
        if (x * x + y * y >= r_bound * r_bound) continue;
        const double f = gibbs_density_disk(delta, mu, theta, x, y);
        if (f > envelope)
            throw EnvelopeTooTight("sample_gibbs_h2: density exceeds the envelope");
        if (rng.uniform01() * envelope < f) out.push_back({x, y});
    }
    return out;
}

std::string to_string(PartitionMethod m) {
    switch (m) {
        case PartitionMethod::ClosedForm: return "closed";
        case PartitionMethod::Staged: return "staged";
        case PartitionMethod::Quadrature: return "numeric";
        case PartitionMethod::MonteCarlo: return "monte-carlo";
    }
    return "?";
}

}  // namespace geotherm::gibbs
