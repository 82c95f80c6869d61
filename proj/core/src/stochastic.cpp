#include "geotherm/thermo/stochastic.hpp"

#include <cmath>

#include "geotherm/gds/system.hpp"
#include "geotherm/gibbs/souriau.hpp"
#include "geotherm/numkit/fd.hpp"

namespace geotherm::thermo {

namespace {
const double kPi = 3.14159265358979323846;
}

double stochastic_hamiltonian(const StochasticModel& m, const Vec& beta) {
    if (m.in_cone && !m.in_cone(beta))
        throw OutsideCone("stochastic_hamiltonian: parameters outside the cone");
    return -std::log(m.partition(beta));
}

double shannon_information(const StochasticModel& m, const Vec& beta) {
    auto h = [&m](const Vec& b) { return -std::log(m.partition(b)); };
    const double h0 = stochastic_hamiltonian(m, beta);
    const Vec grad = num::fd_gradient(h, beta);
    return h0 - num::dot(beta, grad);
}

Matrix hessian_metric(const StochasticModel& m, const Vec& beta) {
    if (m.in_cone && !m.in_cone(beta))
        throw OutsideCone("hessian_metric: parameters outside the cone");
    auto h = [&m](const Vec& b) { return -std::log(m.partition(b)); };
    return num::fd_hessian(h, beta);
}

double h2_stochastic_hamiltonian(double delta, double beta, double zeta) {
    const double n2 = delta * delta - beta * beta - zeta * zeta;
    if (!(delta > 0.0) || !(n2 > 0.0))
        throw OutsideCone("h2_stochastic_hamiltonian: outside the cone");
    const double n = std::sqrt(n2);
    return n + std::log(n) - std::log(kPi);
}

double h2_shannon_information(double delta, double beta, double zeta) {
    const double n2 = delta * delta - beta * beta - zeta * zeta;
    if (!(delta > 0.0) || !(n2 > 0.0))
        throw OutsideCone("h2_shannon_information: outside the cone");
    return 0.5 * (std::log(n2 / (kPi * kPi)) - 2.0);
}

Matrix h2_thermo_metric(const Vec& b) {
    const double d = b[0], bb = b[1], z = b[2];
    const double n = std::sqrt(d * d - bb * bb - z * z);
    const double pref = 1.0 / (n * n * n * n);
    Matrix m(3, 3);
    m(0, 0) = -(d * d + bb * bb * (n + 1) + z * z * (n + 1));
    m(1, 1) = -(bb * bb + (n + 1) * (d - z) * (d + z));
    m(2, 2) = (n + 1) * (bb - d) * (bb + d) - z * z;
    m(0, 1) = m(1, 0) = (n + 2) * bb * d;
    m(1, 2) = m(2, 1) = -(n + 2) * bb * z;
    m(0, 2) = m(2, 0) = (n + 2) * d * z;
    return m * pref;
}

num::MatrixC h2_thermo_metric_c(const std::vector<std::complex<double>>& b) {
    using C = std::complex<double>;
    const C d = b[0], bb = b[1], z = b[2];
    const C n = std::sqrt(d * d - bb * bb - z * z);
    const C pref = C(1.0) / (n * n * n * n);
    num::MatrixC m(3, 3);
    m(0, 0) = -(d * d + bb * bb * (n + C(1)) + z * z * (n + C(1)));
    m(1, 1) = -(bb * bb + (n + C(1)) * (d - z) * (d + z));
    m(2, 2) = (n + C(1)) * (bb - d) * (bb + d) - z * z;
    m(0, 1) = m(1, 0) = (n + C(2)) * bb * d;
    m(1, 2) = m(2, 1) = -(n + C(2)) * bb * z;
    m(0, 2) = m(2, 0) = (n + C(2)) * d * z;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) *= pref;
    return m;
}

Matrix h2_thermo_dreibein(const Vec& b) {
    const double d = b[0], bb = b[1], z = b[2];
    const double n = std::sqrt(d * d - bb * bb - z * z);
    Matrix v(3, 3);
    const double c1 = 1.0 / (n * n * std::sqrt(n + 2) * (d - z));
    v(0, 1) = -bb * (n + 2) * (d - z) * c1;
    v(0, 0) = (bb * bb * (n + 1) + (d - z) * (d - z * (n + 1))) * c1;
    v(0, 2) = ((d - z) * (d - z + d * n) - bb * bb * (n + 1)) * c1;
    v(1, 1) = std::sqrt(n + 1) * (d - z) / (n * (d - z));
    v(1, 0) = -bb * std::sqrt(n + 1) / (n * (d - z));
    v(1, 2) = bb * std::sqrt(n + 1) / (n * (d - z));
    const double s = std::sqrt((-n * n + n + 2) / ((4 - n * n) * (d - z) * (d - z)));
    v(2, 0) = s;
    v(2, 2) = -s;
    return v;
}

StochasticModel h2_stochastic_model() {
    StochasticModel m;
    m.parameter_dim = 3;
    m.partition = [](const Vec& b) {
        return gibbs::partition_h2(b[0], b[1], b[2]).value;
    };
    m.in_cone = [](const Vec& b) {
        return b[0] > 0 && b[0] * b[0] - b[1] * b[1] - b[2] * b[2] > 0;
    };
    return m;
}

StochasticModel gds_sl3_stochastic_model(double volume) {
    StochasticModel m;
    m.parameter_dim = 2;
    m.partition = [volume](const Vec& b) {
        return gds::gds_partition_sl3(b[0], b[1], volume).value;
    };
    m.in_cone = [](const Vec& b) { return b[0] > 0; };
    return m;
}

}  // namespace geotherm::thermo
