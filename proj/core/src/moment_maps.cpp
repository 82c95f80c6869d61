#include "geotherm/geometry/moment_maps.hpp"

#include "geotherm/geometry/isometry.hpp"
#include "geotherm/numkit/fd.hpp"

namespace geotherm::moment {

double moment_map(const ModelSpec& spec, std::size_t lambda, const Vec& y) {
    const Matrix l = coset::coset_rep(spec, y);
    const Matrix li = num::inverse(l);
    return 0.5 * num::trace(Matrix(spec.x_c() * li * spec.full.at(lambda) * l));
}

Vec moment_vector(const ModelSpec& spec, const Vec& y) {
    const Matrix l = coset::coset_rep(spec, y);
    const Matrix li = num::inverse(l);
    const Matrix pre = spec.x_c() * li;
    Vec p(spec.full_dim());
    for (std::size_t lam = 0; lam < p.size(); ++lam)
        p[lam] = 0.5 * num::trace(Matrix(pre * spec.full[lam] * l));
    return p;
}

double hamiltonian_residual(const ModelSpec& spec, std::size_t lambda, const Vec& y,
                            bool flip_center) {
    const Matrix k_eval = coset::kahler_form_at(spec, y);
    const Vec field = isometry::killing_field_closed(spec, lambda, y);
    auto p_fn = [&](const Vec& q) {
        const Matrix l = coset::coset_rep(spec, q);
        const Matrix li = num::inverse(l);
        const double sign = flip_center ? -1.0 : 1.0;
        return sign * 0.5 * num::trace(Matrix(spec.x_c() * li * spec.full[lambda] * l));
    };
    const Vec grad = num::fd_gradient(p_fn, y);
    double worst = 0.0;
    for (std::size_t b = 0; b < spec.dim_d; ++b) {
        double contraction = 0.0;  // (i_k K)_b = k^a K(e_a, e_b)
        for (std::size_t a = 0; a < spec.dim_d; ++a) contraction += field[a] * k_eval(a, b);
        worst = std::max(worst, std::abs(kMomentScale * contraction - grad[b]));
    }
    return worst;
}

double kahler_poisson_bracket(const ModelSpec& spec,
                              const std::function<double(const Vec&)>& f,
                              const std::function<double(const Vec&)>& g, const Vec& y) {
    const Matrix k_half = coset::kahler_form_at(spec, y) * 0.5;
    const Matrix pi = num::inverse(k_half);
    const Vec df = num::fd_gradient(f, y);
    const Vec dg = num::fd_gradient(g, y);
    double s = 0.0;
    for (std::size_t a = 0; a < spec.dim_d; ++a)
        for (std::size_t b = 0; b < spec.dim_d; ++b) s += df[a] * pi(a, b) * dg[b];
    return -s;
}

double moment_poisson_residual(const ModelSpec& spec, const Vec& y) {
    const auto& f = models::full_structure_constants(spec);
    const std::size_t n = spec.full_dim();
    const Vec p = moment_vector(spec, y);
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            auto pa = [&](const Vec& q) { return moment_map(spec, a, q); };
            auto pb = [&](const Vec& q) { return moment_map(spec, b, q); };
            double bracket = kahler_poisson_bracket(spec, pa, pb, y);
            for (std::size_t c = 0; c < n; ++c) bracket -= f[c](a, b) * p[c];
            worst = std::max(worst, std::abs(bracket));
        }
    return worst;
}

}  // namespace geotherm::moment
