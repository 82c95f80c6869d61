#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "geotherm/gds/system.hpp"
#include "geotherm/geometry/isometry.hpp"
#include "geotherm/geometry/moment_maps.hpp"
#include "geotherm/gibbs/souriau.hpp"
#include "geotherm/io/table.hpp"
#include "geotherm/numkit/fd.hpp"
#include "geotherm/numkit/rng.hpp"
#include "geotherm/thermo/classical.hpp"
#include "geotherm/thermo/h2_curvature.hpp"
#include "geotherm/thermo/stochastic.hpp"

namespace {

using namespace geotherm;
using json = nlohmann::json;
using models::ModelName;
using num::Matrix;
using num::Vec;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNoConvergence = 4;

int thread_budget() {
    if (const char* env = std::getenv("GEOTHERM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

/// Deterministic parallel fill: every cell is computed from its index alone,
/// so the output is byte-identical for any thread count.
template <typename Fn>
void parallel_fill(std::size_t count, Fn&& fn) {
    const int threads = std::min<int>(thread_budget(), 64);
    if (threads <= 1 || count < 64) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(16);
                if (i >= count) return;
                for (std::size_t k = i; k < std::min(count, i + 16); ++k) fn(k);
            }
        });
    for (auto& th : pool) th.join();
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

void emit(const io::Table& table, const std::string& out, const std::string& format) {
    const std::string payload = format == "json" ? io::to_json(table) : io::to_csv(table);
    if (out.empty())
        std::cout << payload;
    else
        io::write_file(out, payload);
}

int cmd_model_info(const std::string& model, const std::string& out) {
    const auto& spec = models::load_model(model);
    json doc;
    doc["name"] = models::to_string(spec.name);
    doc["dim"] = spec.dim_d;
    doc["matrix_size"] = spec.matrix_size;
    doc["is_kahler"] = spec.is_kahler;
    doc["kappa"] = matrix_json(spec.kappa);
    doc["nu"] = matrix_json(spec.nu);
    json solv = json::array(), coset = json::array(), compact = json::array();
    for (const auto& t : spec.solvable) solv.push_back(matrix_json(t));
    for (const auto& k : spec.coset) coset.push_back(matrix_json(k));
    for (const auto& h : spec.compact) compact.push_back(matrix_json(h));
    doc["solvable_generators"] = std::move(solv);
    doc["coset_generators"] = std::move(coset);
    doc["compact_generators"] = std::move(compact);
    if (spec.is_kahler) doc["compact_center"] = matrix_json(spec.x_compact);
    const std::string payload = doc.dump(2) + "\n";
    if (out.empty())
        std::cout << payload;
    else
        io::write_file(out, payload);
    return kExitOk;
}

struct CheckResult {
    std::string name;
    double residual;
    double tolerance;
    bool applicable = true;
    bool passed() const { return !applicable || residual <= tolerance; }
};

int cmd_validate(const std::string& model, double tol, std::uint64_t seed,
                 const std::string& inject_fault, const std::string& out) {
    const auto& spec = models::load_model(model);
    num::Rng rng(seed);
    std::vector<Vec> points;
    for (int i = 0; i < 8; ++i) {
        Vec y(spec.dim_d);
        for (double& v : y) v = rng.uniform(-0.8, 0.8);
        points.push_back(std::move(y));
    }
    std::vector<CheckResult> checks;

    double mc = 0.0;
    for (const auto& y : points)
        mc = std::max(mc, inject_fault == "structure-constants"
                              ? coset::maurer_cartan_residual_perturbed(spec, y, 0.1)
                              : coset::maurer_cartan_residual(spec, y));
    checks.push_back({"maurer-cartan", mc, std::max(tol, 1e-7)});

    if (spec.is_kahler) {
        double closure = 0.0, jsq = 0.0, vol = 0.0, moment = 0.0, poisson = 0.0;
        const double v0 = coset::volume_density(spec, Vec(spec.dim_d, 0.0));
        auto kform = [&](const Vec& y) { return coset::kahler_form_at(spec, y); };
        for (const auto& y : points) {
            closure = std::max(closure, num::fd_exterior_derivative_2form(kform, y));
            const Matrix j = coset::complex_structure_at(spec, y);
            jsq = std::max(jsq, num::max_abs(j * j + Matrix::identity(spec.dim_d)));
            vol = std::max(vol, std::abs(coset::volume_density(spec, y) - v0) /
                                    std::abs(v0));
        }
        for (int i = 0; i < 3; ++i) {
            for (std::size_t lam = 0; lam < spec.full_dim(); ++lam)
                moment = std::max(moment, moment::hamiltonian_residual(
                                              spec, lam, points[i],
                                              inject_fault == "kahler-sign"));
            poisson = std::max(poisson, moment::moment_poisson_residual(spec, points[i]));
        }
        checks.push_back({"kahler-closure", closure, std::max(tol, 1e-7)});
        checks.push_back({"complex-structure-square", jsq, std::max(tol, 1e-10)});
        checks.push_back({"volume-density-constancy", vol, std::max(tol, 1e-9)});
        checks.push_back({"moment-hamiltonian-identity", moment, std::max(tol, 1e-5)});
        checks.push_back({"moment-poisson-algebra", poisson, std::max(tol, 1e-5)});
        if (isometry::has_closed_killing_fields(spec)) {
            std::vector<Vec> few(points.begin(), points.begin() + 2);
            checks.push_back({"killing-algebra",
                              isometry::killing_algebra_residual(spec, few),
                              std::max(tol, 1e-5)});
        }
    } else {
        checks.push_back({"kahler-closure", 0.0, 0.0, false});
        // involution of the conserved flow Hamiltonians
        if (spec.name == ModelName::SL3) {
            double inv = 0.0;
            auto h1 = [](const Vec& p) { return gds::sl3_hamiltonians(p)[0]; };
            auto h2 = [](const Vec& p) { return gds::sl3_hamiltonians(p)[1]; };
            auto h3 = [](const Vec& p) { return gds::sl3_hamiltonians(p)[2]; };
            for (int i = 0; i < 20; ++i) {
                Vec p(5);
                for (double& v : p) v = rng.uniform(-1.5, 1.5);
                if (std::abs(p[4]) < 0.3) p[4] = 0.3;
                inv = std::max(inv, std::abs(gds::reduced_bracket(spec, h1, h2, p)));
                inv = std::max(inv, std::abs(gds::reduced_bracket(spec, h1, h3, p)));
                inv = std::max(inv, std::abs(gds::reduced_bracket(spec, h2, h3, p)));
            }
            checks.push_back({"hamiltonian-involution", inv, std::max(tol, 1e-9)});
        }
    }

    json doc;
    doc["model"] = models::to_string(spec.name);
    doc["seed"] = seed;
    json list = json::array();
    bool all_ok = true;
    for (const auto& c : checks) {
        json e;
        e["check"] = c.name;
        e["applicable"] = c.applicable;
        if (c.applicable) {
            e["residual"] = c.residual;
            e["tolerance"] = c.tolerance;
        }
        e["passed"] = c.passed();
        all_ok = all_ok && c.passed();
        list.push_back(std::move(e));
    }
    doc["checks"] = std::move(list);
    doc["passed"] = all_ok;
    const std::string payload = doc.dump(2) + "\n";
    if (out.empty())
        std::cout << payload;
    else
        io::write_file(out, payload);
    return all_ok ? kExitOk : kExitValidation;
}

int cmd_gibbs_grid(double delta, double mu, double theta, int resolution,
                   const std::string& out, const std::string& format) {
    const gibbs::TemperatureVector tau = gibbs::TemperatureVector::h2(
        delta, mu * std::cos(theta), mu * std::sin(theta));
    if (!gibbs::in_cone(tau)) throw gibbs::OutsideCone("temperatures outside the cone");
    io::Table table;
    table.columns = {"x", "y", "density"};
    table.params = {{"delta", delta}, {"mu", mu}, {"theta", theta},
                    {"resolution", static_cast<double>(resolution)}};
    table.rows.assign(static_cast<std::size_t>(resolution) * resolution, {});
    parallel_fill(table.rows.size(), [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / resolution;
        const int j = static_cast<int>(idx) % resolution;
        const double x = -1.0 + (2.0 * i + 1.0) / resolution;
        const double y = -1.0 + (2.0 * j + 1.0) / resolution;
        double density = 0.0;
        if (x * x + y * y < 1.0) density = gibbs::gibbs_density_disk(delta, mu, theta, x, y);
        table.rows[idx] = {x, y, density};
    });
    emit(table, out, format);
    return kExitOk;
}

int cmd_partition(const std::string& model, const std::string& method, double delta,
                  double beta, double zeta, double lambda, double mu, double l1,
                  double l3, double volume, std::uint64_t seed, const std::string& out) {
    gibbs::PartitionEvaluation ev;
    json params;
    if (model == "h2") {
        params = {{"delta", delta}, {"beta", beta}, {"zeta", zeta}};
        if (method == "closed")
            ev = gibbs::partition_h2(delta, beta, zeta);
        else {
            num::Rng rng(seed);
            ev = gibbs::partition_numeric(models::load_model(ModelName::H2),
                                          gibbs::TemperatureVector::h2(delta, beta, zeta),
                                          400000, &rng);
        }
    } else if (model == "sh2") {
        params = {{"lambda", lambda}, {"mu", mu}};
        if (method == "numeric") {
            num::Rng rng(seed);
            ev = gibbs::partition_numeric(models::load_model(ModelName::SH2_vector),
                                          gibbs::TemperatureVector::sh2_canonical(lambda, mu),
                                          400000, &rng);
        } else {
            ev = gibbs::partition_siegel(lambda, mu);
        }
    } else if (model == "sl3-gds") {
        params = {{"l1", l1}, {"l3", l3}, {"V", volume}};
        ev = method == "numeric" ? gds::gds_partition_sl3_quadrature(l1, l3, volume)
                                 : gds::gds_partition_sl3(l1, l3, volume);
    } else {
        throw CLI::ValidationError("--model must be h2, sh2 or sl3-gds");
    }
    json doc;
    doc["model"] = model;
    doc["params"] = std::move(params);
    doc["value"] = ev.value;
    doc["error"] = ev.error_estimate;
    doc["method"] = gibbs::to_string(ev.method);
    const std::string payload = doc.dump(2) + "\n";
    std::cout << io::format_double(ev.value) << "\n";
    if (!out.empty()) io::write_file(out, payload);
    return kExitOk;
}

int cmd_geodesic(const std::string& model, const std::vector<double>& y0,
                 const std::vector<double>& p0, double t_end, int steps,
                 const std::string& out, const std::string& format) {
    const auto& spec = models::load_model(model);
    gds::PhasePoint start;
    start.y = y0.empty() ? Vec(spec.dim_d, 0.0) : y0;
    start.p = p0;
    if (start.p.size() != spec.dim_d || start.y.size() != spec.dim_d)
        throw CLI::ValidationError("--p0/--y0 must have the model dimension");
    const auto traj = gds::geodesic_integrate(spec, start, t_end,
                                              static_cast<std::size_t>(steps));
    io::Table table;
    table.columns = {"t"};
    for (std::size_t i = 0; i < spec.dim_d; ++i)
        table.columns.push_back("y" + std::to_string(i + 1));
    for (std::size_t i = 0; i < spec.dim_d; ++i)
        table.columns.push_back("p" + std::to_string(i + 1));
    table.columns.push_back("h1");
    table.columns.push_back("h2");
    table.columns.push_back("h3");
    table.params = {{"t_end", t_end}, {"steps", static_cast<double>(steps)}};
    for (const auto& s : traj) {
        std::vector<double> row;
        row.push_back(s.t);
        row.insert(row.end(), s.y.begin(), s.y.end());
        row.insert(row.end(), s.p.begin(), s.p.end());
        row.push_back(s.h[0]);
        row.push_back(s.h[1]);
        row.push_back(s.h[2]);
        table.rows.push_back(std::move(row));
    }
    emit(table, out, format);
    return kExitOk;
}

int cmd_thermo(const std::string& surface, const std::string& quantity, int resolution,
               double a, double b, double n_moles, double r_gas, const std::string& out,
               const std::string& format) {
    io::Table table;
    table.params = {{"resolution", static_cast<double>(resolution)}};
    if (surface == "vdw") {
        table.columns = {"t_reduced", "v_reduced",
                         quantity == "metric" ? "g_tt" : "curvature"};
        const auto crit = thermo::vdw_critical(a, b, n_moles, r_gas);
        table.rows.assign(static_cast<std::size_t>(resolution) * resolution, {});
        parallel_fill(table.rows.size(), [&](std::size_t idx) {
            const int i = static_cast<int>(idx) / resolution;
            const int j = static_cast<int>(idx) % resolution;
            const double tr = 0.2 + 1.6 * (i + 0.5) / resolution;
            const double vr = 0.5 + 3.5 * (j + 0.5) / resolution;
            double value;
            if (quantity == "metric")
                value = thermo::vdw_metric(tr * crit.t_c, vr * crit.v_c, a, b, n_moles,
                                           r_gas)(0, 0);
            else
                value = thermo::vdw_dimensionless_curvature(tr, vr);
            table.rows[idx] = {tr, vr, value};
        });
    } else if (surface == "h2-thermo") {
        table.columns = {"delta", "mu", "F", "G", "Q", "P"};
        table.rows.assign(static_cast<std::size_t>(resolution) * resolution, {});
        parallel_fill(table.rows.size(), [&](std::size_t idx) {
            const int i = static_cast<int>(idx) / resolution;
            const int j = static_cast<int>(idx) % resolution;
            const double d = 0.5 + 3.0 * (i + 0.5) / resolution;
            const double m = (d - 1e-3) * (j + 0.5) / resolution;
            std::array<double, 4> c{0, 0, 0, 0};
            if (m > 1e-6) c = thermo::h2_curvature_components(d, m);
            table.rows[idx] = {d, m, c[0], c[1], c[2], c[3]};
        });
    } else if (surface == "gds") {
        table.columns = {"l1", "l3", quantity == "metric" ? "g_11" : "curvature"};
        table.rows.assign(static_cast<std::size_t>(resolution) * resolution, {});
        parallel_fill(table.rows.size(), [&](std::size_t idx) {
            const int i = static_cast<int>(idx) / resolution;
            const int j = static_cast<int>(idx) % resolution;
            const double l1 = 0.3 + 2.7 * (i + 0.5) / resolution;
            const double l3 = -2.0 + 4.0 * (j + 0.5) / resolution;
            const double value = quantity == "metric"
                                     ? gds::gds_thermo_metric(l1, l3, 1.0)(0, 0)
                                     : gds::gds_thermo(l1, l3, 1.0).frame_curvature_12;
            table.rows[idx] = {l1, l3, value};
        });
    } else if (surface == "ideal-gas") {
        table.columns = {"t", "v", "curvature"};
        auto g = thermo::metric_field([&](const Vec& x) {
            return thermo::ideal_gas_metric(1.0, n_moles, x[0], x[1]);
        });
        table.rows.assign(static_cast<std::size_t>(resolution) * resolution, {});
        parallel_fill(table.rows.size(), [&](std::size_t idx) {
            const int i = static_cast<int>(idx) / resolution;
            const int j = static_cast<int>(idx) % resolution;
            const double t = 0.5 + 2.5 * (i + 0.5) / resolution;
            const double v = 0.5 + 2.5 * (j + 0.5) / resolution;
            table.rows[idx] = {t, v, thermo::curvature_from_metric(g, {t, v}).scalar};
        });
    } else {
        throw CLI::ValidationError("--surface must be vdw, h2-thermo, gds or ideal-gas");
    }
    emit(table, out, format);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Gibbs states and thermodynamic geometry on solvable-group charts"};
    app.require_subcommand(1);

    std::string model = "h2", out, format = "csv", method = "closed";
    std::string quantity = "curvature", surface = "vdw", inject_fault;
    double tol = 1e-6, delta = 1.0, beta = 0.0, zeta = 0.0, mu = 0.0, theta = 0.0;
    double lambda = 2.0, l1 = 1.0, l3 = 0.0, volume = 1.0;
    double vdw_a = 1.0, vdw_b = 1.0, n_moles = 1.0, r_gas = 1.0;
    double t_end = 10.0;
    int resolution = 100, steps = 1000;
    std::uint64_t seed = 20240809;
    std::vector<double> y0, p0;

    auto* info = app.add_subcommand("model", "dump catalog data as JSON");
    info->add_option("--model", model)->required();
    info->add_option("--out", out);

    auto* validate = app.add_subcommand("validate", "run the invariant suites");
    validate->add_option("--model", model)->required();
    validate->add_option("--tol", tol);
    validate->add_option("--seed", seed);
    validate->add_option("--inject-fault", inject_fault)
        ->check(CLI::IsMember({"kahler-sign", "structure-constants"}));
    validate->add_option("--out", out);

    auto* grid = app.add_subcommand("gibbs-grid", "disk-model density grid");
    grid->add_option("--delta", delta)->required();
    grid->add_option("--mu", mu);
    grid->add_option("--theta", theta);
    grid->add_option("--resolution", resolution);
    grid->add_option("--out", out);
    grid->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    auto* partition = app.add_subcommand("partition", "partition function evaluation");
    partition->add_option("--model", model)->required();
    partition->add_option("--method", method)
        ->check(CLI::IsMember({"closed", "staged", "numeric"}));
    partition->add_option("--delta", delta);
    partition->add_option("--beta", beta);
    partition->add_option("--zeta", zeta);
    partition->add_option("--lambda", lambda);
    partition->add_option("--mu", mu);
    partition->add_option("--l1", l1);
    partition->add_option("--l3", l3);
    partition->add_option("--V", volume);
    partition->add_option("--seed", seed);
    partition->add_option("--out", out);

    auto* geodesic = app.add_subcommand("geodesic", "integrate the geodesic flow");
    geodesic->add_option("--model", model)->required();
    geodesic->add_option("--y0", y0);
    geodesic->add_option("--p0", p0)->required();
    geodesic->add_option("--t-end", t_end);
    geodesic->add_option("--steps", steps);
    geodesic->add_option("--out", out);
    geodesic->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    auto* th = app.add_subcommand("thermo", "thermodynamic metric/curvature surfaces");
    th->add_option("--surface", surface)->required();
    th->add_option("--quantity", quantity)->check(CLI::IsMember({"metric", "curvature"}));
    th->add_option("--resolution", resolution);
    th->add_option("--a", vdw_a);
    th->add_option("--b", vdw_b);
    th->add_option("--n", n_moles);
    th->add_option("--R", r_gas);
    th->add_option("--out", out);
    th->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (info->parsed()) return cmd_model_info(model, out);
        if (validate->parsed()) return cmd_validate(model, tol, seed, inject_fault, out);
        if (grid->parsed())
            return cmd_gibbs_grid(delta, mu, theta, resolution, out, format);
        if (partition->parsed())
            return cmd_partition(model, method, delta, beta, zeta, lambda, mu, l1, l3,
                                 volume, seed, out);
        if (geodesic->parsed())
            return cmd_geodesic(model, y0, p0, t_end, steps, out, format);
        if (th->parsed())
            return cmd_thermo(surface, quantity, resolution, vdw_a, vdw_b, n_moles,
                              r_gas, out, format);
    } catch (const gibbs::OutsideCone& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const gibbs::DegenerateTemperatures& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const gibbs::DivergenceDetected& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const gds::OutsideCone& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const thermo::OutsideCone& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const thermo::OutsideDomain& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const num::NoConvergence& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const gibbs::BudgetExhausted& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
