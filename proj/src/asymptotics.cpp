#include "wittenlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "wittenlab/version.hpp"

namespace wittenlab {

namespace {

// cells of one frame component form a regular grid shifted by the barycenter
// offset; identify a physical point by bracketing indices + weights per axis.
struct ComponentGrid {
    int degree;
    std::array<double, 2> offset{0.0, 0.0}; // barycenter shift
    int base = 0;                           // id offset (y-edges sit after x-edges)
};

ComponentGrid component_grid(const CellComplex& cx, int degree, const MultiIndex& index) {
    ComponentGrid g{degree, {0.0, 0.0}, 0};
    if (cx.dim == 1) {
        if (degree == 1)
            g.offset[0] = 0.5 * cx.periods[0] / cx.grid[0];
        return g;
    }
    const double hx = cx.periods[0] / cx.grid[0];
    const double hy = cx.periods[1] / cx.grid[1];
    if (degree == 0)
        return g;
    if (degree == 2) {
        g.offset = {hx / 2, hy / 2};
        return g;
    }
    if (index.degree() != 1)
        throw ProbeError("component_grid: 1-form probe needs a frame component dx or dy");
    if (index.entries()[0] == 1)
        g.offset = {hx / 2, 0.0};
    else {
        g.offset = {0.0, hy / 2};
        g.base = cx.grid[0] * cx.grid[1];
    }
    return g;
}

struct AxisBracket {
    int lo, hi;
    double w_lo, w_hi;
    double frac;
};

AxisBracket bracket(double coord, double offset, double period, int n) {
    const double h = period / n;
    double s = (coord - offset) / h;
    s -= std::floor(s / n) * n;
    const int j0 = static_cast<int>(std::floor(s)) % n;
    const double frac = s - std::floor(s);
    return {j0, (j0 + 1) % n, 1.0 - frac, frac, frac};
}

struct PointSupport {
    std::vector<int> cells;
    std::vector<double> weights;
    double nearest_node_distance; // physical units
    int nearest_cell;
};

PointSupport locate(const CellComplex& cx, const ComponentGrid& g, std::array<double, 2> point) {
    PointSupport ps{};
    if (cx.dim == 1) {
        const AxisBracket bx = bracket(point[0], g.offset[0], cx.periods[0], cx.grid[0]);
        ps.cells = {bx.lo, bx.hi};
        ps.weights = {bx.w_lo, bx.w_hi};
        const double h = cx.periods[0] / cx.grid[0];
        ps.nearest_node_distance = std::min(bx.frac, 1.0 - bx.frac) * h;
        ps.nearest_cell = (bx.frac <= 0.5) ? bx.lo : bx.hi;
        return ps;
    }
    const AxisBracket bx = bracket(point[0], g.offset[0], cx.periods[0], cx.grid[0]);
    const AxisBracket by = bracket(point[1], g.offset[1], cx.periods[1], cx.grid[1]);
    const int ny = cx.grid[1];
    auto id = [&](int i, int j) { return g.base + i * ny + j; };
    ps.cells = {id(bx.lo, by.lo), id(bx.lo, by.hi), id(bx.hi, by.lo), id(bx.hi, by.hi)};
    ps.weights = {bx.w_lo * by.w_lo, bx.w_lo * by.w_hi, bx.w_hi * by.w_lo, bx.w_hi * by.w_hi};
    const double hx = cx.periods[0] / cx.grid[0], hy = cx.periods[1] / cx.grid[1];
    const double dx = std::min(bx.frac, 1 - bx.frac) * hx, dy = std::min(by.frac, 1 - by.frac) * hy;
    ps.nearest_node_distance = std::hypot(dx, dy);
    const int ni = (bx.frac <= 0.5) ? bx.lo : bx.hi;
    const int nj = (by.frac <= 0.5) ? by.lo : by.hi;
    ps.nearest_cell = id(ni, nj);
    return ps;
}

double model_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return std::sqrt(s);
}

} // namespace

double scaled_kernel(const SpectralDecomposition& dec, const CellComplex& cx,
                     const CriticalPoint& p, const MultiIndex& index, double k, double t,
                     std::span<const double> x, std::span<const double> y, double epsilon,
                     InterpInfo* info) {
    if (!(t > 0.0) || !(k > 0.0))
        throw std::domain_error("scaled_kernel: t and k must be positive");
    if (static_cast<int>(x.size()) != cx.dim || static_cast<int>(y.size()) != cx.dim)
        throw ProbeError("scaled_kernel: point dimension mismatch with the complex");
    const double sqrt_k = std::sqrt(k);
    const double guard = std::pow(k, epsilon) * (1.0 + 1e-12);
    for (auto pt : {x, y}) {
        const double r = model_norm(pt);
        if (r > guard)
            throw ProbeError("scaled_kernel: probe point outside B(k^epsilon)");
        if (r / sqrt_k > p.rho0)
            throw ProbeError("scaled_kernel: probe point outside the quadratic window");
    }
    const ComponentGrid grid = component_grid(cx, dec.degree, index);
    std::array<double, 2> px{0, 0}, py{0, 0};
    for (int ax = 0; ax < cx.dim; ++ax) {
        px[ax] = p.position[ax] + x[ax] / sqrt_k;
        py[ax] = p.position[ax] + y[ax] / sqrt_k;
    }
    const PointSupport sx = locate(cx, grid, px);
    const PointSupport sy = locate(cx, grid, py);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(sx.cells.size() * sy.cells.size());
    for (int a : sx.cells)
        for (int b : sy.cells)
            pairs.emplace_back(a, b);
    const std::vector<double> entries = heat_kernel_entries(dec, t / k, pairs);
    double interp = 0.0;
    std::size_t q = 0;
    double nearest_value = 0.0;
    for (std::size_t i = 0; i < sx.cells.size(); ++i)
        for (std::size_t j = 0; j < sy.cells.size(); ++j, ++q) {
            interp += sx.weights[i] * sy.weights[j] * entries[q];
            if (sx.cells[i] == sx.nearest_cell && sy.cells[j] == sy.nearest_cell)
                nearest_value = entries[q];
        }
    const double prefactor = std::pow(k, -cx.dim / 2.0);
    if (info) {
        info->nearest_node_distance =
            std::max(sx.nearest_node_distance, sy.nearest_node_distance) * sqrt_k;
        info->residual_estimate = prefactor * std::abs(interp - nearest_value);
    }
    return prefactor * interp;
}

ExperimentReport convergence_report(const CellComplex& cx, const ScalarField& f, int degree,
                                    const ConvergenceOptions& opt, SpectraCache& cache) {
    if (opt.k_list.empty() || !std::is_sorted(opt.k_list.begin(), opt.k_list.end()) ||
        opt.k_list.front() <= 0.0)
        throw ConfigError("convergence_report: k_list must be positive and increasing");
    if (opt.point_grid.empty())
        throw ConfigError("convergence_report: point grid must be non-empty");
    const CriticalPoint& p = f.critical_points.at(opt.critical_point);
    const ModelCriticalPoint model_p(cx.dim, p.index);
    double h = cx.periods[0] / cx.grid[0];
    if (cx.dim == 2)
        h = std::max(h, cx.periods[1] / cx.grid[1]);
    const double k_max = opt.k_list.back();
    if (std::sqrt(k_max) * h > opt.resolution_guard) {
        std::ostringstream os;
        os << "convergence_report: grid too coarse, sqrt(k) h = " << std::sqrt(k_max) * h
           << " exceeds " << opt.resolution_guard;
        throw ProbeError(os.str());
    }
    // probe points: tensor grid over axes; pairs of points
    std::vector<std::vector<double>> points;
    if (cx.dim == 1) {
        for (double v : opt.point_grid)
            points.push_back({v});
    } else {
        for (double vx : opt.point_grid)
            for (double vy : opt.point_grid)
                points.push_back({vx, vy});
    }
    // window precondition for the largest k
    for (const auto& pt : points) {
        const double r = model_norm(pt);
        if (r / std::sqrt(k_max) > p.rho0)
            throw ProbeError("convergence_report: point grid escapes the window at the largest k");
    }
    ExperimentReport rep;
    rep.name = "scaled_kernel_convergence";
    rep.manifest = make_manifest({{"tool", std::string("wittenlab ") + kVersion},
                                  {"grid", cx.descriptor()},
                                  {"f", f.descriptor},
                                  {"epsilon", format_double(opt.epsilon)},
                                  {"degree", format_double(degree)}});
    rep.columns = {"k", "t", "sup_abs_error", "sup_rel_error", "max_node_distance",
                   "max_interp_residual"};
    std::vector<double> final_errors;
    for (double t : opt.t_list) {
        double model_sup = 0.0;
        for (const auto& a : points)
            for (const auto& b : points)
                model_sup = std::max(model_sup, std::abs(model_kernel_component(
                                                    model_p, opt.component, t, a, b)));
        std::vector<double> sups;
        for (double k : opt.k_list) {
            auto dec = cache.get(cx, f, k, degree);
            double sup = 0.0, node_dist = 0.0, resid = 0.0;
            for (const auto& a : points)
                for (const auto& b : points) {
                    InterpInfo info;
                    const double measured =
                        scaled_kernel(*dec, cx, p, opt.component, k, t, a, b, opt.epsilon, &info);
                    const double reference = model_kernel_component(model_p, opt.component, t, a, b);
                    sup = std::max(sup, std::abs(measured - reference));
                    node_dist = std::max(node_dist, info.nearest_node_distance);
                    resid = std::max(resid, info.residual_estimate);
                }
            sups.push_back(sup);
            rep.add_row({format_double(k), format_double(t), format_double(sup),
                         format_double(sup / model_sup), format_double(node_dist),
                         format_double(resid)});
        }
        bool monotone = true;
        for (std::size_t i = 0; i + 1 < sups.size(); ++i)
            monotone = monotone && (sups[i + 1] < sups[i]);
        {
            std::ostringstream os;
            os << "t=" << t << " errors";
            for (double s : sups)
                os << " " << format_double(s);
            rep.add_check("monotone_decrease", monotone, os.str());
        }
        final_errors.push_back(sups.back() / model_sup);
        rep.add_check("final_rel_error", final_errors.back() < opt.final_rel_tol,
                      "t=" + format_double(t) + " rel=" + format_double(final_errors.back()));
    }
    return rep;
}

ExperimentReport annulus_decay_probe(const CellComplex& cx, const ScalarField& f, int degree,
                                     const AnnulusOptions& opt, SpectraCache& cache) {
    const CriticalPoint& p = f.critical_points.at(opt.critical_point);
    if (opt.n_radii < 2)
        throw ConfigError("annulus_decay_probe: need at least two radii for a slope fit");
    const double r_min = 2.0 * opt.dee;
    const double r_max = std::pow(opt.k, opt.epsilon);
    if (!(r_min < r_max))
        throw ConfigError("annulus_decay_probe: no admissible radii, 2D >= k^epsilon");
    if (r_max / std::sqrt(opt.k) > p.rho0)
        throw ProbeError("annulus_decay_probe: k^epsilon escapes the quadratic window");
    auto dec = cache.get(cx, f, opt.k, degree);
    ExperimentReport rep;
    rep.name = "annulus_decay";
    rep.manifest = make_manifest({{"tool", std::string("wittenlab ") + kVersion},
                                  {"grid", cx.descriptor()},
                                  {"f", f.descriptor},
                                  {"epsilon", format_double(opt.epsilon)},
                                  {"D", format_double(opt.dee)},
                                  {"k", format_double(opt.k)},
                                  {"t", format_double(opt.t)}});
    rep.columns = {"radius", "diagonal_value"};
    std::vector<double> lx, lv, values;
    for (int i = 0; i < opt.n_radii; ++i) {
        const double r = r_min + (r_max - r_min) * i / (opt.n_radii - 1);
        std::vector<double> x(cx.dim, 0.0);
        x[0] = r;
        const double v =
            std::abs(scaled_kernel(*dec, cx, p, opt.component, opt.k, opt.t, x, x, opt.epsilon));
        values.push_back(v);
        lx.push_back(std::log(r));
        lv.push_back(std::log(v));
        rep.add_row({format_double(r), format_double(v)});
    }
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        monotone = monotone && (values[i + 1] < values[i]);
    rep.add_check("monotone_in_radius", monotone);
    // least-squares slope of log v against log r
    const auto n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += lv[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * lv[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.add_check("loglog_slope", slope <= opt.slope_max, "slope=" + format_double(slope));
    return rep;
}

ExperimentReport far_field_decay_probe(const CellComplex& cx, const ScalarField& f, int degree,
                                       const FarFieldOptions& opt, SpectraCache& cache) {
    if (opt.k_list.size() < 2 || !std::is_sorted(opt.k_list.begin(), opt.k_list.end()) ||
        opt.k_list.front() <= 0.0)
        throw ConfigError("far_field_decay_probe: need an increasing list of positive k");
    ExperimentReport rep;
    rep.name = "far_field_decay";
    rep.manifest = make_manifest({{"tool", std::string("wittenlab ") + kVersion},
                                  {"grid", cx.descriptor()},
                                  {"f", f.descriptor},
                                  {"epsilon", format_double(opt.epsilon)},
                                  {"t", format_double(opt.t)},
                                  {"degree", format_double(degree)}});
    rep.columns = {"k", "window_radius", "cells_outside", "sup_diagonal"};
    std::vector<double> sups;
    for (double k : opt.k_list) {
        const double radius = std::pow(k, -0.5 + opt.epsilon);
        auto dec = cache.get(cx, f, k, degree);
        const std::vector<double> diag = heat_kernel_diagonal(*dec, opt.t / k);
        double sup = 0.0;
        int outside = 0;
        for (int c = 0; c < cx.n_cells(degree); ++c) {
            const auto& b = cx.cells[degree][c].barycenter;
            bool in_window = false;
            for (const CriticalPoint& p : f.critical_points) {
                double d2 = 0.0;
                for (int ax = 0; ax < cx.dim; ++ax) {
                    const double d = periodic_delta(b[ax], p.position[ax], cx.periods[ax]);
                    d2 += d * d;
                }
                if (d2 <= radius * radius) {
                    in_window = true;
                    break;
                }
            }
            if (!in_window) {
                ++outside;
                sup = std::max(sup, diag[c]);
            }
        }
        if (outside == 0)
            throw ConfigError("far_field_decay_probe: U^k covers the whole complex, k too small");
        sups.push_back(sup);
        rep.add_row({format_double(k), format_double(radius), format_double(outside),
                     format_double(sup)});
    }
    for (std::size_t i = 0; i + 1 < sups.size(); ++i) {
        const double ratio = sups[i] / sups[i + 1];
        rep.add_check("shrink_factor", ratio >= opt.shrink_factor,
                      "k=" + format_double(opt.k_list[i]) + "->" +
                          format_double(opt.k_list[i + 1]) + " ratio=" + format_double(ratio));
    }
    return rep;
}

ExperimentReport bochner_rayleigh_check(const CellComplex& cx, const ScalarField& f,
                                        const BochnerOptions& opt) {
    const CriticalPoint& p = f.critical_points.at(opt.critical_point);
    const double inner = opt.xmag / (2.0 * std::sqrt(opt.k));
    const double outer = std::min(std::pow(opt.k, -0.5 + opt.epsilon), p.rho0);
    if (!(inner < outer))
        throw ConfigError("bochner_rayleigh_check: empty annulus (inner radius >= outer)");
    const int degree = opt.degree;
    std::vector<int> annulus;
    for (int c = 0; c < cx.n_cells(degree); ++c) {
        const auto& b = cx.cells[degree][c].barycenter;
        double d2 = 0.0;
        for (int ax = 0; ax < cx.dim; ++ax) {
            const double d = periodic_delta(b[ax], p.position[ax], cx.periods[ax]);
            d2 += d * d;
        }
        if (d2 >= inner * inner && d2 <= outer * outer)
            annulus.push_back(c);
    }
    if (annulus.empty())
        throw ConfigError("bochner_rayleigh_check: no cells in the discrete annulus");
    const DeformedCoboundary b_up =
        degree < cx.dim ? symmetrized_coboundary(cx, f, opt.k, degree) : DeformedCoboundary{};
    const DeformedCoboundary b_down =
        degree > 0 ? symmetrized_coboundary(cx, f, opt.k, degree - 1) : DeformedCoboundary{};
    auto rayleigh = [&](const std::vector<double>& u) {
        double norm2 = 0.0;
        for (double v : u)
            norm2 += v * v;
        if (norm2 == 0.0)
            throw ProbeError("bochner_rayleigh_check: zero cochain rejected");
        double form = 0.0;
        if (degree < cx.dim)
            for (double v : b_up.apply(u))
                form += v * v;
        if (degree > 0)
            for (double v : b_down.apply_transpose(u))
                form += v * v;
        return form / norm2;
    };
    std::mt19937_64 rng(opt.seed);
    auto normal = [&rng]() {
        // Box-Muller (deterministic across standard libraries)
        const double u1 = (rng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
        const double u2 = (rng() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    };
    ExperimentReport rep;
    rep.name = "bochner_rayleigh";
    rep.manifest = make_manifest({{"tool", std::string("wittenlab ") + kVersion},
                                  {"grid", cx.descriptor()},
                                  {"f", f.descriptor},
                                  {"epsilon", format_double(opt.epsilon)},
                                  {"seed", std::to_string(opt.seed)},
                                  {"k", format_double(opt.k)},
                                  {"xmag", format_double(opt.xmag)}});
    rep.columns = {"trial", "rayleigh", "ratio"};
    const double denom = opt.k * opt.xmag * opt.xmag;
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < opt.trials; ++trial) {
        std::vector<double> u(cx.n_cells(degree), 0.0);
        for (int c : annulus)
            u[c] = normal();
        double norm = 0.0;
        for (double v : u)
            norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : u)
            v /= norm; // Hodge-normalized in the symmetric frame
        const double q = rayleigh(u);
        const double ratio = q / denom;
        min_ratio = std::min(min_ratio, ratio);
        rep.add_row({std::to_string(trial), format_double(q), format_double(ratio)});
    }
    const double bound = 0.25 * (1.0 - opt.slack);
    rep.add_check("rayleigh_lower_bound", min_ratio >= bound,
                  "min_ratio=" + format_double(min_ratio) + " bound=" + format_double(bound));
    return rep;
}

double scaling_identity_deviation(const CellComplex& cx, const ScalarField& f, double k) {
    if (cx.dim != 1)
        throw ProbeError("scaling_identity_deviation: implemented for the circle");
    const CriticalPoint& p = f.critical_points.at(0);
    const DeformedCoboundary d = deformed_coboundary(cx, f, k, 0);
    const HodgeInner w = hodge_inner(cx);
    const int n = cx.n_cells(0);
    const double sqrt_k = std::sqrt(k);
    std::vector<double> omega(n);
    for (int c = 0; c < n; ++c) {
        const double u = sqrt_k * periodic_delta(cx.cells[0][c].barycenter[0], p.position[0],
                                                 cx.periods[0]);
        omega[c] = std::exp(-0.5 * u * u) * (1.0 + u * u * u);
    }
    std::vector<double> mid = d.apply(omega);
    for (int e = 0; e < d.rows; ++e)
        mid[e] *= w.weights[1][e];
    std::vector<double> lap = d.apply_transpose(mid);
    for (int c = 0; c < n; ++c)
        lap[c] /= w.weights[0][c];
    double worst = 0.0, scale = 0.0;
    for (int c = 0; c < n; ++c) {
        const double u = sqrt_k * periodic_delta(cx.cells[0][c].barycenter[0], p.position[0],
                                                 cx.periods[0]);
        if (std::abs(u) > 0.5 * p.rho0 * sqrt_k || std::abs(u) > 4.0)
            continue;
        // (-d^2/du^2 + u^2 - 1) of e^{-u^2/2}(1+u^3) = e^{-u^2/2} * 6u(u^2-1)
        const double model = std::exp(-0.5 * u * u) * 6.0 * u * (u * u - 1.0);
        worst = std::max(worst, std::abs(lap[c] / k - model));
        scale = std::max(scale, std::abs(model));
    }
    return worst / scale;
}

} // namespace wittenlab
