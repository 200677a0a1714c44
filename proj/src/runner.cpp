#include "wittenlab/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <set>
#include <sstream>

#include "wittenlab/asymptotics.hpp"
#include "wittenlab/morse_verifier.hpp"
#include "wittenlab/version.hpp"

namespace wittenlab {

namespace {

std::string output_dir(const RunConfig& cfg) {
    if (const char* env = std::getenv(kOutputDirEnvVar))
        return env;
    return cfg.output_dir;
}

std::string out_path(const RunConfig& cfg, const std::string& file) {
    return (std::filesystem::path(output_dir(cfg)) / file).string();
}

void guard_k_sweep(const CellComplex& cx, const ScalarField& f, const std::vector<double>& ks) {
    const double kmax = max_admissible_k(cx, f);
    for (double k : ks)
        if (k > kmax) {
            std::ostringstream os;
            os << "k = " << k << " exceeds the overflow guard; max admissible k for this grid is "
               << kmax;
            throw ConfigError(os.str());
        }
}

// --- model-check: closed-form oscillator identities -------------------------

int run_model_check(const RunConfig& cfg, std::ostream& log) {
    ExperimentReport mehler;
    mehler.name = "mehler_agreement";
    mehler.manifest = make_manifest(
        {{"tool", std::string("wittenlab ") + kVersion}, {"params", cfg.manifest_prefix()}});
    mehler.columns = {"rho", "x", "y", "series", "closed", "abs_diff"};
    const int n_terms = kHermiteMaxOrder; // converges below 1e-9 for rho <= 0.9
    double worst = 0.0;
    for (double rho : {0.0, 0.3, 0.6, 0.9})
        for (double x : {-3.0, -1.5, 0.0, 1.5, 3.0})
            for (double y : {-3.0, -1.5, 0.0, 1.5, 3.0}) {
                const double s = mehler_series(rho, x, y, n_terms);
                const double c = mehler_closed(rho, x, y);
                worst = std::max(worst, std::abs(s - c));
                mehler.add_row({format_double(rho), format_double(x), format_double(y),
                                format_double(s), format_double(c), format_double(s - c)});
            }
    mehler.add_check("mehler_identity", worst < 1e-9,
                     "max_abs_diff=" + format_double(worst) + " n_terms=" +
                         std::to_string(n_terms));

    ExperimentReport traces;
    traces.name = "oscillator_trace_integrals";
    traces.manifest = mehler.manifest;
    traces.columns = {"sign", "t", "exact", "quadrature", "abs_diff"};
    double worst_trace = 0.0;
    for (int sign : {-1, +1})
        for (double t : {0.5, 1.0, 2.0}) {
            const double exact = oscillator_trace_integral(sign, t);
            const double quad = oscillator_trace_integral_quadrature(sign, t);
            worst_trace = std::max(worst_trace, std::abs(exact - quad));
            traces.add_row({format_double(sign), format_double(t), format_double(exact),
                            format_double(quad), format_double(exact - quad)});
        }
    traces.add_check("trace_integral_quadrature", worst_trace < 1e-8,
                     "max_abs_diff=" + format_double(worst_trace));

    // indicator limit of the model trace integral, n = 2, l = 1
    const ModelCriticalPoint p(2, 1);
    ExperimentReport indicator;
    indicator.name = "model_trace_integral_indicator";
    indicator.manifest = mehler.manifest;
    indicator.columns = {"r", "t", "value", "target"};
    bool indicator_ok = true;
    for (int r = 0; r <= 2; ++r) {
        double prev_dev = -1.0;
        for (double t : {2.0, 4.0, 8.0, 12.0}) {
            const double v = model_trace_integral(p, r, t);
            const double target = (r == 1) ? 1.0 : 0.0;
            const double dev = std::abs(v - target);
            if (prev_dev >= 0.0 && dev > prev_dev)
                indicator_ok = false;
            prev_dev = dev;
            indicator.add_row(
                {format_double(r), format_double(t), format_double(v), format_double(target)});
            if (t == 12.0 && dev >= 1e-4)
                indicator_ok = false;
        }
    }
    indicator.add_check("indicator_limit", indicator_ok);

    mehler.write_csv(out_path(cfg, "mehler_agreement.csv"));
    traces.write_csv(out_path(cfg, "oscillator_trace_integrals.csv"));
    indicator.write_csv(out_path(cfg, "model_trace_integral_indicator.csv"));
    for (const auto* rep : {&mehler, &traces, &indicator})
        for (const auto& line : rep->check_lines)
            log << rep->name << ": " << line << "\n";
    return (mehler.passed && traces.passed && indicator.passed) ? 0 : 1;
}

// --- spectrum / heat-trace ---------------------------------------------------

int run_spectrum(const RunConfig& cfg, std::ostream& log) {
    const CellComplex cx = cfg.build_complex();
    const ScalarField f = cfg.build_field(cx);
    guard_k_sweep(cx, f, cfg.k_list);
    ExperimentReport rep;
    rep.name = "spectrum";
    rep.manifest = make_manifest({{"tool", std::string("wittenlab ") + kVersion},
                                  {"grid", cx.descriptor()},
                                  {"f", f.descriptor},
                                  {"params", cfg.manifest_prefix()}});
    rep.columns = {"k", "r", "index", "eigenvalue"};
    for (double k : cfg.k_list)
        for (int r : cfg.degree_list(cx)) {
            auto dec = SpectraCache::global().get(cx, f, k, r);
            for (int i = 0; i < dec->n; ++i)
                rep.add_row({format_double(k), format_double(r), format_double(i),
                             format_double(dec->eigenvalues[i])});
        }
    rep.write_csv(out_path(cfg, "spectrum.csv"));
    log << "spectrum: wrote " << rep.rows.size() << " eigenvalues\n";
    return 0;
}

int run_heat_trace(const RunConfig& cfg, std::ostream& log) {
    const CellComplex cx = cfg.build_complex();
    const ScalarField f = cfg.build_field(cx);
    guard_k_sweep(cx, f, cfg.k_list);
    ExperimentReport rep;
    rep.name = "heat_trace";
    rep.manifest = make_manifest({{"tool", std::string("wittenlab ") + kVersion},
                                  {"grid", cx.descriptor()},
                                  {"f", f.descriptor},
                                  {"params", cfg.manifest_prefix()}});
    rep.columns = {"k", "r", "t_eff", "trace"};
    for (double k : cfg.k_list)
        for (int r : cfg.degree_list(cx)) {
            auto dec = SpectraCache::global().get(cx, f, k, r);
            double prev = -1.0;
            bool monotone = true;
            for (double t : cfg.t_list) {
                const double tr = heat_trace(*dec, t);
                if (prev >= 0.0 && tr > prev)
                    monotone = false;
                prev = tr;
                rep.add_row(
                    {format_double(k), format_double(r), format_double(t), format_double(tr)});
            }
            rep.add_check("monotone_in_t",
                          monotone || !std::is_sorted(cfg.t_list.begin(), cfg.t_list.end()),
                          "k=" + format_double(k) + " r=" + std::to_string(r));
        }
    rep.write_csv(out_path(cfg, "heat_trace.csv"));
    for (const auto& line : rep.check_lines)
        log << "heat-trace: " << line << "\n";
    return rep.passed ? 0 : 1;
}

// --- probes ------------------------------------------------------------------

int run_scaled_kernel(const RunConfig& cfg, std::ostream& log) {
    const CellComplex cx = cfg.build_complex();
    const ScalarField f = cfg.build_field(cx);
    guard_k_sweep(cx, f, cfg.k_list);
    ConvergenceOptions opt;
    opt.k_list = cfg.k_list;
    opt.t_list = {cfg.probe_t};
    opt.point_grid = cfg.point_grid;
    opt.epsilon = cfg.epsilon;
    opt.final_rel_tol = cfg.final_rel_tol;
    opt.component = MultiIndex({}, cx.dim);
    const ExperimentReport rep =
        convergence_report(cx, f, 0, opt, SpectraCache::global());
    rep.write_csv(out_path(cfg, "scaled_kernel_convergence.csv"));
    for (const auto& line : rep.check_lines)
        log << "scaled-kernel: " << line << "\n";
    return rep.passed ? 0 : 1;
}

int run_decay(const RunConfig& cfg, std::ostream& log) {
    const CellComplex cx = cfg.build_complex();
    const ScalarField f = cfg.build_field(cx);
    guard_k_sweep(cx, f, cfg.k_list);
    AnnulusOptions aopt;
    aopt.k = cfg.k_list.back();
    aopt.dee = cfg.dee;
    aopt.t = cfg.probe_t;
    aopt.n_radii = cfg.n_radii;
    aopt.epsilon = cfg.epsilon;
    aopt.slope_max = cfg.slope_max;
    aopt.component = MultiIndex({}, cx.dim);
    const ExperimentReport annulus =
        annulus_decay_probe(cx, f, 0, aopt, SpectraCache::global());
    annulus.write_csv(out_path(cfg, "annulus_decay.csv"));
    FarFieldOptions fopt;
    fopt.k_list = cfg.k_list;
    fopt.t = cfg.probe_t;
    fopt.epsilon = cfg.epsilon;
    fopt.shrink_factor = cfg.shrink_factor;
    const ExperimentReport far =
        far_field_decay_probe(cx, f, 0, fopt, SpectraCache::global());
    far.write_csv(out_path(cfg, "far_field_decay.csv"));
    for (const auto& line : annulus.check_lines)
        log << "decay/annulus: " << line << "\n";
    for (const auto& line : far.check_lines)
        log << "decay/far-field: " << line << "\n";
    return (annulus.passed && far.passed) ? 0 : 1;
}

int run_bochner(const RunConfig& cfg, std::ostream& log) {
    const CellComplex cx = cfg.build_complex();
    const ScalarField f = cfg.build_field(cx);
    guard_k_sweep(cx, f, cfg.k_list);
    BochnerOptions opt;
    opt.k = cfg.k_list.back();
    opt.xmag = cfg.xmag;
    opt.trials = cfg.trials;
    opt.seed = cfg.seed;
    opt.slack = cfg.bochner_slack;
    opt.epsilon = std::max(cfg.epsilon, 0.45); // annulus outer radius, clamped to the window
    const ExperimentReport rep = bochner_rayleigh_check(cx, f, opt);
    rep.write_csv(out_path(cfg, "bochner_rayleigh.csv"));
    for (const auto& line : rep.check_lines)
        log << "bochner: " << line << "\n";
    return rep.passed ? 0 : 1;
}

int run_morse_report(const RunConfig& cfg, std::ostream& log) {
    const CellComplex cx = cfg.build_complex();
    const ScalarField f = cfg.build_field(cx);
    guard_k_sweep(cx, f, cfg.k_list);
    const double k = cfg.k_list.back();
    const double t = cfg.t_list.back();
    const MorseReport mr = morse_inequality_report(cx, f, k, t, SpectraCache::global());
    for (const auto& line : mr.verdict_lines)
        log << line << "\n";
    mr.evidence.write_csv(out_path(cfg, "morse_report.csv"));
    return mr.all_pass() ? 0 : 1;
}

} // namespace

bool is_known_subcommand(const std::string& name) {
    static const std::set<std::string> known = {"model-check", "spectrum",      "heat-trace",
                                                "scaled-kernel", "decay",       "bochner",
                                                "morse-report"};
    return known.count(name) > 0;
}

int run_subcommand(const std::string& name, const RunConfig& config, std::ostream& out) {
    if (!is_known_subcommand(name))
        return 2;
    try {
        if (name == "model-check")
            return run_model_check(config, out);
        if (name == "spectrum")
            return run_spectrum(config, out);
        if (name == "heat-trace")
            return run_heat_trace(config, out);
        if (name == "scaled-kernel")
            return run_scaled_kernel(config, out);
        if (name == "decay")
            return run_decay(config, out);
        if (name == "bochner")
            return run_bochner(config, out);
        if (name == "morse-report")
            return run_morse_report(config, out);
    } catch (const ConfigError& e) {
        out << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const OverflowGuardError& e) {
        out << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace wittenlab
