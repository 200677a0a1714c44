#ifndef WITTENLAB_ASYMPTOTICS_HPP
#define WITTENLAB_ASYMPTOTICS_HPP

#include <cstdint>
#include <optional>

#include "wittenlab/morse_field.hpp"
#include "wittenlab/oscillator.hpp"
#include "wittenlab/report.hpp"
#include "wittenlab/spectral.hpp"

namespace wittenlab {

struct ProbeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Interpolated kernel-density evaluation bookkeeping.
struct InterpInfo {
    double nearest_node_distance = 0.0; // in model coordinates, max over both points
    double residual_estimate = 0.0;     // |linear interp - nearest-node value|
};

// Scaled heat kernel A_{(k),p}(t,x,y) = k^{-n/2} K_density(x/sqrt k, y/sqrt k) at
// t_eff = t/k, for the frame component `index` (|index| = dec.degree). Points x, y
// are in model coordinates around the critical point p and must stay inside the
// quadratic window and |x| < k^epsilon.
double scaled_kernel(const SpectralDecomposition& dec, const CellComplex& cx,
                     const CriticalPoint& p, const MultiIndex& index, double k, double t,
                     std::span<const double> x, std::span<const double> y,
                     double epsilon = 0.25, InterpInfo* info = nullptr);

struct ConvergenceOptions {
    std::vector<double> k_list;
    std::vector<double> t_list{1.0};
    std::vector<double> point_grid; // per-axis sample points, model coordinates
    double epsilon = 0.25;
    double resolution_guard = 0.05; // require sqrt(k) h <= this
    double final_rel_tol = 0.05;
    MultiIndex component;
    int critical_point = 0; // index into f.critical_points
};

// One row per (k, t): sup over the point grid of |A_(k) - model component|,
// with monotone-decrease and final-error checks.
ExperimentReport convergence_report(const CellComplex& cx, const ScalarField& f, int degree,
                                    const ConvergenceOptions& opt, SpectraCache& cache);

struct AnnulusOptions {
    double k = 400.0;
    double dee = 2.0; // D
    double t = 1.0;
    int n_radii = 5;
    double epsilon = 0.25;
    double slope_max = -4.0; // fitted log-log slope must be <= this
    int critical_point = 0;
    MultiIndex component;
};

// Diagonal |A_(k)(t,x,x)| against |x| over radii [2D, k^eps]; log-log slope fit.
ExperimentReport annulus_decay_probe(const CellComplex& cx, const ScalarField& f, int degree,
                                     const AnnulusOptions& opt, SpectraCache& cache);

struct FarFieldOptions {
    std::vector<double> k_list{16.0, 64.0, 256.0};
    double t = 1.0;
    double epsilon = 0.25;
    double shrink_factor = 10.0; // required value(k)/value(4k)
};

// sup of the diagonal kernel density outside every U_p^k = B(k^{-1/2+eps}) window.
ExperimentReport far_field_decay_probe(const CellComplex& cx, const ScalarField& f, int degree,
                                       const FarFieldOptions& opt, SpectraCache& cache);

struct BochnerOptions {
    double k = 256.0;
    double xmag = 8.0; // |x| in model coordinates
    double epsilon = 0.45;
    int trials = 50;
    std::uint64_t seed = 20240801;
    double slack = 0.1; // require min ratio >= 0.25 (1 - slack)
    int critical_point = 0;
    int degree = 0;
};

// Rayleigh quotients of random cochains supported in the discrete annulus
// A_x^k, each divided by k |x|^2; checks the C = 1/4 lower bound with slack.
ExperimentReport bochner_rayleigh_check(const CellComplex& cx, const ScalarField& f,
                                        const BochnerOptions& opt);

// Operator-level scaling identity: applying Delta_k to k-scaled samples of a
// test function and unscaling, against k * (model operator applied unscaled).
// Returns the max relative deviation over window nodes (reported per run).
double scaling_identity_deviation(const CellComplex& cx, const ScalarField& f, double k);

} // namespace wittenlab

#endif
