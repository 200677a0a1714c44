#ifndef WITTENLAB_MORSE_VERIFIER_HPP
#define WITTENLAB_MORSE_VERIFIER_HPP

#include <optional>

#include "wittenlab/report.hpp"
#include "wittenlab/spectral.hpp"

namespace wittenlab {

// Betti numbers as dim ker of the undeformed (k = 0) Hodge Laplacian per degree,
// cross-checked against the integer incidence-rank computation.
std::vector<int> betti_numbers(const CellComplex& cx, const ScalarField& f, SpectraCache& cache,
                               const GapPolicy& policy = {});

// Same computation with the zero potential (no field or cache at hand).
std::vector<int> betti_numbers(const CellComplex& cx, const GapPolicy& policy = {});

// Per (k, t_eff): per-degree traces Z^r, partial alternating sums against the
// Betti partial sums, and the full alternating sum against chi.
struct McKeanSingerOptions {
    std::vector<double> k_list;
    std::vector<double> t_eff_list;
    double rel_tol = 1e-8;
};
ExperimentReport mckean_singer_report(const CellComplex& cx, const ScalarField& f,
                                      const McKeanSingerOptions& opt, SpectraCache& cache);

// Table of heat_trace(r, t/k) over increasing k then t; the final cell must be
// within tol of the Morse number m_r.
struct TraceLimitOptions {
    int degree = 0;
    std::vector<double> k_list;
    std::vector<double> t_list;
    double tol = 0.05;
};
ExperimentReport trace_integral_limit_report(const CellComplex& cx, const ScalarField& f,
                                             const TraceLimitOptions& opt, SpectraCache& cache);

struct MorseReport {
    std::vector<int> betti;
    std::vector<int> morse;
    std::vector<bool> weak_pass;   // b_r <= m_r
    std::vector<bool> strong_pass; // partial alternating sums
    bool euler_pass = false;
    bool inconclusive = false;
    std::vector<std::string> verdict_lines; // "WEAK r=0 PASS" ... "EULER PASS"
    ExperimentReport evidence;              // heat-trace table (k, t, r, value)

    bool all_pass() const;
};

MorseReport morse_inequality_report(const CellComplex& cx, const ScalarField& f, double k,
                                    double t, SpectraCache& cache);

// Nonzero-spectrum supersymmetry (exactness of d_k on nonzero eigenspaces):
// cluster nonzero eigenvalues across degrees at relative tolerance `cluster_tol`;
// every cluster must satisfy the partial alternating-sum inequalities with
// equality at top degree. Returns a failure diagnostic, or nullopt if it holds.
std::optional<std::string> supersymmetric_pairing_violation(
    const std::vector<const SpectralDecomposition*>& per_degree, double cluster_tol = 1e-6,
    const GapPolicy& policy = {});

} // namespace wittenlab

#endif
