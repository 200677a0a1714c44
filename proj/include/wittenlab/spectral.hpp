#ifndef WITTENLAB_SPECTRAL_HPP
#define WITTENLAB_SPECTRAL_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "wittenlab/deformed.hpp"

namespace wittenlab {

enum class ExecMode { serial, openmp };

// Diagonal Hodge weights per degree: w_r(sigma) = dual_measure / measure.
struct HodgeInner {
    std::vector<std::vector<double>> weights;
};
HodgeInner hodge_inner(const CellComplex& cx);

// Dense symmetric operator, row-major.
struct DenseSym {
    int n = 0;
    std::vector<double> a;
    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// W^{1/2} Delta_k^{(r)} W^{-1/2} = B_r^T B_r + B_{r-1} B_{r-1}^T with
// B_r = W_{r+1}^{1/2} d_{k,r} W_r^{-1/2}; symmetric positive semi-definite.
DenseSym assemble_witten_laplacian(const CellComplex& cx, const ScalarField& f, double k, int r,
                                   ExecMode mode = ExecMode::openmp);

// B_r in sparse form (for quadratic-form evaluation without dense assembly).
DeformedCoboundary symmetrized_coboundary(const CellComplex& cx, const ScalarField& f, double k,
                                          int r);

// Full spectrum of one Witten Laplacian. Eigenvectors are stored in the
// symmetric frame, cell-major (LAPACK layout): vec(cell, mode). Cochain
// components are vec * inv_sqrt_weight[cell]; continuum kernel densities
// additionally divide by the primal cell measures.
struct SpectralDecomposition {
    int degree = 0;
    double k = 0.0;
    int n = 0;
    std::vector<double> eigenvalues; // ascending
    std::vector<double> vectors;     // n x n, vec(cell, mode) = vectors[cell*n + mode]
    std::vector<double> inv_sqrt_weight;
    std::vector<double> inv_measure;
    std::vector<double> volume; // measure * dual_measure (quadrature weight per cell)
    std::string metadata;

    double vec(int cell, int mode) const {
        return vectors[static_cast<std::size_t>(cell) * n + mode];
    }
    double max_eigenvalue() const { return eigenvalues.empty() ? 0.0 : eigenvalues.back(); }
};

SpectralDecomposition eigendecompose(DenseSym op, const CellComplex& cx, int degree, double k,
                                     std::string metadata = {});
SpectralDecomposition compute_spectrum(const CellComplex& cx, const ScalarField& f, double k,
                                       int r);

// residual and orthonormality checks against the assembled operator
struct SpectralValidation {
    double max_residual;       // max_i ||S v_i - lambda_i v_i||_2
    double max_gram_deviation; // max |V^T V - I|
    double min_eigenvalue;
};
SpectralValidation validate_decomposition(const DenseSym& op, const SpectralDecomposition& dec,
                                          int n_sample = 32);

// Heat kernel density e^{-t_eff Delta}(a, b) from the finite eigen-expansion.
double heat_kernel_entry(const SpectralDecomposition& dec, double t_eff, int a, int b);

// Diagonal densities for all cells; serial and OpenMP paths are bit-identical.
std::vector<double> heat_kernel_diagonal(const SpectralDecomposition& dec, double t_eff,
                                         ExecMode mode = ExecMode::openmp);

// Batched entries for probe evaluation.
std::vector<double> heat_kernel_entries(const SpectralDecomposition& dec, double t_eff,
                                        const std::vector<std::pair<int, int>>& pairs,
                                        ExecMode mode = ExecMode::openmp);

// sum_lambda e^{-t_eff lambda} with multiplicity (= integral of the diagonal
// density against the cell volumes, up to the finite-expansion identity).
double heat_trace(const SpectralDecomposition& dec, double t_eff);

struct GapPolicy {
    double floor_factor = 1e-9; // absolute floor = floor_factor * lambda_max
    double min_jump = 100.0;    // below this ratio the gap is ambiguous
};

struct GapAmbiguityError : std::runtime_error {
    int candidate_low, candidate_high;
    GapAmbiguityError(const std::string& msg, int lo, int hi)
        : std::runtime_error(msg), candidate_low(lo), candidate_high(hi) {}
};

// Number of eigenvalues below the detected spectral gap (largest multiplicative
// jump below the median, with absolute floor).
int kernel_dimension(const SpectralDecomposition& dec, const GapPolicy& policy = {});

// Shared spectra cache keyed by (descriptor, k, r); experiments reuse solves.
class SpectraCache {
  public:
    std::shared_ptr<const SpectralDecomposition> get(const CellComplex& cx, const ScalarField& f,
                                                     double k, int r);
    static SpectraCache& global();

  private:
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const SpectralDecomposition>> entries_;
};

} // namespace wittenlab

#endif
