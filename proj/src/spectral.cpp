#include "wittenlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <lapacke.h>
#ifdef _OPENMP
#include <omp.h>
#endif

namespace wittenlab {

HodgeInner hodge_inner(const CellComplex& cx) {
    HodgeInner w;
    w.weights.resize(cx.cells.size());
    for (std::size_t r = 0; r < cx.cells.size(); ++r) {
        w.weights[r].resize(cx.cells[r].size());
        for (std::size_t c = 0; c < cx.cells[r].size(); ++c)
            w.weights[r][c] = cx.cells[r][c].dual_measure / cx.cells[r][c].measure;
    }
    return w;
}

DeformedCoboundary symmetrized_coboundary(const CellComplex& cx, const ScalarField& f, double k,
                                          int r) {
    DeformedCoboundary d = deformed_coboundary(cx, f, k, r);
    const HodgeInner w = hodge_inner(cx);
    d.max_abs_entry = 0.0;
    for (int row = 0; row < d.rows; ++row) {
        const double s_hi = std::sqrt(w.weights[r + 1][row]);
        for (auto& e : d.row_entries[row]) {
            e.value *= s_hi / std::sqrt(w.weights[r][e.col]);
            d.max_abs_entry = std::max(d.max_abs_entry, std::abs(e.value));
        }
    }
    return d;
}

namespace {
// C += B^T B (B sparse, rows x cols); fills a dense symmetric block
void accumulate_gram(DenseSym& out, const DeformedCoboundary& b) {
    for (int i = 0; i < b.rows; ++i) {
        const auto& row = b.row_entries[i];
        for (std::size_t p = 0; p < row.size(); ++p)
            for (std::size_t q = 0; q < row.size(); ++q)
                out.at(row[p].col, row[q].col) += row[p].value * row[q].value;
    }
}

// C += B B^T
void accumulate_gram_transpose(DenseSym& out, const DeformedCoboundary& b, ExecMode mode) {
    auto body = [&](int i) {
        const auto& ri = b.row_entries[i];
        for (int j = 0; j < b.rows; ++j) {
            const auto& rj = b.row_entries[j];
            double acc = 0.0;
            // rows are short (<= 4); merge on column index
            for (const auto& ei : ri)
                for (const auto& ej : rj)
                    if (ei.col == ej.col)
                        acc += ei.value * ej.value;
            if (acc != 0.0)
                out.at(i, j) += acc;
        }
    };
    if (mode == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < b.rows; ++i)
            body(i);
    } else {
        for (int i = 0; i < b.rows; ++i)
            body(i);
    }
}
} // namespace

DenseSym assemble_witten_laplacian(const CellComplex& cx, const ScalarField& f, double k, int r,
                                   ExecMode mode) {
    if (r < 0 || r > cx.dim)
        throw std::out_of_range("assemble_witten_laplacian: degree out of range");
    DenseSym op;
    op.n = cx.n_cells(r);
    op.a.assign(static_cast<std::size_t>(op.n) * op.n, 0.0);
    if (r < cx.dim) {
        const DeformedCoboundary b_up = symmetrized_coboundary(cx, f, k, r);
        accumulate_gram(op, b_up);
    }
    if (r > 0) {
        const DeformedCoboundary b_down = symmetrized_coboundary(cx, f, k, r - 1);
        accumulate_gram_transpose(op, b_down, mode);
    }
    return op;
}

SpectralDecomposition eigendecompose(DenseSym op, const CellComplex& cx, int degree, double k,
                                     std::string metadata) {
    SpectralDecomposition dec;
    dec.degree = degree;
    dec.k = k;
    dec.n = op.n;
    dec.metadata = std::move(metadata);
    dec.eigenvalues.resize(op.n);
    const int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'V', 'U', op.n, op.a.data(), op.n,
                                    dec.eigenvalues.data());
    if (info != 0) {
        // dump the operator for post-mortem before bailing out
        const std::string dump = "wittenlab_eigensolver_failure.mat";
        std::ofstream out(dump);
        if (out) {
            out << op.n << "\n";
            for (int i = 0; i < op.n; ++i) {
                for (int j = 0; j < op.n; ++j)
                    out << op.at(i, j) << (j + 1 == op.n ? '\n' : ' ');
            }
        }
        std::ostringstream os;
        os << "eigendecompose: LAPACKE_dsyevd failed with info = " << info
           << " (degree " << degree << ", k = " << k << "); operator dumped to " << dump;
        throw std::runtime_error(os.str());
    }
    dec.vectors = std::move(op.a); // row-major: vec(cell, mode)
    // deterministic sign: first component of magnitude > 1e-8 * max made positive
    for (int m = 0; m < dec.n; ++m) {
        double peak = 0.0;
        for (int c = 0; c < dec.n; ++c)
            peak = std::max(peak, std::abs(dec.vec(c, m)));
        const double thresh = 1e-8 * peak;
        for (int c = 0; c < dec.n; ++c) {
            const double v = dec.vec(c, m);
            if (std::abs(v) > thresh) {
                if (v < 0.0)
                    for (int cc = 0; cc < dec.n; ++cc)
                        dec.vectors[static_cast<std::size_t>(cc) * dec.n + m] = -dec.vec(cc, m);
                break;
            }
        }
    }
    const HodgeInner w = hodge_inner(cx);
    dec.inv_sqrt_weight.resize(dec.n);
    dec.inv_measure.resize(dec.n);
    dec.volume.resize(dec.n);
    for (int c = 0; c < dec.n; ++c) {
        dec.inv_sqrt_weight[c] = 1.0 / std::sqrt(w.weights[degree][c]);
        dec.inv_measure[c] = 1.0 / cx.cells[degree][c].measure;
        dec.volume[c] = cx.cells[degree][c].measure * cx.cells[degree][c].dual_measure;
    }
    return dec;
}

SpectralDecomposition compute_spectrum(const CellComplex& cx, const ScalarField& f, double k,
                                       int r) {
    std::ostringstream meta;
    meta << cx.descriptor() << " | " << f.descriptor << " | k=" << k << " r=" << r;
    return eigendecompose(assemble_witten_laplacian(cx, f, k, r), cx, r, k, meta.str());
}

SpectralValidation validate_decomposition(const DenseSym& op, const SpectralDecomposition& dec,
                                          int n_sample) {
    const int n = dec.n;
    SpectralValidation v{0.0, 0.0, dec.eigenvalues.empty() ? 0.0 : dec.eigenvalues.front()};
    const int stride = std::max(1, n / std::max(1, n_sample));
    for (int m = 0; m < n; m += stride) {
        double res2 = 0.0;
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                acc += op.at(i, j) * dec.vec(j, m);
            const double r = acc - dec.eigenvalues[m] * dec.vec(i, m);
            res2 += r * r;
        }
        v.max_residual = std::max(v.max_residual, std::sqrt(res2));
    }
    for (int a = 0; a < n; a += stride)
        for (int b = a; b < n; b += stride) {
            double g = 0.0;
            for (int c = 0; c < n; ++c)
                g += dec.vec(c, a) * dec.vec(c, b);
            v.max_gram_deviation = std::max(v.max_gram_deviation, std::abs(g - (a == b ? 1.0 : 0.0)));
        }
    return v;
}

double heat_kernel_entry(const SpectralDecomposition& dec, double t_eff, int a, int b) {
    if (!(t_eff > 0.0))
        throw std::domain_error("heat_kernel_entry: t_eff must be positive");
    const double* ra = &dec.vectors[static_cast<std::size_t>(a) * dec.n];
    const double* rb = &dec.vectors[static_cast<std::size_t>(b) * dec.n];
    double acc = 0.0;
    for (int m = 0; m < dec.n; ++m)
        acc += std::exp(-t_eff * dec.eigenvalues[m]) * ra[m] * rb[m];
    return acc * dec.inv_sqrt_weight[a] * dec.inv_sqrt_weight[b] * dec.inv_measure[a] *
           dec.inv_measure[b];
}

std::vector<double> heat_kernel_diagonal(const SpectralDecomposition& dec, double t_eff,
                                         ExecMode mode) {
    if (!(t_eff > 0.0))
        throw std::domain_error("heat_kernel_diagonal: t_eff must be positive");
    const int n = dec.n;
    std::vector<double> weights(n);
    for (int m = 0; m < n; ++m)
        weights[m] = std::exp(-t_eff * dec.eigenvalues[m]);
    std::vector<double> diag(n);
    auto body = [&](int c) {
        const double* row = &dec.vectors[static_cast<std::size_t>(c) * n];
        double acc = 0.0;
        for (int m = 0; m < n; ++m)
            acc += weights[m] * row[m] * row[m];
        const double s = dec.inv_sqrt_weight[c] * dec.inv_measure[c];
        diag[c] = acc * s * s;
    };
    if (mode == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
        for (int c = 0; c < n; ++c)
            body(c);
    } else {
        for (int c = 0; c < n; ++c)
            body(c);
    }
    return diag;
}

std::vector<double> heat_kernel_entries(const SpectralDecomposition& dec, double t_eff,
                                        const std::vector<std::pair<int, int>>& pairs,
                                        ExecMode mode) {
    const int n = dec.n;
    std::vector<double> weights(n);
    for (int m = 0; m < n; ++m)
        weights[m] = std::exp(-t_eff * dec.eigenvalues[m]);
    std::vector<double> out(pairs.size());
    auto body = [&](std::size_t i) {
        const auto [a, b] = pairs[i];
        const double* ra = &dec.vectors[static_cast<std::size_t>(a) * n];
        const double* rb = &dec.vectors[static_cast<std::size_t>(b) * n];
        double acc = 0.0;
        for (int m = 0; m < n; ++m)
            acc += weights[m] * ra[m] * rb[m];
        out[i] = acc * dec.inv_sqrt_weight[a] * dec.inv_sqrt_weight[b] * dec.inv_measure[a] *
                 dec.inv_measure[b];
    };
    if (mode == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < pairs.size(); ++i)
            body(i);
    } else {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            body(i);
    }
    return out;
}

double heat_trace(const SpectralDecomposition& dec, double t_eff) {
    if (!(t_eff > 0.0))
        throw std::domain_error("heat_trace: t_eff must be positive");
    double acc = 0.0;
    for (int m = dec.n - 1; m >= 0; --m) // ascending contribution order
        acc += std::exp(-t_eff * dec.eigenvalues[m]);
    return acc;
}

int kernel_dimension(const SpectralDecomposition& dec, const GapPolicy& policy) {
    if (dec.eigenvalues.empty())
        throw std::domain_error("kernel_dimension: empty spectrum");
    const int n = dec.n;
    const double floor = policy.floor_factor * std::abs(dec.max_eigenvalue());
    std::vector<double> lam(n);
    for (int i = 0; i < n; ++i)
        lam[i] = std::max(dec.eigenvalues[i], floor);
    const double median = lam[n / 2];
    int best = -1, second = -1;
    double best_jump = 0.0, second_jump = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        if (lam[i + 1] > median)
            break;
        const double jump = lam[i + 1] / lam[i];
        if (jump > best_jump) {
            second_jump = best_jump;
            second = best;
            best_jump = jump;
            best = i;
        } else if (jump > second_jump) {
            second_jump = jump;
            second = i;
        }
    }
    if (best < 0 || best_jump < policy.min_jump) {
        std::ostringstream os;
        os << "kernel_dimension: no detectable spectral gap (best jump "
           << best_jump << " at count " << best + 1 << ", runner-up " << second_jump
           << " at count " << second + 1 << ")";
        throw GapAmbiguityError(os.str(), best + 1, second + 1);
    }
    return best + 1;
}

std::shared_ptr<const SpectralDecomposition> SpectraCache::get(const CellComplex& cx,
                                                               const ScalarField& f, double k,
                                                               int r) {
    std::ostringstream key;
    key << cx.descriptor() << "|" << f.descriptor << "|k=" << k << "|r=" << r;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = entries_.find(key.str());
        if (it != entries_.end())
            return it->second;
    }
    auto dec = std::make_shared<SpectralDecomposition>(compute_spectrum(cx, f, k, r));
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = entries_.emplace(key.str(), std::move(dec));
    (void)inserted;
    return it->second;
}

SpectraCache& SpectraCache::global() {
    static SpectraCache cache;
    return cache;
}

} // namespace wittenlab
