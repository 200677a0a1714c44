#ifndef WITTENLAB_OSCILLATOR_HPP
#define WITTENLAB_OSCILLATOR_HPP

#include <span>
#include <stdexcept>
#include <vector>

// Closed-form harmonic-oscillator model attached to a critical point:
// Hermite functions, Mehler's formula, the perturbed oscillators
// L^{+-} = -d^2/dx^2 + x^2 +- 1, and the product-structure model kernels,
// traces and trace integrals built from them.

namespace wittenlab {

inline constexpr int kHermiteMaxOrder = 200;

// Dimension n and Morse index l of a model critical point.
struct ModelCriticalPoint {
    int n;
    int l;

    ModelCriticalPoint(int n_, int l_) : n(n_), l(l_) {
        if (n < 1 || n > 4)
            throw std::invalid_argument("ModelCriticalPoint: dimension must be in [1,4]");
        if (l < 0 || l > n)
            throw std::invalid_argument("ModelCriticalPoint: index must satisfy 0 <= l <= n");
    }
};

// Strictly increasing multi-index with entries in [1, n].
class MultiIndex {
  public:
    MultiIndex() = default;
    MultiIndex(std::initializer_list<int> entries, int n) : MultiIndex(std::vector<int>(entries), n) {}
    MultiIndex(std::vector<int> entries, int n) : entries_(std::move(entries)) {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (entries_[i] < 1 || entries_[i] > n)
                throw std::invalid_argument("MultiIndex: entry out of [1,n]");
            if (i > 0 && entries_[i] <= entries_[i - 1])
                throw std::invalid_argument("MultiIndex: entries must be strictly increasing");
        }
    }

    int degree() const { return static_cast<int>(entries_.size()); }
    bool contains(int axis) const;
    const std::vector<int>& entries() const { return entries_; }

  private:
    std::vector<int> entries_;
};

// All strictly increasing multi-indices of degree r in [1, n], lexicographic.
std::vector<MultiIndex> increasing_multi_indices(int n, int r);

// Per-axis signs s_i = eps_i * eps_i^I; s_i = -1 selects L^-, s_i = +1 selects L^+.
struct SignProfile {
    std::vector<int> s;
};

// L2-orthonormal Hermite function Phi_N(x) = H_N(x) e^{-x^2/2} / (pi^{1/4} sqrt(2^N N!)),
// evaluated by the normalized three-term recurrence (no overflow up to N = 200).
double hermite_function(int order, double x);

// Phi_0(x) .. Phi_{n_max}(x) in one sweep of the recurrence.
std::vector<double> hermite_function_table(int n_max, double x);

// Closed form of sum_N rho^N Phi_N(x) Phi_N(y) (Mehler), rho in [0,1).
double mehler_closed(double rho, double x, double y);

// Partial sum sum_{N=0}^{n_max} rho^N Phi_N(x) Phi_N(y).
double mehler_series(double rho, double x, double y, int n_max);

// Heat kernel e^{-t L^{sign}}(x,y); sign = -1 gives spectrum {2N}, sign = +1 gives {2N+2}.
double oscillator_heat_kernel(int sign, double t, double x, double y);

// Exact trace integral over the line: 1/(1-e^{-2t}) for sign -1, 1/(e^{2t}-1) for sign +1.
double oscillator_trace_integral(int sign, double t);

// Quadrature variant of the trace integral (agrees with the exact value to ~1e-8;
// kept as the independent cross-check route).
double oscillator_trace_integral_quadrature(int sign, double t);

SignProfile model_sign_profile(const ModelCriticalPoint& p, const MultiIndex& index);

// (I,I) component of the model heat kernel: product over axes of 1D kernels
// selected by the sign profile.
double model_kernel_component(const ModelCriticalPoint& p, const MultiIndex& index, double t,
                              std::span<const double> x, std::span<const double> y);

// Eigenvalue of the I-component oscillator system at occupation numbers N_1..N_n.
double model_eigenvalue(const ModelCriticalPoint& p, const MultiIndex& index,
                        std::span<const int> occupations);

// tr e^{-t Delta^{(r)}}(x,x) = sum over |I| = r of the component kernels on the diagonal.
double model_trace(const ModelCriticalPoint& p, int r, double t, std::span<const double> x);

// Integral over R^n of the model trace; tends to 1_{r = l} as t -> infinity.
double model_trace_integral(const ModelCriticalPoint& p, int r, double t);

} // namespace wittenlab

#endif
