#include "wittenlab/oscillator.hpp"

#include <algorithm>
#include <cmath>

#include "wittenlab/quadrature.hpp"

namespace wittenlab {

namespace {
const double kPiQuarterRoot = std::pow(M_PI, -0.25);

void check_order(int order) {
    if (order < 0 || order > kHermiteMaxOrder)
        throw std::out_of_range("hermite_function: order must be in [0, 200]");
}

void check_rho(double rho) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::domain_error("mehler: rho must lie in [0, 1)");
}

void check_sign(int sign) {
    if (sign != 1 && sign != -1)
        throw std::domain_error("oscillator: sign must be +1 or -1");
}

void check_time(double t) {
    if (!(t > 0.0))
        throw std::domain_error("oscillator: t must be positive");
}
} // namespace

bool MultiIndex::contains(int axis) const {
    return std::binary_search(entries_.begin(), entries_.end(), axis);
}

std::vector<MultiIndex> increasing_multi_indices(int n, int r) {
    if (r < 0 || r > n)
        throw std::domain_error("increasing_multi_indices: need 0 <= r <= n");
    std::vector<MultiIndex> out;
    std::vector<int> idx(r);
    // lexicographic enumeration of r-subsets of {1..n}
    for (int i = 0; i < r; ++i)
        idx[i] = i + 1;
    while (true) {
        out.emplace_back(idx, n);
        int j = r - 1;
        while (j >= 0 && idx[j] == n - (r - 1 - j))
            --j;
        if (j < 0)
            break;
        ++idx[j];
        for (int m = j + 1; m < r; ++m)
            idx[m] = idx[m - 1] + 1;
    }
    if (r == 0) {
        out.clear();
        out.emplace_back(std::vector<int>{}, n);
    }
    return out;
}

std::vector<double> hermite_function_table(int n_max, double x) {
    check_order(n_max);
    std::vector<double> phi(n_max + 1);
    phi[0] = kPiQuarterRoot * std::exp(-0.5 * x * x);
    if (n_max >= 1)
        phi[1] = std::sqrt(2.0) * x * phi[0];
    for (int n = 1; n < n_max; ++n)
        phi[n + 1] = x * std::sqrt(2.0 / (n + 1)) * phi[n] - std::sqrt(n / (n + 1.0)) * phi[n - 1];
    return phi;
}

double hermite_function(int order, double x) {
    check_order(order);
    return hermite_function_table(order, x)[order];
}

double mehler_closed(double rho, double x, double y) {
    check_rho(rho);
    const double om = 1.0 - rho * rho;
    return std::pow(M_PI, -0.5) / std::sqrt(om) *
           std::exp((4.0 * x * y * rho - (1.0 + rho * rho) * (x * x + y * y)) / (2.0 * om));
}

double mehler_series(double rho, double x, double y, int n_max) {
    check_rho(rho);
    if (n_max < 0)
        throw std::domain_error("mehler_series: n_max must be non-negative");
    const std::vector<double> px = hermite_function_table(n_max, x);
    const std::vector<double> py = hermite_function_table(n_max, y);
    double sum = 0.0;
    for (int n = n_max; n >= 0; --n) // small terms first
        sum += std::pow(rho, n) * px[n] * py[n];
    return sum;
}

double oscillator_heat_kernel(int sign, double t, double x, double y) {
    check_sign(sign);
    check_time(t);
    const double rho = std::exp(-2.0 * t);
    const double prefactor = (sign < 0) ? 1.0 : rho; // e^{(-1 -+ 1) t}
    return prefactor * mehler_closed(rho, x, y);
}

double oscillator_trace_integral(int sign, double t) {
    check_sign(sign);
    check_time(t);
    // geometric series over the spectrum {2N} resp. {2N+2}
    const double q = std::exp(-2.0 * t);
    return (sign < 0) ? 1.0 / (1.0 - q) : q / (1.0 - q);
}

double oscillator_trace_integral_quadrature(int sign, double t) {
    check_sign(sign);
    check_time(t);
    const double rho = std::exp(-2.0 * t);
    // diagonal decays like exp(-c x^2) with c = (1 - rho) / (1 + rho)
    const double decay = (1.0 - rho) / (1.0 + rho);
    return integrate_gaussian_tails(
        [&](double x) { return oscillator_heat_kernel(sign, t, x, x); }, decay, 1e-12, 1e-11);
}

SignProfile model_sign_profile(const ModelCriticalPoint& p, const MultiIndex& index) {
    if (index.degree() > p.n)
        throw std::invalid_argument("model_sign_profile: |I| exceeds dimension");
    for (int e : index.entries())
        if (e > p.n)
            throw std::invalid_argument("model_sign_profile: index entry exceeds dimension");
    SignProfile sp;
    sp.s.resize(p.n);
    for (int i = 1; i <= p.n; ++i) {
        const int eps = (i <= p.l) ? -1 : 1;
        const int eps_index = index.contains(i) ? 1 : -1;
        sp.s[i - 1] = eps * eps_index;
    }
    return sp;
}

double model_kernel_component(const ModelCriticalPoint& p, const MultiIndex& index, double t,
                              std::span<const double> x, std::span<const double> y) {
    if (static_cast<int>(x.size()) != p.n || static_cast<int>(y.size()) != p.n)
        throw std::invalid_argument("model_kernel_component: point dimension mismatch");
    check_time(t);
    const SignProfile sp = model_sign_profile(p, index);
    double prod = 1.0;
    for (int i = 0; i < p.n; ++i)
        prod *= oscillator_heat_kernel(sp.s[i], t, x[i], y[i]);
    return prod;
}

double model_eigenvalue(const ModelCriticalPoint& p, const MultiIndex& index,
                        std::span<const int> occupations) {
    if (static_cast<int>(occupations.size()) != p.n)
        throw std::invalid_argument("model_eigenvalue: occupation tuple length mismatch");
    const SignProfile sp = model_sign_profile(p, index);
    double lambda = 0.0;
    for (int i = 0; i < p.n; ++i)
        lambda += (sp.s[i] < 0) ? 2.0 * occupations[i] : 2.0 * occupations[i] + 2.0;
    return lambda;
}

double model_trace(const ModelCriticalPoint& p, int r, double t, std::span<const double> x) {
    if (r < 0 || r > p.n)
        throw std::domain_error("model_trace: degree out of range");
    check_time(t);
    double sum = 0.0;
    for (const MultiIndex& index : increasing_multi_indices(p.n, r))
        sum += model_kernel_component(p, index, t, x, x);
    return sum;
}

double model_trace_integral(const ModelCriticalPoint& p, int r, double t) {
    if (r < 0 || r > p.n)
        throw std::domain_error("model_trace_integral: degree out of range");
    check_time(t);
    double sum = 0.0;
    for (const MultiIndex& index : increasing_multi_indices(p.n, r)) {
        const SignProfile sp = model_sign_profile(p, index);
        double prod = 1.0;
        for (int i = 0; i < p.n; ++i)
            prod *= oscillator_trace_integral(sp.s[i], t);
        sum += prod;
    }
    return sum;
}

} // namespace wittenlab
