#ifndef WITTENLAB_QUADRATURE_HPP
#define WITTENLAB_QUADRATURE_HPP

#include <functional>

namespace wittenlab {

// Adaptive Gauss-Kronrod (GSL QAG, 15-point rule) on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-10);

// Integral over the real line of a function with |f(x)| <= C e^{-decay x^2} tails:
// truncates to [-L, L] with L chosen so the Gaussian tail is below 1e-14.
double integrate_gaussian_tails(const std::function<double(double)>& f, double decay,
                                double abs_tol = 1e-12, double rel_tol = 1e-10);

} // namespace wittenlab

#endif
