#include "wittenlab/quadrature.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace wittenlab {

namespace {
double trampoline(double x, void* params) {
    return (*static_cast<const std::function<double(double)>*>(params))(x);
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 double rel_tol) {
    static const int kOnce = (gsl_set_error_handler_off(), 0);
    (void)kOnce;
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
        gsl_integration_workspace_alloc(4096));
    gsl_function gf;
    gf.function = &trampoline;
    gf.params = const_cast<std::function<double(double)>*>(&f);
    double result = 0.0, abserr = 0.0;
    const int status = gsl_integration_qag(&gf, a, b, abs_tol, rel_tol, 4096, GSL_INTEG_GAUSS15,
                                           ws.get(), &result, &abserr);
    if (status != GSL_SUCCESS && status != GSL_EROUND)
        throw std::runtime_error(std::string("quadrature failed: ") + gsl_strerror(status));
    return result;
}

double integrate_gaussian_tails(const std::function<double(double)>& f, double decay,
                                double abs_tol, double rel_tol) {
    if (!(decay > 0.0))
        throw std::domain_error("integrate_gaussian_tails: decay coefficient must be positive");
    // e^{-decay L^2} < 1e-14  =>  L > sqrt(ln(1e14)/decay); pad by one unit
    const double L = std::sqrt(std::log(1e14) / decay) + 1.0;
    return integrate(f, -L, L, abs_tol, rel_tol);
}

} // namespace wittenlab
