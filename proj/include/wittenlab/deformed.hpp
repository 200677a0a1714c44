#ifndef WITTENLAB_DEFORMED_HPP
#define WITTENLAB_DEFORMED_HPP

#include <vector>

#include "wittenlab/cell_complex.hpp"
#include "wittenlab/morse_field.hpp"

namespace wittenlab {

inline constexpr double kOverflowExponentGuard = 700.0;

// Sparse deformed coboundary d_k = e^{-kf} d e^{kf} in degree r:
// entry(sigma_{r+1}, sigma_r) = sign * e^{k (f(sigma_r) - f(sigma_{r+1}))}.
// Entries are built from local exponent differences only, never from global e^{kf}.
struct DeformedCoboundary {
    double k = 0.0;
    int r = 0;
    int rows = 0, cols = 0;
    struct Entry {
        int col;
        double value;
    };
    std::vector<std::vector<Entry>> row_entries;
    double max_abs_entry = 0.0;

    std::vector<double> apply(const std::vector<double>& u) const;           // r -> r+1
    std::vector<double> apply_transpose(const std::vector<double>& w) const; // r+1 -> r
};

struct OverflowGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
    double max_admissible_k = 0.0;
    OverflowGuardError(const std::string& msg, double kmax)
        : std::runtime_error(msg), max_admissible_k(kmax) {}
};

// Largest k the grid admits before some entry exponent exceeds the guard.
double max_admissible_k(const CellComplex& cx, const ScalarField& f);

DeformedCoboundary deformed_coboundary(const CellComplex& cx, const ScalarField& f, double k,
                                       int r);

// max |entry| of d_{k,r+1} o d_{k,r} (floating point), and the natural scale
// max|d_{k,r+1}| * max|d_{k,r}| of its constituent products.
struct CompositionNorm {
    double max_abs;
    double scale;
};
CompositionNorm composition_max_abs(const DeformedCoboundary& outer,
                                    const DeformedCoboundary& inner);

} // namespace wittenlab

#endif
