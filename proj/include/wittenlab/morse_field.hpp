#ifndef WITTENLAB_MORSE_FIELD_HPP
#define WITTENLAB_MORSE_FIELD_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wittenlab/cell_complex.hpp"

namespace wittenlab {

struct CriticalPoint {
    std::array<double, 2> position{0.0, 0.0};
    int index = 0;     // Morse index
    double rho0 = 0.0; // radius of the exact quadratic window
    double value = 0.0;
    std::array<int, 2> axis_signs{1, 1}; // Hessian sign per axis (+1 ascending)
};

// Parameters of one circle factor's Morse profile.
struct MorseParams1D {
    double min_pos = 0.0;
    double max_pos = 0.0;
    double rho0 = 0.35;
    double amplitude = 0.0; // prescribed f(max)-f(min); <= 0 means "auto" (base rise)
};

// Analytic blended Morse profile on a circle of circumference `length`:
// exactly quadratic (+x^2/2 at the min, -x^2/2 at the max) within radius rho0,
// connectors carry a monotone derivative that smoothstep-blends from the window
// slope into a plateau at rho0, plus a C^2 closure bump sized so both connectors
// realize the same rise (exact periodic closure). All pieces have closed-form
// antiderivatives, so values are exact to roundoff.
class MorseProfile1D {
  public:
    MorseProfile1D(double length, MorseParams1D params);

    double value(double s) const;      // f(s) - f(min), periodic in s
    double derivative(double s) const; // f'(s)
    double amplitude() const { return amplitude_; }
    double base_rise() const { return base_rise_; }
    // |f'| >= this constant on both connectors
    double connector_derivative_min() const { return params_.rho0; }
    double derivative_sup() const;
    const MorseParams1D& params() const { return params_; }
    double length() const { return length_; }

  private:
    double connector_deriv(double tau, double ell, double beta) const;
    double connector_value(double tau, double ell, double beta) const; // integral from tau=0

    double length_;
    MorseParams1D params_;
    double l1_, l2_; // connector lengths (ascending, descending)
    double blend_frac_ = 0.2;
    double beta1_ = 0.0, beta2_ = 0.0; // closure bump heights
    double amplitude_ = 0.0, base_rise_ = 0.0;
};

// Morse samples at every cell barycenter plus critical-point metadata.
struct ScalarField {
    std::vector<std::vector<double>> values; // per degree, per cell
    std::vector<CriticalPoint> critical_points;
    double connector_derivative_min = 0.0;
    double derivative_sup = 0.0;
    std::string descriptor;

    double at(int degree, int cell) const { return values.at(degree).at(cell); }
};

ScalarField blended_morse_function_1d(const CellComplex& cx, double min_pos, double max_pos,
                                      double rho0, double amplitude = 0.0);
ScalarField blended_morse_function_1d(const CellComplex& cx, const MorseParams1D& params);

ScalarField product_morse_function_2d(const CellComplex& cx, const MorseParams1D& px,
                                      const MorseParams1D& py);

// Largest deviation of the sampled values from the Morse normal form
// f(p) + sum eps_i (x_i - p_i)^2 / 2 over cells whose barycenter lies in a window.
double window_normal_form_error(const CellComplex& cx, const ScalarField& f);

std::vector<int> morse_counts(const ScalarField& f, int dim);

// CSV exchange: rows (degree, cell, x, y, value); critical points ride along as
// '# critical_point,...' comment lines so a round trip preserves the metadata.
void export_scalar_field_csv(const CellComplex& cx, const ScalarField& f, const std::string& path);
ScalarField import_scalar_field_csv(const CellComplex& cx, const std::string& path);

// Signed distance on a circle of circumference `period` (result in [-period/2, period/2)).
double periodic_delta(double x, double ref, double period);

} // namespace wittenlab

#endif
