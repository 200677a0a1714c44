#ifndef WITTENLAB_CONFIG_HPP
#define WITTENLAB_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wittenlab/cell_complex.hpp"
#include "wittenlab/morse_field.hpp"

namespace wittenlab {

// Flat key-value run configuration (INI-style sections, documented in README).
// Unknown sections or keys are rejected with the offending line number.
struct RunConfig {
    // [run]
    std::string manifold = "circle"; // circle | torus
    std::string output_dir = "out";
    std::uint64_t seed = 20240801;
    // [grid]
    int n = 512;               // circle
    int nx = 32, ny = 32;      // torus
    double length = 0.0;       // circle; 0 -> 2*pi
    double lx = 0.0, ly = 0.0; // torus; 0 -> 2*pi
    // [morse] (circle and torus x-axis), [morse_y] (torus y-axis)
    MorseParams1D morse_x;
    MorseParams1D morse_y;
    bool morse_y_given = false;
    // [sweep]
    std::vector<double> k_list{0.0, 4.0, 16.0, 64.0};
    std::vector<double> t_list{0.01, 0.1, 1.0};
    std::vector<int> degrees; // empty -> all degrees of the manifold
    // [probe]
    double epsilon = 0.25;
    double dee = 2.0;
    int trials = 50;
    double xmag = 8.0;
    double probe_t = 1.0;
    std::vector<double> point_grid; // empty -> 9 points on [-2, 2]
    int n_radii = 5;
    // [tolerances]
    double mckean_rel_tol = 1e-8;
    double trace_limit_tol = 0.05;
    double final_rel_tol = 0.05;
    double slope_max = -4.0;
    double shrink_factor = 10.0;
    double bochner_slack = 0.1;

    CellComplex build_complex() const;
    ScalarField build_field(const CellComplex& cx) const;
    std::vector<int> degree_list(const CellComplex& cx) const;
    std::string manifest_prefix() const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<memory>");

} // namespace wittenlab

#endif
