#ifndef WITTENLAB_CELL_COMPLEX_HPP
#define WITTENLAB_CELL_COMPLEX_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace wittenlab {

// One cell of a periodic cubical complex. `measure` is the primal measure in the
// flat metric (1 for vertices, length for edges, area for faces); `dual_measure`
// is the measure of the dual cell on the staggered grid. The Hodge weight of the
// cell is dual_measure / measure and the quadrature volume is their product.
struct Cell {
    std::array<double, 2> barycenter{0.0, 0.0};
    double measure = 1.0;
    double dual_measure = 1.0;
};

struct IncidenceEntry {
    int cell; // index of the r-cell on the boundary of the (r+1)-cell
    int sign; // +1 or -1
};

// Periodic cubical complex of dimension 1 (circle) or 2 (torus), flat metric.
//
// Torus cell ordering: vertices v(i,j) = i*ny + j; x-edges (from v(i,j) to
// v(i+1,j)) share the vertex numbering; y-edges follow with offset nx*ny;
// faces [i,i+1]x[j,j+1] use f(i,j) = i*ny + j.
struct CellComplex {
    int dim = 1;
    std::array<double, 2> periods{0.0, 0.0};
    std::array<int, 2> grid{0, 0}; // cells per axis (ny = 0 for the circle)
    std::vector<std::vector<Cell>> cells;
    // incidence[r][row] lists the signed boundary of (r+1)-cell `row` in r-cells
    std::vector<std::vector<std::vector<IncidenceEntry>>> incidence;

    int n_cells(int r) const { return static_cast<int>(cells.at(r).size()); }
    std::string descriptor() const;
};

CellComplex build_circle_complex(int n_cells, double length);
CellComplex build_torus_complex(int nx, int ny, double lx, double ly);

// max |entry| of the composition incidence[r+1] o incidence[r] in integer arithmetic
int incidence_composition_max(const CellComplex& cx, int r);

// Configuration / construction errors carry this type so the CLI can map them to exit 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace wittenlab

#endif
