#include "wittenlab/cell_complex.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "wittenlab/report.hpp"

namespace wittenlab {

std::string CellComplex::descriptor() const {
    std::ostringstream os;
    if (dim == 1)
        os << "circle n=" << grid[0] << " L=" << format_double(periods[0]);
    else
        os << "torus nx=" << grid[0] << " ny=" << grid[1] << " Lx=" << format_double(periods[0])
           << " Ly=" << format_double(periods[1]);
    return os.str();
}

CellComplex build_circle_complex(int n_cells, double length) {
    if (n_cells < 8)
        throw ConfigError("build_circle_complex: need at least 8 cells");
    if (!(length > 0.0))
        throw ConfigError("build_circle_complex: length must be positive");
    const double h = length / n_cells;
    CellComplex cx;
    cx.dim = 1;
    cx.periods = {length, 0.0};
    cx.grid = {n_cells, 0};
    cx.cells.resize(2);
    cx.cells[0].resize(n_cells);
    cx.cells[1].resize(n_cells);
    for (int j = 0; j < n_cells; ++j) {
        cx.cells[0][j] = Cell{{j * h, 0.0}, 1.0, h};   // vertex, dual = segment
        cx.cells[1][j] = Cell{{j * h + h / 2, 0.0}, h, 1.0}; // edge, dual = point
    }
    cx.incidence.resize(1);
    cx.incidence[0].resize(n_cells);
    for (int j = 0; j < n_cells; ++j)
        cx.incidence[0][j] = {{(j + 1) % n_cells, +1}, {j, -1}};
    return cx;
}

CellComplex build_torus_complex(int nx, int ny, double lx, double ly) {
    if (nx < 8 || ny < 8)
        throw ConfigError("build_torus_complex: need at least 8 cells per axis");
    if (!(lx > 0.0) || !(ly > 0.0))
        throw ConfigError("build_torus_complex: periods must be positive");
    const double hx = lx / nx, hy = ly / ny;
    const int nv = nx * ny;
    CellComplex cx;
    cx.dim = 2;
    cx.periods = {lx, ly};
    cx.grid = {nx, ny};
    cx.cells.resize(3);
    cx.cells[0].resize(nv);
    cx.cells[1].resize(2 * nv);
    cx.cells[2].resize(nv);
    auto vid = [&](int i, int j) { return ((i % nx + nx) % nx) * ny + ((j % ny + ny) % ny); };
    auto xeid = [&](int i, int j) { return vid(i, j); };
    auto yeid = [&](int i, int j) { return nv + vid(i, j); };
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const double x = i * hx, y = j * hy;
            cx.cells[0][vid(i, j)] = Cell{{x, y}, 1.0, hx * hy};
            cx.cells[1][xeid(i, j)] = Cell{{x + hx / 2, y}, hx, hy};
            cx.cells[1][yeid(i, j)] = Cell{{x, y + hy / 2}, hy, hx};
            cx.cells[2][vid(i, j)] = Cell{{x + hx / 2, y + hy / 2}, hx * hy, 1.0};
        }
    cx.incidence.resize(2);
    cx.incidence[0].resize(2 * nv);
    cx.incidence[1].resize(nv);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            cx.incidence[0][xeid(i, j)] = {{vid(i + 1, j), +1}, {vid(i, j), -1}};
            cx.incidence[0][yeid(i, j)] = {{vid(i, j + 1), +1}, {vid(i, j), -1}};
            // face (i,j): xe(i,j) + ye(i+1,j) - xe(i,j+1) - ye(i,j)
            cx.incidence[1][vid(i, j)] = {{xeid(i, j), +1},
                                          {yeid(i + 1, j), +1},
                                          {xeid(i, j + 1), -1},
                                          {yeid(i, j), -1}};
        }
    return cx;
}

int incidence_composition_max(const CellComplex& cx, int r) {
    if (r < 0 || r + 1 >= static_cast<int>(cx.incidence.size()))
        throw std::out_of_range("incidence_composition_max: degree out of range");
    int worst = 0;
    const auto& outer = cx.incidence[r + 1];
    const auto& inner = cx.incidence[r];
    std::vector<int> acc(cx.n_cells(r), 0);
    std::vector<int> touched;
    for (const auto& row : outer) {
        touched.clear();
        for (const auto& [mid, s_outer] : row)
            for (const auto& [low, s_inner] : inner[mid]) {
                touched.push_back(low);
                acc[low] += s_outer * s_inner;
            }
        for (int low : touched) {
            worst = std::max(worst, std::abs(acc[low]));
            acc[low] = 0;
        }
    }
    return worst;
}

} // namespace wittenlab
