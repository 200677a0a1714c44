#include "wittenlab/deformed.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace wittenlab {

std::vector<double> DeformedCoboundary::apply(const std::vector<double>& u) const {
    std::vector<double> w(rows, 0.0);
    for (int i = 0; i < rows; ++i)
        for (const Entry& e : row_entries[i])
            w[i] += e.value * u[e.col];
    return w;
}

std::vector<double> DeformedCoboundary::apply_transpose(const std::vector<double>& w) const {
    std::vector<double> u(cols, 0.0);
    for (int i = 0; i < rows; ++i)
        for (const Entry& e : row_entries[i])
            u[e.col] += e.value * w[i];
    return u;
}

double max_admissible_k(const CellComplex& cx, const ScalarField& f) {
    double max_diff = 0.0;
    for (int r = 0; r + 1 <= cx.dim; ++r)
        for (std::size_t row = 0; row < cx.incidence[r].size(); ++row)
            for (const IncidenceEntry& e : cx.incidence[r][row])
                max_diff = std::max(max_diff,
                                    std::abs(f.at(r, e.cell) - f.at(r + 1, static_cast<int>(row))));
    if (max_diff == 0.0)
        return std::numeric_limits<double>::infinity();
    return kOverflowExponentGuard / max_diff;
}

DeformedCoboundary deformed_coboundary(const CellComplex& cx, const ScalarField& f, double k,
                                       int r) {
    if (k < 0.0)
        throw std::domain_error("deformed_coboundary: k must be non-negative");
    if (r < 0 || r >= cx.dim)
        throw std::out_of_range("deformed_coboundary: degree out of range");
    const double kmax = max_admissible_k(cx, f);
    if (k > kmax) {
        std::ostringstream os;
        os << "deformed_coboundary: k = " << k << " exceeds the overflow guard; "
           << "max admissible k for this grid is " << kmax;
        throw OverflowGuardError(os.str(), kmax);
    }
    DeformedCoboundary d;
    d.k = k;
    d.r = r;
    d.rows = cx.n_cells(r + 1);
    d.cols = cx.n_cells(r);
    d.row_entries.resize(d.rows);
    for (int row = 0; row < d.rows; ++row) {
        const double f_hi = f.at(r + 1, row);
        for (const IncidenceEntry& e : cx.incidence[r][row]) {
            const double v = e.sign * std::exp(k * (f.at(r, e.cell) - f_hi));
            d.row_entries[row].push_back({e.cell, v});
            d.max_abs_entry = std::max(d.max_abs_entry, std::abs(v));
        }
    }
    return d;
}

CompositionNorm composition_max_abs(const DeformedCoboundary& outer,
                                    const DeformedCoboundary& inner) {
    if (outer.cols != inner.rows)
        throw std::invalid_argument("composition_max_abs: degree mismatch");
    double worst = 0.0;
    std::vector<double> acc(inner.cols, 0.0);
    std::vector<int> touched;
    for (int i = 0; i < outer.rows; ++i) {
        touched.clear();
        for (const auto& [mid, v_outer] : outer.row_entries[i])
            for (const auto& [low, v_inner] : inner.row_entries[mid]) {
                touched.push_back(low);
                acc[low] += v_outer * v_inner;
            }
        for (int low : touched) {
            worst = std::max(worst, std::abs(acc[low]));
            acc[low] = 0.0;
        }
    }
    return {worst, outer.max_abs_entry * inner.max_abs_entry};
}

} // namespace wittenlab
