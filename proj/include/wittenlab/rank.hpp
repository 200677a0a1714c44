#ifndef WITTENLAB_RANK_HPP
#define WITTENLAB_RANK_HPP

#include <cstdint>
#include <vector>

#include "wittenlab/cell_complex.hpp"

namespace wittenlab {

// Exact rank over Q of an integer matrix (fraction-free Bareiss elimination,
// int64 with overflow detection). The incidence matrices here are totally
// unimodular, so intermediates stay small.
int integer_rank(std::vector<std::vector<std::int64_t>> m);

// Signed incidence of degree r as an integer matrix ((r+1)-cells x r-cells).
std::vector<std::vector<std::int64_t>> incidence_matrix(const CellComplex& cx, int r);

// b_r = dim C^r - rank d_r - rank d_{r-1}, from integer ranks.
std::vector<int> betti_numbers_rank(const CellComplex& cx);

} // namespace wittenlab

#endif
