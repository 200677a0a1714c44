#include "wittenlab/rank.hpp"

#include <stdexcept>

namespace wittenlab {

namespace {
std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer_rank: 64-bit overflow during elimination");
    return r;
}
} // namespace

int integer_rank(std::vector<std::vector<std::int64_t>> m) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0)
        return 0;
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    std::int64_t prev_pivot = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot_row = -1;
        for (int i = rank; i < rows; ++i)
            if (m[i][col] != 0) {
                pivot_row = i;
                break;
            }
        if (pivot_row < 0)
            continue;
        std::swap(m[rank], m[pivot_row]);
        const std::int64_t pivot = m[rank][col];
        for (int i = rank + 1; i < rows; ++i) {
            const std::int64_t f = m[i][col];
            for (int j = col; j < cols; ++j) {
                // Bareiss: exact division by the previous pivot
                const std::int64_t num = checked_mul(pivot, m[i][j]) - checked_mul(f, m[rank][j]);
                m[i][j] = num / prev_pivot;
            }
        }
        prev_pivot = pivot;
        ++rank;
    }
    return rank;
}

std::vector<std::vector<std::int64_t>> incidence_matrix(const CellComplex& cx, int r) {
    if (r < 0 || r >= cx.dim)
        throw std::out_of_range("incidence_matrix: degree out of range");
    std::vector<std::vector<std::int64_t>> m(
        cx.n_cells(r + 1), std::vector<std::int64_t>(cx.n_cells(r), 0));
    for (std::size_t row = 0; row < cx.incidence[r].size(); ++row)
        for (const IncidenceEntry& e : cx.incidence[r][row])
            m[row][e.cell] += e.sign;
    return m;
}

std::vector<int> betti_numbers_rank(const CellComplex& cx) {
    std::vector<int> ranks(cx.dim);
    for (int r = 0; r < cx.dim; ++r)
        ranks[r] = integer_rank(incidence_matrix(cx, r));
    std::vector<int> betti(cx.dim + 1);
    for (int r = 0; r <= cx.dim; ++r) {
        int b = cx.n_cells(r);
        if (r < cx.dim)
            b -= ranks[r];
        if (r > 0)
            b -= ranks[r - 1];
        betti[r] = b;
    }
    return betti;
}

} // namespace wittenlab
