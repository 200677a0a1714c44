#include <doctest.h>

#include <cmath>

#include "wittenlab/morse_field.hpp"
#include "wittenlab/spectral.hpp"

using namespace wittenlab;

// the OpenMP kernels partition independent output slots, so they must agree
// bit-for-bit with the serial reference

TEST_CASE("serial and openmp paths are bit-identical") {
    const CellComplex cx = build_circle_complex(384, 2 * M_PI);
    const ScalarField f = blended_morse_function_1d(cx, 0.0, M_PI, 0.35);
    const double k = 24.0;

    const DenseSym a = assemble_witten_laplacian(cx, f, k, 1, ExecMode::serial);
    const DenseSym b = assemble_witten_laplacian(cx, f, k, 1, ExecMode::openmp);
    REQUIRE(a.a.size() == b.a.size());
    for (std::size_t i = 0; i < a.a.size(); ++i)
        CHECK(a.a[i] == b.a[i]);

    const SpectralDecomposition dec = eigendecompose(b, cx, 1, k);
    for (double t : {0.01, 0.5}) {
        const auto ds = heat_kernel_diagonal(dec, t, ExecMode::serial);
        const auto dp = heat_kernel_diagonal(dec, t, ExecMode::openmp);
        for (int c = 0; c < dec.n; ++c)
            CHECK(ds[c] == dp[c]);
    }

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 200; ++i)
        pairs.emplace_back((i * 37) % dec.n, (i * 101) % dec.n);
    const auto es = heat_kernel_entries(dec, 0.1, pairs, ExecMode::serial);
    const auto ep = heat_kernel_entries(dec, 0.1, pairs, ExecMode::openmp);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        CHECK(es[i] == ep[i]);
}
