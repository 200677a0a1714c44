// Serial vs OpenMP comparison for the heat-kernel evaluation loops.

#include <cstdio>
#include <random>
#include <vector>

#include <omp.h>

#include "wittenlab/morse_field.hpp"
#include "wittenlab/spectral.hpp"

using namespace wittenlab;

namespace {

double time_of(const char* label, double serial_s, double omp_s) {
    std::printf("%-28s serial %8.3f ms   openmp %8.3f ms   speedup %.2fx\n", label,
                serial_s * 1e3, omp_s * 1e3, serial_s / omp_s);
    return serial_s / omp_s;
}

} // namespace

int main(int argc, char** argv) {
    const int n = (argc > 1) ? std::atoi(argv[1]) : 1536;
    const int reps = (argc > 2) ? std::atoi(argv[2]) : 5;
    std::printf("n = %d, reps = %d, omp threads = %d\n", n, reps, omp_get_max_threads());

    const CellComplex cx = build_circle_complex(n, 2 * M_PI);
    const ScalarField f = blended_morse_function_1d(cx, 0.0, M_PI, 0.35);
    const double k = 32.0;

    // warm up the thread pool before timing
    DenseSym op = assemble_witten_laplacian(cx, f, k, 1, ExecMode::openmp);
    DenseSym op_serial = assemble_witten_laplacian(cx, f, k, 1, ExecMode::serial);
    double diff = 0.0;
    for (std::size_t i = 0; i < op.a.size(); ++i)
        diff = std::max(diff, std::abs(op.a[i] - op_serial.a[i]));
    std::printf("assembly serial/openmp max divergence: %g\n", diff);

    double t0 = omp_get_wtime();
    for (int r = 0; r < reps; ++r)
        op_serial = assemble_witten_laplacian(cx, f, k, 1, ExecMode::serial);
    double t1 = omp_get_wtime();
    for (int r = 0; r < reps; ++r)
        op = assemble_witten_laplacian(cx, f, k, 1, ExecMode::openmp);
    double t2 = omp_get_wtime();
    time_of("assemble (1-forms)", (t1 - t0) / reps, (t2 - t1) / reps);

    const SpectralDecomposition dec = eigendecompose(std::move(op), cx, 1, k);

    double sink = 0.0;
    t0 = omp_get_wtime();
    for (int r = 0; r < reps; ++r)
        sink += heat_kernel_diagonal(dec, 0.05, ExecMode::serial)[0];
    t1 = omp_get_wtime();
    for (int r = 0; r < reps; ++r)
        sink += heat_kernel_diagonal(dec, 0.05, ExecMode::openmp)[0];
    t2 = omp_get_wtime();
    time_of("heat_kernel_diagonal", (t1 - t0) / reps, (t2 - t1) / reps);

    std::mt19937_64 rng(7);
    std::vector<std::pair<int, int>> pairs(4096);
    for (auto& p : pairs)
        p = {static_cast<int>(rng() % n), static_cast<int>(rng() % n)};
    t0 = omp_get_wtime();
    for (int r = 0; r < reps; ++r)
        sink += heat_kernel_entries(dec, 0.05, pairs, ExecMode::serial)[0];
    t1 = omp_get_wtime();
    for (int r = 0; r < reps; ++r)
        sink += heat_kernel_entries(dec, 0.05, pairs, ExecMode::openmp)[0];
    t2 = omp_get_wtime();
    time_of("heat_kernel_entries x4096", (t1 - t0) / reps, (t2 - t1) / reps);

    std::printf("(checksum %g)\n", sink);
    return 0;
}
