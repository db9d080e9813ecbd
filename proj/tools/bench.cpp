// Times the OpenMP kernels against their serial references on sizes where
// the parallel path matters. Both paths are pure gathers, so outputs must
// agree bitwise; the max deviation is printed as a sanity column.

#include <chrono>
#include <cstdio>
#include <functional>

#include "symq/kernels.hpp"
#include "symq/rng.hpp"

using namespace symq;
namespace chrono = std::chrono;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warmup
    auto t0 = chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    auto t1 = chrono::steady_clock::now();
    return chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

CVector random_vector(std::int64_t size, Rng& rng) {
    CVector v(size);
    for (std::int64_t i = 0; i < size; ++i) v(i) = rng.next_complex_gaussian();
    return v;
}

CMatrix random_matrix(int d, Rng& rng) {
    CMatrix m(d, d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) m(r, c) = rng.next_complex_gaussian();
    }
    return m;
}

void report(const char* name, double serial_ms, double omp_ms, double maxdiff) {
    std::printf("%-22s %10.2f ms %10.2f ms %7.2fx %10.2e\n", name, serial_ms, omp_ms,
                serial_ms / omp_ms, maxdiff);
}

}  // namespace

int main() {
    Rng rng(42);
    std::printf("%-22s %13s %13s %8s %10s\n", "kernel", "serial", "openmp", "speedup", "max|diff|");

    {
        const int n = 20, d = 2;
        CVector in = random_vector(std::int64_t{1} << 20, rng);
        CMatrix m = random_matrix(d, rng);
        CVector out_s, out_p;
        double s = time_ms([&] { kernels::apply_site_serial(n, d, 10, m, in, out_s); }, 3);
        double p = time_ms([&] { kernels::apply_site_omp(n, d, 10, m, in, out_p); }, 3);
        report("apply_site (2^20)", s, p, (out_s - out_p).cwiseAbs().maxCoeff());
    }
    {
        const int n = 20, d = 2;
        CVector in = random_vector(std::int64_t{1} << 20, rng);
        std::vector<int> inv(n);
        for (int k = 0; k < n; ++k) inv[static_cast<std::size_t>(k)] = n - 1 - k;
        CVector out_s, out_p;
        double s = time_ms([&] { kernels::permute_serial(n, d, inv, in, out_s); }, 3);
        double p = time_ms([&] { kernels::permute_omp(n, d, inv, in, out_p); }, 3);
        report("permute (2^20)", s, p, (out_s - out_p).cwiseAbs().maxCoeff());
    }
    {
        const int n = 10, d = 4;
        OccBasis basis(n, d);
        CVector amps = random_vector(basis.size(), rng);
        CVector out_s, out_p;
        double s = time_ms([&] { kernels::sym_to_full_serial(basis, amps, out_s); }, 3);
        double p = time_ms([&] { kernels::sym_to_full_omp(basis, amps, out_p); }, 3);
        report("sym_to_full (4^10)", s, p, (out_s - out_p).cwiseAbs().maxCoeff());
    }
    {
        const int n = 28, d = 6;
        OccBasis full(n, d), rest(n - 1, d);
        CVector amps = random_vector(full.size(), rng);
        CMatrix grid_s, grid_p;
        double s = time_ms([&] { kernels::site_split_serial(full, rest, amps, grid_s); }, 3);
        double p = time_ms([&] { kernels::site_split_omp(full, rest, amps, grid_p); }, 3);
        report("site_split (n=28,d=6)", s, p, (grid_s - grid_p).cwiseAbs().maxCoeff());

        CVector rec_s, rec_p;
        s = time_ms([&] { kernels::recombine_serial(full, rest, grid_s, rec_s); }, 3);
        p = time_ms([&] { kernels::recombine_omp(full, rest, grid_s, rec_p); }, 3);
        report("recombine (n=28,d=6)", s, p, (rec_s - rec_p).cwiseAbs().maxCoeff());
    }
    {
        const int n = 24, d = 4, k = 12;
        OccBasis left(k, d), left1(k + 1, d), right(n - k, d), right1(n - k - 1, d);
        CMatrix w(left.size(), right.size());
        Rng r2(7);
        for (std::int64_t i = 0; i < w.size(); ++i) w.data()[i] = r2.next_complex_gaussian();
        CMatrix a = random_matrix(d, r2);
        CMatrix out_s, out_p;
        double s = time_ms(
            [&] { kernels::homogeneous_step_serial(left1, right1, left, right, a, w, out_s); }, 3);
        double p = time_ms(
            [&] { kernels::homogeneous_step_omp(left1, right1, left, right, a, w, out_p); }, 3);
        report("homogeneous_step", s, p, (out_s - out_p).cwiseAbs().maxCoeff());
    }
    return 0;
}
