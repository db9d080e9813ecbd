#pragma once

#include "symq/symspace.hpp"

// Data-parallel inner loops: each kernel comes as an OpenMP-parallel
// version (used by the library entry points) and a naive serial reference
// kept for the tests and the benchmark. All parallel kernels are pure
// gathers, so they are bitwise deterministic regardless of thread count.
namespace symq::kernels {

void apply_site_omp(int n, int d, int site, const CMatrix& m, const CVector& in, CVector& out);
void apply_site_serial(int n, int d, int site, const CMatrix& m, const CVector& in, CVector& out);

// inv[k] = sigma^{-1}(k); out[j] = in[i] with i_m = j_{inv(m)}.
void permute_omp(int n, int d, const std::vector<int>& inv, const CVector& in, CVector& out);
void permute_serial(int n, int d, const std::vector<int>& inv, const CVector& in, CVector& out);

void sym_to_full_omp(const OccBasis& basis, const CVector& amps, CVector& out);
void sym_to_full_serial(const OccBasis& basis, const CVector& amps, CVector& out);

void site_split_omp(const OccBasis& full, const OccBasis& rest, const CVector& amps, CMatrix& grid);
void site_split_serial(const OccBasis& full, const OccBasis& rest, const CVector& amps, CMatrix& grid);

void recombine_omp(const OccBasis& full, const OccBasis& rest, const CMatrix& grid, CVector& amps);
void recombine_serial(const OccBasis& full, const OccBasis& rest, const CMatrix& grid, CVector& amps);

// One step of the homogeneous A^{(x)n} sweep: moves one site from the
// right Sym^{n-k} factor through A into the left Sym^{k} factor.
// w is D_left x D_right, out is D_left1 x D_right1.
void homogeneous_step_omp(const OccBasis& left1, const OccBasis& right1,
                          const OccBasis& left, const OccBasis& right,
                          const CMatrix& a, const CMatrix& w, CMatrix& out);
void homogeneous_step_serial(const OccBasis& left1, const OccBasis& right1,
                             const OccBasis& left, const OccBasis& right,
                             const CMatrix& a, const CMatrix& w, CMatrix& out);

}  // namespace symq::kernels
