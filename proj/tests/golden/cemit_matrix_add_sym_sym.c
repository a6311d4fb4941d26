/*
 * matrix_add_sym_sym: C[i,j] = A[i,j] + B[i,j]
 *
 * Packed storage: each tensor holds one value per canonical
 * coordinate orbit, dimensions permuted so every symmetry part
 * is contiguous.
 *
 *   C[i,j]: symmetry {i,j}, storage order (i,j)
 *   A[i,j]: symmetry {i,j}, storage order (i,j)
 *   B[i,j]: symmetry {i,j}, storage order (i,j)
 *
 * extents[2]: extents[0] = Ni, extents[1] = Nj
 */
#include <stddef.h>

void matrix_add_sym_sym(double* C, const double* A, const double* B, const int* extents) {
  const int Ni = extents[0];
  const int Nj = extents[1];
  const long long size_C = (long long)1 * ((long long)Ni * (Ni + 1) / 2);
  for (long long z = 0; z < size_C; z++) {
    C[z] = 0.0;
  }
  for (int i = 0; i < Ni; i++) {
    const long long idx_A_1 = (long long)i * (i + 1) / 2;
    const long long idx_B_1 = (long long)i * (i + 1) / 2;
    const long long idx_C_1 = (long long)i * (i + 1) / 2;
    for (int j = 0; j <= i; j++) {
      const long long idx_A_2 = idx_A_1 + j;
      const long long idx_B_2 = idx_B_1 + j;
      const long long idx_C_2 = idx_C_1 + j;
      C[idx_C_2] = A[idx_A_2] + B[idx_B_2];
    }
  }
}
