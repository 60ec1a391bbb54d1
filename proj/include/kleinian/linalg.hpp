#pragma once

#include <vector>

#include "kleinian/cyclo.hpp"

namespace kln {

using CMatrix = std::vector<std::vector<Cyclo>>;

CMatrix cmat_zero(int rows, int cols);
CMatrix cmat_identity(int n);
CMatrix cmat_mul(const CMatrix& a, const CMatrix& b);
CMatrix cmat_add(const CMatrix& a, const CMatrix& b, const Cyclo& scale = Cyclo(1));
CMatrix cmat_transpose(const CMatrix& a);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(CMatrix& m);
int rank(CMatrix m);
// Basis of {v : m v = 0}.
std::vector<std::vector<Cyclo>> nullspace(CMatrix m, int cols);
// One solution of m x = b, or false when inconsistent.
bool solve_linear(CMatrix m, const std::vector<Cyclo>& b, std::vector<Cyclo>& x);
CMatrix cmat_inverse(const CMatrix& a);  // throws if singular

}  // namespace kln
