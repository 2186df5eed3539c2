// SPDX-License-Identifier: Apache-2.0
// Small dense linear algebra: square matrices, pivoted Gaussian elimination,
// a symmetric eigensolver, and steepest descent with exact line search on
// least-squares normal equations. Sizes are tiny (4 in production, up to a
// few dozen in benchmarks), so everything is plain row-major double storage.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <linkpredict/rng.hpp>

namespace linkpredict {

using Vector = std::vector<double>;

struct Matrix {
  std::size_t n = 0;
  std::vector<double> a;  // row-major, n*n

  Matrix() = default;
  explicit Matrix(std::size_t size) : n(size), a(size * size, 0.0) {}

  static Matrix identity(std::size_t size);

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

Vector matvec(const Matrix& m, const Vector& v);
Matrix transpose_times_self(const Matrix& m);           // MᵀM
Vector transpose_times(const Matrix& m, const Vector& v);  // Mᵀv
double dot(const Vector& x, const Vector& y);
double norm2(const Vector& x);
double inf_norm(const Matrix& m);
double inf_norm(const Vector& v);

struct SolveInfo {
  double condition_estimate = 0.0;  // ‖E‖∞ · ‖E⁻¹‖∞
  bool ill_conditioned = false;     // condition_estimate > 1e8
};

// Gaussian elimination with partial pivoting. Throws SingularSystem when the
// best pivot falls below 1e-12·‖E‖∞. When info is non-null the inverse is
// also computed to estimate the condition number (fine at these sizes).
Vector gauss_solve(Matrix e, Vector b, SolveInfo* info = nullptr);
Matrix gauss_inverse(Matrix e);

// Eigenvalues of a symmetric matrix by cyclic Jacobi, ascending.
std::vector<double> jacobi_eigenvalues(Matrix sym);

// Random SPD matrix QΛQᵀ with Λ ~ U[eig_min, eig_max] and Q a product of
// random Givens rotations; eigenvalue bounds cap the condition number.
Matrix random_spd(std::size_t n, Rng& rng, double eig_min, double eig_max);

// -- Steepest descent on the normal equations --------------------------------

enum class GdInit { Zero, RandomUniform01 };
enum class GdStop { MaxIters, GradTol, ZeroCurvature };

struct GdOptions {
  std::size_t max_iters = 1000;
  double grad_tol = 1e-9;
  GdInit init = GdInit::Zero;
  std::uint64_t rng_seed = 42;
};

struct GdResult {
  Vector x;
  std::size_t iterations = 0;
  GdStop stop_reason = GdStop::MaxIters;
  std::vector<double> objective_trace;  // f(x_k), length iterations + 1
  std::vector<double> grad_norms;       // ‖r_k‖₂, length iterations + 1
};

// Minimizes f(x) = ½ xᵀ(EᵀE)x − xᵀEᵀR by steepest descent with the exact
// line-search step ‖r‖²/(rᵀ EᵀE r), r = EᵀR − EᵀE x. B = EᵀE and c = EᵀR are
// formed once; each iteration costs two matrix-vector products.
//
// The objective trace is accumulated by the identity
// f(x + αr) = f(x) − ½α‖r‖², whose decrement is a product of non-negative
// terms, so the recorded trace is non-increasing even where direct
// re-evaluation of f would fluctuate in the last few ulps.
GdResult gd_minimize(const Matrix& e, const Vector& r, const GdOptions& opt);

}  // namespace linkpredict
