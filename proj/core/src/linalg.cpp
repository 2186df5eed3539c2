// SPDX-License-Identifier: Apache-2.0

#include <linkpredict/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <linkpredict/errors.hpp>

namespace linkpredict {

Matrix Matrix::identity(std::size_t size) {
  Matrix m(size);
  for (std::size_t i = 0; i < size; ++i) m.at(i, i) = 1.0;
  return m;
}

Vector matvec(const Matrix& m, const Vector& v) {
  Vector out(m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) s += m.at(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Matrix transpose_times_self(const Matrix& m) {
  Matrix out(m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = i; j < m.n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < m.n; ++k) s += m.at(k, i) * m.at(k, j);
      out.at(i, j) = s;
      out.at(j, i) = s;
    }
  }
  return out;
}

Vector transpose_times(const Matrix& m, const Vector& v) {
  Vector out(m.n, 0.0);
  for (std::size_t j = 0; j < m.n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) s += m.at(i, j) * v[i];
    out[j] = s;
  }
  return out;
}

double dot(const Vector& x, const Vector& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(const Vector& x) { return std::sqrt(dot(x, x)); }

double inf_norm(const Matrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) row += std::abs(m.at(i, j));
    best = std::max(best, row);
  }
  return best;
}

double inf_norm(const Vector& v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

namespace {

// Forward elimination with partial pivoting on [e | rhs columns]; shared by
// solve and inverse. rhs is n x k column-major-ish (vector of columns).
void eliminate(Matrix& e, std::vector<Vector>& rhs, double pivot_floor) {
  const std::size_t n = e.n;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot_row = col;
    double best = std::abs(e.at(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double cand = std::abs(e.at(r, col));
      if (cand > best) {
        best = cand;
        pivot_row = r;
      }
    }
    if (best < pivot_floor) {
      throw SingularSystem("pivot " + std::to_string(best) +
                           " below tolerance at column " +
                           std::to_string(col));
    }
    if (pivot_row != col) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(e.at(col, j), e.at(pivot_row, j));
      for (auto& b : rhs) std::swap(b[col], b[pivot_row]);
    }
    const double pivot = e.at(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = e.at(r, col) / pivot;
      if (factor == 0.0) continue;
      e.at(r, col) = 0.0;
      for (std::size_t j = col + 1; j < n; ++j)
        e.at(r, j) -= factor * e.at(col, j);
      for (auto& b : rhs) b[r] -= factor * b[col];
    }
  }
}

Vector back_substitute(const Matrix& e, const Vector& b) {
  const std::size_t n = e.n;
  Vector x(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= e.at(ii, j) * x[j];
    x[ii] = s / e.at(ii, ii);
  }
  return x;
}

}  // namespace

Vector gauss_solve(Matrix e, Vector b, SolveInfo* info) {
  const double scale = inf_norm(e);
  if (scale == 0.0) throw SingularSystem("zero matrix");
  if (info != nullptr) {
    Matrix inv = gauss_inverse(e);
    info->condition_estimate = scale * inf_norm(inv);
    info->ill_conditioned = info->condition_estimate > 1e8;
  }
  std::vector<Vector> rhs{std::move(b)};
  eliminate(e, rhs, 1e-12 * scale);
  return back_substitute(e, rhs[0]);
}

Matrix gauss_inverse(Matrix e) {
  const std::size_t n = e.n;
  const double scale = inf_norm(e);
  if (scale == 0.0) throw SingularSystem("zero matrix");
  std::vector<Vector> cols(n, Vector(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) cols[i][i] = 1.0;
  eliminate(e, cols, 1e-12 * scale);
  Matrix inv(n);
  for (std::size_t c = 0; c < n; ++c) {
    const Vector x = back_substitute(e, cols[c]);
    for (std::size_t r = 0; r < n; ++r) inv.at(r, c) = x[r];
  }
  return inv;
}

std::vector<double> jacobi_eigenvalues(Matrix sym) {
  const std::size_t n = sym.n;
  double off = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) off += sym.at(i, j) * sym.at(i, j);
  double frob = off * 2.0;
  for (std::size_t i = 0; i < n; ++i) frob += sym.at(i, i) * sym.at(i, i);
  const double stop = 1e-26 * std::max(frob, 1e-300);

  for (int sweep = 0; sweep < 128 && off > stop; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = sym.at(p, q);
        if (apq == 0.0) continue;
        const double theta = (sym.at(q, q) - sym.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = sym.at(k, p);
          const double akq = sym.at(k, q);
          sym.at(k, p) = c * akp - s * akq;
          sym.at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = sym.at(p, k);
          const double aqk = sym.at(q, k);
          sym.at(p, k) = c * apk - s * aqk;
          sym.at(q, k) = s * apk + c * aqk;
        }
      }
    }
    off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        off += sym.at(i, j) * sym.at(i, j);
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = sym.at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

Matrix random_spd(std::size_t n, Rng& rng, double eig_min, double eig_max) {
  Vector lambda(n);
  for (std::size_t i = 0; i < n; ++i)
    lambda[i] = eig_min + rng.uniform01() * (eig_max - eig_min);

  Matrix q = Matrix::identity(n);
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double angle = 2.0 * std::numbers::pi * rng.uniform01();
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        for (std::size_t k = 0; k < n; ++k) {
          const double qki = q.at(k, i);
          const double qkj = q.at(k, j);
          q.at(k, i) = c * qki - s * qkj;
          q.at(k, j) = s * qki + c * qkj;
        }
      }
    }
  }

  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += q.at(i, k) * lambda[k] * q.at(j, k);
      out.at(i, j) = s;
      out.at(j, i) = s;
    }
  }
  return out;
}

GdResult gd_minimize(const Matrix& e, const Vector& r, const GdOptions& opt) {
  const std::size_t n = e.n;
  const Matrix b = transpose_times_self(e);
  const Vector c = transpose_times(e, r);

  GdResult res;
  res.x.assign(n, 0.0);
  if (opt.init == GdInit::RandomUniform01) {
    Rng rng(opt.rng_seed);
    for (std::size_t i = 0; i < n; ++i) res.x[i] = rng.uniform01();
  }

  Vector grad = matvec(b, res.x);
  for (std::size_t i = 0; i < n; ++i) grad[i] = c[i] - grad[i];

  double objective = 0.5 * dot(res.x, matvec(b, res.x)) - dot(res.x, c);
  res.objective_trace.push_back(objective);
  res.grad_norms.push_back(norm2(grad));

  res.stop_reason = GdStop::MaxIters;
  for (std::size_t k = 0; k < opt.max_iters; ++k) {
    const double grad_sq = dot(grad, grad);
    const double grad_norm = std::sqrt(grad_sq);
    if (grad_norm < opt.grad_tol || grad_sq == 0.0) {
      res.stop_reason = GdStop::GradTol;
      return res;
    }
    const Vector bg = matvec(b, grad);
    const double curvature = dot(grad, bg);
    if (curvature <= 1e-300) {
      res.stop_reason = GdStop::ZeroCurvature;
      return res;
    }
    const double step = grad_sq / curvature;
    for (std::size_t i = 0; i < n; ++i) res.x[i] += step * grad[i];
    objective -= 0.5 * step * grad_sq;

    grad = matvec(b, res.x);
    for (std::size_t i = 0; i < n; ++i) grad[i] = c[i] - grad[i];

    res.iterations = k + 1;
    res.objective_trace.push_back(objective);
    res.grad_norms.push_back(norm2(grad));
  }
  if (res.grad_norms.back() < opt.grad_tol) res.stop_reason = GdStop::GradTol;
  return res;
}

}  // namespace linkpredict
