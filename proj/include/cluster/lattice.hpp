#pragma once

// Exact integer linear algebra on dense matrices: Smith and Hermite normal
// forms, kernels, cokernels, integer solvability and lattice intersections.
// Everything is templated on the scalar so the same code runs on Integer and,
// in tests, on plain machine integers.

#include "cluster/numeric.hpp"

#include <optional>
#include <utility>

namespace cluster {

/// Finitely generated abelian group Z^free_rank + sum Z/d_i with d_1 | d_2 | ...
struct FinAbPresentation {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const FinAbPresentation&) const = default;
};

std::string to_string(const FinAbPresentation& group);

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_rank.
template <typename Scalar>
struct SmithForm {
  Matrix<Scalar> U;
  Matrix<Scalar> U_inverse;
  Matrix<Scalar> D;
  Matrix<Scalar> V;
  Eigen::Index rank = 0;
};

namespace detail {

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

// Least |entry| among nonzero entries of the trailing block, ties row-major.
template <typename Scalar>
bool find_pivot(const Matrix<Scalar>& D, Eigen::Index t, Eigen::Index& pr, Eigen::Index& pc) {
  bool found = false;
  Scalar best{};
  for (Eigen::Index i = t; i < D.rows(); ++i)
    for (Eigen::Index j = t; j < D.cols(); ++j) {
      if (D(i, j) == 0) continue;
      Scalar a = abs_value(D(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pr = i;
        pc = j;
      }
    }
  return found;
}

template <typename Scalar>
Scalar trunc_quotient(const Scalar& a, const Scalar& b) {
  return a / b;
}

}  // namespace detail

template <typename Scalar>
SmithForm<Scalar> smith_normal_form(const Matrix<Scalar>& A) {
  const Eigen::Index m = A.rows(), n = A.cols();
  SmithForm<Scalar> out;
  out.D = A;
  out.U = Matrix<Scalar>::Identity(m, m);
  out.U_inverse = Matrix<Scalar>::Identity(m, m);
  out.V = Matrix<Scalar>::Identity(n, n);
  auto& D = out.D;
  auto& U = out.U;
  auto& Ui = out.U_inverse;
  auto& V = out.V;

  auto swap_rows = [&](Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    D.row(a).swap(D.row(b));
    U.row(a).swap(U.row(b));
    Ui.col(a).swap(Ui.col(b));
  };
  auto swap_cols = [&](Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    D.col(a).swap(D.col(b));
    V.col(a).swap(V.col(b));
  };
  // row_target += q * row_source
  auto add_row = [&](Eigen::Index target, Eigen::Index source, const Scalar& q) {
    D.row(target) += q * D.row(source);
    U.row(target) += q * U.row(source);
    Ui.col(source) -= q * Ui.col(target);
  };
  auto add_col = [&](Eigen::Index target, Eigen::Index source, const Scalar& q) {
    D.col(target) += q * D.col(source);
    V.col(target) += q * V.col(source);
  };

  Eigen::Index t = 0;
  for (; t < std::min(m, n); ++t) {
    Eigen::Index pr = 0, pc = 0;
    if (!detail::find_pivot(D, t, pr, pc)) break;
    swap_rows(t, pr);
    swap_cols(t, pc);
    for (;;) {
      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        add_row(i, t, Scalar(-detail::trunc_quotient(D(i, t), D(t, t))));
        if (D(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        add_col(j, t, Scalar(-detail::trunc_quotient(D(t, j), D(t, t))));
        if (D(t, j) != 0) clean = false;
      }
      if (clean) {
        // Enforce divisibility of the trailing block by the pivot.
        bool divisible = true;
        for (Eigen::Index i = t + 1; i < m && divisible; ++i)
          for (Eigen::Index j = t + 1; j < n; ++j)
            if (D(i, j) % D(t, t) != 0) {
              add_row(t, i, Scalar(1));
              divisible = false;
              break;
            }
        if (divisible) break;
      }
      // Re-pivot on the least nonzero entry of row t / column t.
      Eigen::Index best_r = t, best_c = t;
      Scalar best = detail::abs_value(D(t, t));
      for (Eigen::Index i = t + 1; i < m; ++i)
        if (D(i, t) != 0 && detail::abs_value(D(i, t)) < best) {
          best = detail::abs_value(D(i, t));
          best_r = i;
          best_c = t;
        }
      for (Eigen::Index j = t + 1; j < n; ++j)
        if (D(t, j) != 0 && detail::abs_value(D(t, j)) < best) {
          best = detail::abs_value(D(t, j));
          best_r = t;
          best_c = j;
        }
      swap_rows(t, best_r);
      swap_cols(t, best_c);
    }
    if (D(t, t) < 0) {
      D.row(t) *= Scalar(-1);
      U.row(t) *= Scalar(-1);
      Ui.col(t) *= Scalar(-1);
    }
  }
  out.rank = t;
  return out;
}

template <typename Scalar>
FinAbPresentation cokernel(const Matrix<Scalar>& A) {
  const auto snf = smith_normal_form(A);
  FinAbPresentation g;
  g.free_rank = static_cast<std::size_t>(A.rows() - snf.rank);
  for (Eigen::Index i = 0; i < snf.rank; ++i)
    if (snf.D(i, i) != 1) g.torsion.push_back(Integer(snf.D(i, i)));
  return g;
}

/// Columns form a saturated Z-basis of {x : A x = 0}.
template <typename Scalar>
Matrix<Scalar> kernel_basis(const Matrix<Scalar>& A) {
  const auto snf = smith_normal_form(A);
  return snf.V.rightCols(A.cols() - snf.rank);
}

/// Some x with A x = b, or nothing. Free coordinates of the Smith solution are zero.
template <typename Scalar>
std::optional<Vector<Scalar>> solve_integer(const Matrix<Scalar>& A, const Vector<Scalar>& b) {
  if (b.size() != A.rows()) throw ClusterError(ErrorKind::RankMismatch, "solve_integer: dimension mismatch");
  const auto snf = smith_normal_form(A);
  const Vector<Scalar> c = snf.U * b;
  Vector<Scalar> y = Vector<Scalar>::Zero(A.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (i < snf.rank) {
      if (c(i) % snf.D(i, i) != 0) return std::nullopt;
      y(i) = c(i) / snf.D(i, i);
    } else if (c(i) != 0) {
      return std::nullopt;
    }
  }
  return Vector<Scalar>(snf.V * y);
}

/// Column-style Hermite normal form of the lattice spanned by the columns of B.
/// Zero columns are dropped; pivots are positive and entries left of a pivot reduced.
template <typename Scalar>
Matrix<Scalar> hermite_column_basis(const Matrix<Scalar>& B) {
  Matrix<Scalar> H = B.transpose();  // rows generate the lattice
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < H.cols() && r < H.rows(); ++c) {
    for (;;) {
      Eigen::Index p = -1;
      for (Eigen::Index i = r; i < H.rows(); ++i)
        if (H(i, c) != 0 && (p < 0 || detail::abs_value(H(i, c)) < detail::abs_value(H(p, c)))) p = i;
      if (p < 0) break;
      H.row(r).swap(H.row(p));
      bool done = true;
      for (Eigen::Index i = r + 1; i < H.rows(); ++i) {
        if (H(i, c) == 0) continue;
        H.row(i) -= Scalar(H(i, c) / H(r, c)) * H.row(r);
        if (H(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (r >= H.rows() || H(r, c) == 0) continue;
    if (H(r, c) < 0) H.row(r) *= Scalar(-1);
    for (Eigen::Index i = 0; i < r; ++i) {
      Scalar q = H(i, c) / H(r, c);
      if (H(i, c) % H(r, c) != 0 && H(i, c) < 0) q -= 1;
      H.row(i) -= q * H.row(r);
    }
    ++r;
  }
  return H.topRows(r).transpose();
}

/// Basis of span_Z(B1) ∩ span_Z(B2); both inputs must have independent columns.
template <typename Scalar>
Matrix<Scalar> lattice_intersection(const Matrix<Scalar>& B1, const Matrix<Scalar>& B2) {
  if (B1.cols() == 0 || B2.cols() == 0) return Matrix<Scalar>(B1.rows(), 0);
  if (B1.rows() != B2.rows()) throw ClusterError(ErrorKind::RankMismatch, "lattice_intersection: ambient ranks differ");
  Matrix<Scalar> joined(B1.rows(), B1.cols() + B2.cols());
  joined << B1, -B2;
  const Matrix<Scalar> K = kernel_basis(joined);
  return hermite_column_basis(Matrix<Scalar>(B1 * K.topRows(B1.cols())));
}

/// Basis of the image lattice A(Z^n), in Hermite form.
template <typename Scalar>
Matrix<Scalar> image_basis(const Matrix<Scalar>& A) {
  return hermite_column_basis(A);
}

/// Rank over the fraction field (Gaussian elimination; Scalar must be a field).
template <typename Field>
Eigen::Index field_rank(Matrix<Field> A) {
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < A.cols() && r < A.rows(); ++c) {
    Eigen::Index p = r;
    while (p < A.rows() && A(p, c) == 0) ++p;
    if (p == A.rows()) continue;
    A.row(r).swap(A.row(p));
    for (Eigen::Index i = r + 1; i < A.rows(); ++i) {
      if (A(i, c) == 0) continue;
      Field f = A(i, c) / A(r, c);
      A.row(i) -= f * A.row(r);
    }
    ++r;
  }
  return r;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
template <typename Scalar>
Scalar determinant(Matrix<Scalar> A) {
  const Eigen::Index n = A.rows();
  if (n != A.cols()) throw ClusterError(ErrorKind::RankMismatch, "determinant of non-square matrix");
  if (n == 0) return Scalar(1);
  Scalar sign(1), prev(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && A(p, k) == 0) ++p;
      if (p == n) return Scalar(0);
      A.row(k).swap(A.row(p));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

/// True iff the columns of B span a saturated sublattice of rank B.cols().
template <typename Scalar>
bool is_saturated(const Matrix<Scalar>& B) {
  const auto snf = smith_normal_form(B);
  if (snf.rank != B.cols()) return false;
  for (Eigen::Index i = 0; i < snf.rank; ++i)
    if (snf.D(i, i) != 1) return false;
  return true;
}

/// Columns C with [C | B] unimodular; B must have saturated independent columns.
template <typename Scalar>
Matrix<Scalar> complement_basis(const Matrix<Scalar>& B) {
  if (B.cols() == 0) return Matrix<Scalar>::Identity(B.rows(), B.rows());
  const auto snf = smith_normal_form(B);
  return snf.U_inverse.rightCols(B.rows() - snf.rank);
}

/// Inverse of a unimodular matrix; throws InvalidInput otherwise.
template <typename Scalar>
Matrix<Scalar> unimodular_inverse(const Matrix<Scalar>& A) {
  if (A.rows() != A.cols()) throw ClusterError(ErrorKind::RankMismatch, "inverse of non-square matrix");
  const auto snf = smith_normal_form(A);
  if (snf.rank != A.rows() || (A.rows() > 0 && snf.D(A.rows() - 1, A.rows() - 1) != 1))
    throw ClusterError(ErrorKind::InvalidInput, "matrix is not unimodular");
  return snf.V * snf.U;
}

Integer gcd_of(const IntVector& v);

}  // namespace cluster
