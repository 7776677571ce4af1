#pragma once

#include <optional>
#include <vector>

#include "kdescent/integer.hpp"

/* Exact normal forms over the integers: Smith, Hermite (row and column
 * style), lattice solving and kernels.  Everything is deterministic: the
 * pivot rule is "smallest nonzero absolute value, then lowest index", so
 * results are stable across runs and platforms.
 *
 * The routines are templated on the scalar; the rest of the library
 * instantiates them with kdescent::Integer. */

namespace kdescent {

template <typename Scalar>
using DenseMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

/* a = q*b + r, 0 <= r < |b| */
template <typename Scalar>
void generic_euclidean_divmod(const Scalar& a, const Scalar& b, Scalar& q, Scalar& r) {
  q = a / b;
  r = a - q * b;
  if (r < Scalar(0)) {
    if (b > Scalar(0)) { q -= Scalar(1); r += b; }
    else               { q += Scalar(1); r -= b; }
  }
}

template <typename Scalar>
Scalar generic_nearest_quotient(const Scalar& a, const Scalar& b) {
  Scalar q, r;
  generic_euclidean_divmod(a, b, q, r);
  Scalar ab = b < Scalar(0) ? Scalar(-b) : b;
  if (r + r > ab) q += (b > Scalar(0) ? Scalar(1) : Scalar(-1));
  return q;
}

template <typename Scalar>
Scalar generic_abs(const Scalar& a) { return a < Scalar(0) ? Scalar(-a) : a; }

template <typename Scalar>
bool generic_divides(const Scalar& d, const Scalar& a) {
  if (d == Scalar(0)) return a == Scalar(0);
  return a % d == Scalar(0);
}

/* Elementary row/column operations applied simultaneously to the working
 * matrix and the accumulated transforms.  For A' = E*A we keep U' = E*U and
 * Uinv' = Uinv*E^{-1}; column ops mirror this on V/Vinv. */
template <typename Scalar>
struct RowOps {
  DenseMat<Scalar>&A, &U, &Uinv;
  void swap(Index i, Index j) {
    if (i == j) return;
    A.row(i).swap(A.row(j));
    U.row(i).swap(U.row(j));
    Uinv.col(i).swap(Uinv.col(j));
  }
  void add(Index i, Index j, const Scalar& q) {  /* row_i += q * row_j */
    if (q == Scalar(0)) return;
    A.row(i) += q * A.row(j);
    U.row(i) += q * U.row(j);
    Uinv.col(j) -= q * Uinv.col(i);
  }
  void negate(Index i) {
    A.row(i) = -A.row(i);
    U.row(i) = -U.row(i);
    Uinv.col(i) = -Uinv.col(i);
  }
};

template <typename Scalar>
struct ColOps {
  DenseMat<Scalar>&A, &V, &Vinv;
  void swap(Index i, Index j) {
    if (i == j) return;
    A.col(i).swap(A.col(j));
    V.col(i).swap(V.col(j));
    Vinv.row(i).swap(Vinv.row(j));
  }
  void add(Index i, Index j, const Scalar& q) {  /* col_i += q * col_j */
    if (q == Scalar(0)) return;
    A.col(i) += q * A.col(j);
    V.col(i) += q * V.col(j);
    Vinv.row(j) -= q * Vinv.row(i);
  }
  void negate(Index i) {
    A.col(i) = -A.col(i);
    V.col(i) = -V.col(i);
    Vinv.row(i) = -Vinv.row(i);
  }
};

template <typename Scalar>
DenseMat<Scalar> dense_identity(Index n) {
  DenseMat<Scalar> m(n, n);
  m.setConstant(Scalar(0));
  for (Index i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

}  // namespace detail

template <typename Scalar>
struct SmithResult {
  DenseMat<Scalar> U, V, D, Uinv, Vinv;  /* U*M*V = D, M = Uinv*D*Vinv */
  Index rank = 0;

  std::vector<Scalar> invariant_factors() const {
    std::vector<Scalar> f;
    for (Index i = 0; i < rank; ++i) f.push_back(D(i, i));
    return f;
  }
};

template <typename Scalar>
SmithResult<Scalar> smith_normal_form(const DenseMat<Scalar>& M) {
  using detail::generic_abs;
  const Index r = M.rows(), c = M.cols();
  SmithResult<Scalar> out;
  out.D = M;
  out.U = detail::dense_identity<Scalar>(r);
  out.Uinv = detail::dense_identity<Scalar>(r);
  out.V = detail::dense_identity<Scalar>(c);
  out.Vinv = detail::dense_identity<Scalar>(c);
  detail::RowOps<Scalar> rop{out.D, out.U, out.Uinv};
  detail::ColOps<Scalar> cop{out.D, out.V, out.Vinv};
  DenseMat<Scalar>& A = out.D;

  Index t = 0;
  while (t < r && t < c) {
    /* pivot: smallest |entry| in the trailing block, lowest (i,j) on ties */
    Index pi = -1, pj = -1;
    for (Index i = t; i < r; ++i)
      for (Index j = t; j < c; ++j) {
        if (A(i, j) == Scalar(0)) continue;
        if (pi < 0 || generic_abs(A(i, j)) < generic_abs(A(pi, pj))) { pi = i; pj = j; }
      }
    if (pi < 0) break;
    rop.swap(t, pi);
    cop.swap(t, pj);

    for (;;) {
      bool restart = false;
      for (Index i = t + 1; i < r; ++i) {
        if (A(i, t) == Scalar(0)) continue;
        Scalar q = detail::generic_nearest_quotient(A(i, t), A(t, t));
        rop.add(i, t, Scalar(-q));
        if (A(i, t) != Scalar(0)) { rop.swap(t, i); restart = true; break; }
      }
      if (restart) continue;
      for (Index j = t + 1; j < c; ++j) {
        if (A(t, j) == Scalar(0)) continue;
        Scalar q = detail::generic_nearest_quotient(A(t, j), A(t, t));
        cop.add(j, t, Scalar(-q));
        if (A(t, j) != Scalar(0)) { cop.swap(t, j); restart = true; break; }
      }
      if (restart) continue;
      /* divisibility sweep: the pivot must divide the trailing block */
      Index bi = -1;
      for (Index i = t + 1; i < r && bi < 0; ++i)
        for (Index j = t + 1; j < c; ++j)
          if (!detail::generic_divides(A(t, t), A(i, j))) { bi = i; break; }
      if (bi < 0) break;
      rop.add(t, bi, Scalar(1));
    }
    if (A(t, t) < Scalar(0)) rop.negate(t);
    ++t;
  }
  out.rank = t;
  return out;
}

template <typename Scalar>
struct HermiteResult {
  DenseMat<Scalar> H, U, Uinv;  /* H = U*M, U unimodular, H canonical row HNF */
  std::vector<Index> pivot_cols;
  Index rank() const { return static_cast<Index>(pivot_cols.size()); }
};

template <typename Scalar>
HermiteResult<Scalar> row_hermite(const DenseMat<Scalar>& M) {
  using detail::generic_abs;
  const Index r = M.rows(), c = M.cols();
  HermiteResult<Scalar> out;
  out.H = M;
  out.U = detail::dense_identity<Scalar>(r);
  out.Uinv = detail::dense_identity<Scalar>(r);
  detail::RowOps<Scalar> rop{out.H, out.U, out.Uinv};
  DenseMat<Scalar>& H = out.H;

  Index row = 0;
  for (Index j = 0; j < c && row < r; ++j) {
    for (;;) {
      Index best = -1;
      for (Index i = row; i < r; ++i) {
        if (H(i, j) == Scalar(0)) continue;
        if (best < 0 || generic_abs(H(i, j)) < generic_abs(H(best, j))) best = i;
      }
      if (best < 0) break;
      rop.swap(row, best);
      bool clean = true;
      for (Index i = row + 1; i < r; ++i) {
        if (H(i, j) == Scalar(0)) continue;
        Scalar q = detail::generic_nearest_quotient(H(i, j), H(row, j));
        rop.add(i, row, Scalar(-q));
        if (H(i, j) != Scalar(0)) clean = false;
      }
      if (clean) {
        if (H(row, j) < Scalar(0)) rop.negate(row);
        for (Index i = 0; i < row; ++i) {
          Scalar q, rem;
          detail::generic_euclidean_divmod(H(i, j), H(row, j), q, rem);
          rop.add(i, row, Scalar(-q));
        }
        out.pivot_cols.push_back(j);
        ++row;
        break;
      }
    }
  }
  return out;
}

template <typename Scalar>
struct ColumnHermiteResult {
  DenseMat<Scalar> H, V, Vinv;  /* H = M*V, column echelon; zero columns last */
  std::vector<Index> pivot_rows;
  Index rank() const { return static_cast<Index>(pivot_rows.size()); }
};

template <typename Scalar>
ColumnHermiteResult<Scalar> column_hermite(const DenseMat<Scalar>& M) {
  HermiteResult<Scalar> t = row_hermite<Scalar>(M.transpose());
  ColumnHermiteResult<Scalar> out;
  out.H = t.H.transpose();
  out.V = t.U.transpose();
  out.Vinv = t.Uinv.transpose();
  out.pivot_rows = t.pivot_cols;
  return out;
}

template <typename Scalar>
Index lattice_rank(const DenseMat<Scalar>& M) {
  return row_hermite(M).rank();
}

/* Solve M*X = B over the integers; nullopt when no integral solution exists.
 * Mismatched heights are a caller error, not mere unsolvability. */
template <typename Scalar>
std::optional<DenseMat<Scalar>> solve(const DenseMat<Scalar>& M, const DenseMat<Scalar>& B) {
  if (M.rows() != B.rows())
    throw std::invalid_argument("solve: dimension mismatch between system and right-hand side");
  ColumnHermiteResult<Scalar> ch = column_hermite(M);
  const Index rank = ch.rank();
  DenseMat<Scalar> Y(M.cols(), B.cols());
  Y.setConstant(Scalar(0));
  for (Index b = 0; b < B.cols(); ++b) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> res = B.col(b);
    for (Index k = 0; k < rank; ++k) {
      Index pr = ch.pivot_rows[k];
      if (!detail::generic_divides(ch.H(pr, k), res(pr))) return std::nullopt;
      Scalar q = res(pr) / ch.H(pr, k);
      if (q != Scalar(0)) {
        res -= q * ch.H.col(k);
        Y(k, b) = q;
      }
    }
    for (Index i = 0; i < res.size(); ++i)
      if (res(i) != Scalar(0)) return std::nullopt;
  }
  DenseMat<Scalar> X = ch.V * Y;
  return X;
}

/* Canonical basis (column HNF) of the lattice spanned by the given columns. */
template <typename Scalar>
DenseMat<Scalar> lattice_canonical(const DenseMat<Scalar>& gens) {
  ColumnHermiteResult<Scalar> ch = column_hermite(gens);
  return ch.H.leftCols(ch.rank());
}

/* Basis of { x : M*x = 0 }, canonicalized. */
template <typename Scalar>
DenseMat<Scalar> kernel_basis(const DenseMat<Scalar>& M) {
  ColumnHermiteResult<Scalar> ch = column_hermite(M);
  DenseMat<Scalar> raw = ch.V.rightCols(M.cols() - ch.rank());
  return lattice_canonical(raw);
}

template <typename Scalar>
bool lattice_contains(const DenseMat<Scalar>& L, const DenseMat<Scalar>& vecs) {
  return solve(L, vecs).has_value();
}

/* span(A) ⊆ span(B)?  Both are column generating sets in the same ambient. */
template <typename Scalar>
bool lattice_subset(const DenseMat<Scalar>& A, const DenseMat<Scalar>& B) {
  return lattice_contains(B, A);
}

template <typename Scalar>
bool lattice_equal(const DenseMat<Scalar>& A, const DenseMat<Scalar>& B) {
  return lattice_subset(A, B) && lattice_subset(B, A);
}

template <typename Scalar>
DenseMat<Scalar> lattice_sum(const DenseMat<Scalar>& A, const DenseMat<Scalar>& B) {
  DenseMat<Scalar> both(A.rows(), A.cols() + B.cols());
  both.leftCols(A.cols()) = A;
  both.rightCols(B.cols()) = B;
  return lattice_canonical(both);
}

/* { x : P*x ∈ span(R) }, as a canonical lattice basis in the domain of P. */
template <typename Scalar>
DenseMat<Scalar> preimage_lattice(const DenseMat<Scalar>& P, const DenseMat<Scalar>& R) {
  DenseMat<Scalar> block(P.rows(), P.cols() + R.cols());
  block.leftCols(P.cols()) = P;
  block.rightCols(R.cols()) = -R;
  DenseMat<Scalar> ker = kernel_basis(block);
  DenseMat<Scalar> proj = ker.topRows(P.cols());
  return lattice_canonical(proj);
}

template <typename Scalar>
bool is_unimodular(const DenseMat<Scalar>& M) {
  if (M.rows() != M.cols()) return false;
  HermiteResult<Scalar> h = row_hermite(M);
  if (h.rank() != M.rows()) return false;
  for (Index i = 0; i < M.rows(); ++i)
    for (Index j = 0; j < M.cols(); ++j)
      if (h.H(i, j) != (i == j ? Scalar(1) : Scalar(0))) return false;
  return true;
}

/* Inverse of a unimodular matrix (row HNF reduces it to the identity). */
template <typename Scalar>
std::optional<DenseMat<Scalar>> integer_inverse(const DenseMat<Scalar>& M) {
  if (M.rows() != M.cols()) return std::nullopt;
  HermiteResult<Scalar> h = row_hermite(M);
  if (h.rank() != M.rows()) return std::nullopt;
  for (Index i = 0; i < M.rows(); ++i)
    for (Index j = 0; j < M.cols(); ++j)
      if (h.H(i, j) != (i == j ? Scalar(1) : Scalar(0))) return std::nullopt;
  return h.U;
}

}  // namespace kdescent
