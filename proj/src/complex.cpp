#include "kdescent/complex.hpp"

namespace kdescent {

ZComplex::ZComplex(Index lo, std::vector<Index> ranks, const std::map<Index, MatrixXZ>& diffs)
    : lo_(lo), ranks_(std::move(ranks)) {
  diffs_.resize(ranks_.size());
  for (Index i = 0; i < static_cast<Index>(ranks_.size()); ++i) {
    Index m = lo_ + i;
    auto it = diffs.find(m);
    if (it != diffs.end()) diffs_[i] = it->second;
    else diffs_[i] = zeros(rank(m - 1), rank(m));
  }
  for (const auto& [m, d] : diffs)
    if (m < lo_ || m > hi())
      if (!is_zero(d) && d.size() > 0)
        throw ValidationError("degree " + std::to_string(m), "differential outside the declared range");
  validate();
}

void ZComplex::validate() const {
  for (Index m = lo_; m <= hi(); ++m) {
    const MatrixXZ& d = diffs_[m - lo_];
    if (d.rows() != rank(m - 1) || d.cols() != rank(m))
      throw ValidationError("degree " + std::to_string(m),
                            "differential has shape " + std::to_string(d.rows()) + "x" +
                                std::to_string(d.cols()) + ", expected " +
                                std::to_string(rank(m - 1)) + "x" + std::to_string(rank(m)));
  }
  for (Index m = lo_; m < hi(); ++m) {
    MatrixXZ dd = diff(m + 1).eval();
    MatrixXZ prod = diff(m) * dd;
    if (!is_zero(prod))
      throw ValidationError("degree " + std::to_string(m + 1), "d∘d is nonzero");
  }
}

ZComplex ZComplex::single(Index degree, Index rank) {
  if (rank == 0) return zero();
  return ZComplex(degree, {rank}, {});
}

ZComplex ZComplex::two_term(Index top, const MatrixXZ& d) {
  if (d.rows() == 0 && d.cols() == 0) return zero();
  std::map<Index, MatrixXZ> diffs;
  diffs[top] = d;
  return ZComplex(top - 1, {d.rows(), d.cols()}, diffs);
}

bool ZComplex::is_zero_complex() const { return total_rank() == 0; }

Index ZComplex::total_rank() const {
  Index t = 0;
  for (Index r : ranks_) t += r;
  return t;
}

ZComplex ZComplex::trimmed() const {
  Index a = lo_, b = hi();
  while (a <= b && rank(a) == 0) ++a;
  while (b >= a && rank(b) == 0) --b;
  if (a > b) return zero();
  std::vector<Index> ranks;
  std::map<Index, MatrixXZ> diffs;
  for (Index m = a; m <= b; ++m) {
    ranks.push_back(rank(m));
    if (m > a) diffs[m] = diff(m);
  }
  return ZComplex(a, ranks, diffs);
}

bool ZComplex::operator==(const ZComplex& o) const {
  ZComplex a = trimmed(), b = o.trimmed();
  if (a.lo_ != b.lo_ || a.ranks_ != b.ranks_) return false;
  for (Index m = a.lo_; m <= a.hi(); ++m)
    if (!equal(a.diff(m), b.diff(m))) return false;
  return true;
}

void ChainMap::validate(const std::string& where) const {
  for (const auto& [m, f] : comps)
    if (f.rows() != dst.rank(m) || f.cols() != src.rank(m))
      throw ValidationError(where, "component at degree " + std::to_string(m) + " has wrong shape");
  Index lo = std::min(src.lo(), dst.lo());
  Index hi = std::max(src.hi(), dst.hi());
  for (Index m = lo; m <= hi + 1; ++m) {
    MatrixXZ lhs = comp(m - 1) * src.diff(m);
    MatrixXZ rhs = dst.diff(m) * comp(m);
    if (!equal(lhs, rhs))
      throw ValidationError(where, "does not commute with differentials at degree " + std::to_string(m));
  }
}

bool ChainMap::is_zero_map() const {
  for (const auto& [m, f] : comps)
    if (!is_zero(f)) return false;
  return true;
}

ChainMap identity_map(const ZComplex& c) {
  ChainMap f{c, c, {}};
  for (Index m = c.lo(); m <= c.hi(); ++m)
    if (c.rank(m) > 0) f.comps[m] = identity(c.rank(m));
  return f;
}

ChainMap zero_map(const ZComplex& src, const ZComplex& dst) {
  return ChainMap{src, dst, {}};
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  ChainMap h{f.src, g.dst, {}};
  Index lo = std::min(f.src.lo(), g.dst.lo());
  Index hi = std::max(f.src.hi(), g.dst.hi());
  for (Index m = lo; m <= hi; ++m) {
    if (h.dst.rank(m) == 0 || h.src.rank(m) == 0) continue;
    h.comps[m] = g.comp(m) * f.comp(m);
  }
  return h;
}

ZComplex direct_sum(const ZComplex& a, const ZComplex& b) {
  if (a.is_zero_complex()) return b;
  if (b.is_zero_complex()) return a;
  Index lo = std::min(a.lo(), b.lo());
  Index hi = std::max(a.hi(), b.hi());
  std::vector<Index> ranks;
  std::map<Index, MatrixXZ> diffs;
  for (Index m = lo; m <= hi; ++m) ranks.push_back(a.rank(m) + b.rank(m));
  for (Index m = lo + 1; m <= hi; ++m) {
    MatrixXZ d = zeros(a.rank(m - 1) + b.rank(m - 1), a.rank(m) + b.rank(m));
    d.block(0, 0, a.rank(m - 1), a.rank(m)) = a.diff(m);
    d.block(a.rank(m - 1), a.rank(m), b.rank(m - 1), b.rank(m)) = b.diff(m);
    diffs[m] = d;
  }
  return ZComplex(lo, ranks, diffs);
}

ChainMap sum_inclusion_left(const ZComplex& a, const ZComplex& b) {
  ZComplex s = direct_sum(a, b);
  ChainMap f{a, s, {}};
  for (Index m = a.lo(); m <= a.hi(); ++m) {
    if (a.rank(m) == 0) continue;
    MatrixXZ blk = zeros(s.rank(m), a.rank(m));
    blk.topRows(a.rank(m)) = identity(a.rank(m));
    f.comps[m] = blk;
  }
  return f;
}

ChainMap sum_inclusion_right(const ZComplex& a, const ZComplex& b) {
  ZComplex s = direct_sum(a, b);
  ChainMap f{b, s, {}};
  for (Index m = b.lo(); m <= b.hi(); ++m) {
    if (b.rank(m) == 0) continue;
    MatrixXZ blk = zeros(s.rank(m), b.rank(m));
    blk.bottomRows(b.rank(m)) = identity(b.rank(m));
    f.comps[m] = blk;
  }
  return f;
}

ChainMap sum_projection_left(const ZComplex& a, const ZComplex& b) {
  ZComplex s = direct_sum(a, b);
  ChainMap f{s, a, {}};
  for (Index m = a.lo(); m <= a.hi(); ++m) {
    if (a.rank(m) == 0 || s.rank(m) == 0) continue;
    MatrixXZ blk = zeros(a.rank(m), s.rank(m));
    blk.leftCols(a.rank(m)) = identity(a.rank(m));
    f.comps[m] = blk;
  }
  return f;
}

ChainMap sum_projection_right(const ZComplex& a, const ZComplex& b) {
  ZComplex s = direct_sum(a, b);
  ChainMap f{s, b, {}};
  for (Index m = b.lo(); m <= b.hi(); ++m) {
    if (b.rank(m) == 0 || s.rank(m) == 0) continue;
    MatrixXZ blk = zeros(b.rank(m), s.rank(m));
    blk.rightCols(b.rank(m)) = identity(b.rank(m));
    f.comps[m] = blk;
  }
  return f;
}

ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g) {
  ZComplex s = direct_sum(f.src, g.src);
  ZComplex t = direct_sum(f.dst, g.dst);
  ChainMap h{s, t, {}};
  Index lo = std::min(s.lo(), t.lo());
  Index hi = std::max(s.hi(), t.hi());
  for (Index m = lo; m <= hi; ++m) {
    if (s.rank(m) == 0 || t.rank(m) == 0) continue;
    MatrixXZ blk = zeros(t.rank(m), s.rank(m));
    blk.block(0, 0, f.dst.rank(m), f.src.rank(m)) = f.comp(m);
    blk.block(f.dst.rank(m), f.src.rank(m), g.dst.rank(m), g.src.rank(m)) = g.comp(m);
    h.comps[m] = blk;
  }
  return h;
}

HomologyData homology_data(const ZComplex& c, Index q) {
  MatrixXZ cycles = kernel_basis(c.diff(q).eval());
  MatrixXZ boundaries = c.diff(q + 1);
  auto rel = solve(cycles, boundaries.eval());
  if (!rel) throw ValidationError("homology", "boundaries do not lie in the cycle lattice");
  return HomologyData{cycles, Presentation{cycles.cols(), *rel}};
}

FgAbGroup homology(const ZComplex& c, Index q) {
  return homology_data(c, q).pres.normal_form();
}

std::map<Index, FgAbGroup> homology_all(const ZComplex& c) {
  std::map<Index, FgAbGroup> out;
  for (Index q = c.lo(); q <= c.hi(); ++q) {
    FgAbGroup h = homology(c, q);
    if (!h.is_trivial()) out[q] = h;
  }
  return out;
}

bool is_acyclic_complex(const ZComplex& c) { return homology_all(c).empty(); }

GroupHom induced_hom(const ChainMap& f, Index q) {
  HomologyData a = homology_data(f.src, q);
  HomologyData b = homology_data(f.dst, q);
  MatrixXZ mapped = f.comp(q) * a.cycles;
  auto coords = solve(b.cycles, mapped);
  if (!coords) throw ValidationError("induced map", "image of a cycle is not a cycle");
  return GroupHom{a.pres, b.pres, *coords};
}

ZComplex cone(const ChainMap& f) {
  const ZComplex &A = f.src, &B = f.dst;
  if (A.is_zero_complex() && B.is_zero_complex()) return ZComplex::zero();
  Index lo = std::min(A.lo() + 1, B.lo());
  Index hi = std::max(A.hi() + 1, B.hi());
  std::vector<Index> ranks;
  std::map<Index, MatrixXZ> diffs;
  for (Index m = lo; m <= hi; ++m) ranks.push_back(A.rank(m - 1) + B.rank(m));
  for (Index m = lo + 1; m <= hi; ++m) {
    Index ra = A.rank(m - 2), rb = B.rank(m - 1);
    Index ca = A.rank(m - 1), cb = B.rank(m);
    MatrixXZ d = zeros(ra + rb, ca + cb);
    d.block(0, 0, ra, ca) = -A.diff(m - 1);
    d.block(ra, 0, rb, ca) = -f.comp(m - 1);
    d.block(ra, ca, rb, cb) = B.diff(m);
    diffs[m] = d;
  }
  return ZComplex(lo, ranks, diffs);
}

ZComplex fiber(const ChainMap& f) {
  const ZComplex &A = f.src, &B = f.dst;
  if (A.is_zero_complex() && B.is_zero_complex()) return ZComplex::zero();
  Index lo = std::min(A.lo(), B.lo() - 1);
  Index hi = std::max(A.hi(), B.hi() - 1);
  std::vector<Index> ranks;
  std::map<Index, MatrixXZ> diffs;
  for (Index m = lo; m <= hi; ++m) ranks.push_back(A.rank(m) + B.rank(m + 1));
  for (Index m = lo + 1; m <= hi; ++m) {
    Index ra = A.rank(m - 1), rb = B.rank(m);
    Index ca = A.rank(m), cb = B.rank(m + 1);
    MatrixXZ d = zeros(ra + rb, ca + cb);
    d.block(0, 0, ra, ca) = A.diff(m);
    d.block(ra, 0, rb, ca) = f.comp(m);
    d.block(ra, ca, rb, cb) = -B.diff(m + 1);
    diffs[m] = d;
  }
  return ZComplex(lo, ranks, diffs);
}

ChainMap fiber_projection(const ChainMap& f) {
  ZComplex fib = fiber(f);
  const ZComplex& A = f.src;
  ChainMap p{fib, A, {}};
  for (Index m = A.lo(); m <= A.hi(); ++m) {
    if (A.rank(m) == 0 || fib.rank(m) == 0) continue;
    MatrixXZ blk = zeros(A.rank(m), fib.rank(m));
    blk.leftCols(A.rank(m)) = identity(A.rank(m));
    p.comps[m] = blk;
  }
  return p;
}

ChainMap fiber_inclusion(const ChainMap& f) {
  ZComplex fib = fiber(f);
  ZComplex lb = loop(f.dst);
  ChainMap i{lb, fib, {}};
  for (Index m = lb.lo(); m <= lb.hi(); ++m) {
    if (lb.rank(m) == 0 || fib.rank(m) == 0) continue;
    MatrixXZ blk = zeros(fib.rank(m), lb.rank(m));
    blk.bottomRows(lb.rank(m)) = identity(lb.rank(m));
    i.comps[m] = blk;
  }
  return i;
}

ZComplex loop(const ZComplex& c) {
  if (c.is_zero_complex()) return ZComplex::zero();
  std::vector<Index> ranks;
  std::map<Index, MatrixXZ> diffs;
  Index lo = c.lo() - 1, hi = c.hi() - 1;
  for (Index m = lo; m <= hi; ++m) ranks.push_back(c.rank(m + 1));
  for (Index m = lo + 1; m <= hi; ++m) diffs[m] = (-c.diff(m + 1)).eval();
  return ZComplex(lo, ranks, diffs);
}

ZComplex suspend(const ZComplex& c) {
  if (c.is_zero_complex()) return ZComplex::zero();
  std::vector<Index> ranks;
  std::map<Index, MatrixXZ> diffs;
  Index lo = c.lo() + 1, hi = c.hi() + 1;
  for (Index m = lo; m <= hi; ++m) ranks.push_back(c.rank(m - 1));
  for (Index m = lo + 1; m <= hi; ++m) diffs[m] = (-c.diff(m - 1)).eval();
  return ZComplex(lo, ranks, diffs);
}

bool is_quasi_iso(const ChainMap& f) { return is_acyclic_complex(cone(f)); }

}  // namespace kdescent
