#pragma once

#include <map>
#include <vector>

#include "kdescent/abelian.hpp"
#include "kdescent/error.hpp"

/* Bounded chain complexes of finitely generated free abelian groups with
 * integer differentials, chain maps, homology, cones, fibers and loops.
 * Homological indexing: d_m maps degree m to degree m-1. */

namespace kdescent {

class ZComplex {
 public:
  ZComplex() = default;  /* the zero complex */
  ZComplex(Index lo, std::vector<Index> ranks, const std::map<Index, MatrixXZ>& diffs);

  static ZComplex zero() { return ZComplex(); }
  static ZComplex single(Index degree, Index rank);
  /* [Z^cols -> Z^rows] in degrees top, top-1 */
  static ZComplex two_term(Index top, const MatrixXZ& d);

  Index lo() const { return lo_; }
  Index hi() const { return lo_ + static_cast<Index>(ranks_.size()) - 1; }
  bool is_zero_complex() const;

  Index rank(Index m) const {
    if (m < lo_ || m > hi()) return 0;
    return ranks_[m - lo_];
  }
  Index total_rank() const;

  /* d_m : C_m -> C_{m-1}, sized rank(m-1) x rank(m); zero blocks outside */
  MatrixXZ diff(Index m) const {
    if (m <= lo_ || m > hi()) return zeros(rank(m - 1), rank(m));
    return diffs_[m - lo_];
  }

  ZComplex trimmed() const;
  bool operator==(const ZComplex& o) const;
  bool operator!=(const ZComplex& o) const { return !(*this == o); }

 private:
  Index lo_ = 0;
  std::vector<Index> ranks_;
  std::vector<MatrixXZ> diffs_;  /* diffs_[i] = d_{lo_+i}; entry 0 has zero rows */
  void validate() const;
};

struct ChainMap {
  ZComplex src, dst;
  std::map<Index, MatrixXZ> comps;

  MatrixXZ comp(Index m) const {
    auto it = comps.find(m);
    if (it != comps.end()) return it->second;
    return zeros(dst.rank(m), src.rank(m));
  }
  void validate(const std::string& where = "chain map") const;
  bool is_zero_map() const;
};

ChainMap identity_map(const ZComplex& c);
ChainMap zero_map(const ZComplex& src, const ZComplex& dst);
ChainMap compose(const ChainMap& g, const ChainMap& f);

ZComplex direct_sum(const ZComplex& a, const ZComplex& b);
ChainMap sum_inclusion_left(const ZComplex& a, const ZComplex& b);
ChainMap sum_inclusion_right(const ZComplex& a, const ZComplex& b);
ChainMap sum_projection_left(const ZComplex& a, const ZComplex& b);
ChainMap sum_projection_right(const ZComplex& a, const ZComplex& b);
ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g);

struct HomologyData {
  MatrixXZ cycles;   /* columns: canonical basis of ker d_q in Z^{rank q} */
  Presentation pres; /* gens = cycle basis, relations = boundaries in that basis */
};

HomologyData homology_data(const ZComplex& c, Index q);
FgAbGroup homology(const ZComplex& c, Index q);
std::map<Index, FgAbGroup> homology_all(const ZComplex& c);
bool is_acyclic_complex(const ZComplex& c);

/* map induced on H_q by a chain map, as a morphism of presentations */
GroupHom induced_hom(const ChainMap& f, Index q);

/* cone(f)_m = A_{m-1} ⊕ B_m, D(a,b) = (-d a, d b - f a); acyclic iff f is a
 * quasi-isomorphism */
ZComplex cone(const ChainMap& f);

/* fiber(f)_m = A_m ⊕ B_{m+1}, D(a,b) = (d a, f a - d b) */
ZComplex fiber(const ChainMap& f);
ChainMap fiber_projection(const ChainMap& f);   /* fiber(f) -> A */
ChainMap fiber_inclusion(const ChainMap& f);    /* loop(B) -> fiber(f) */

/* loop(C)_m = C_{m+1} with negated differential, so fiber(0 -> B) = loop(B) */
ZComplex loop(const ZComplex& c);

/* inverse shift: suspend(loop(C)) == C */
ZComplex suspend(const ZComplex& c);

bool is_quasi_iso(const ChainMap& f);

}  // namespace kdescent
