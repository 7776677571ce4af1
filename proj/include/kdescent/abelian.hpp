#pragma once

#include <string>
#include <vector>

#include "kdescent/error.hpp"
#include "kdescent/normal_form.hpp"

/* Finitely generated abelian groups in normal form, finite presentations
 * (generators and relation lattice), and the homomorphism calculus on
 * presentations: kernels, images, exactness and isomorphism tests.  All of
 * it reduces to Smith/Hermite computations on integer matrices. */

namespace kdescent {

struct FgAbGroup {
  Index rank = 0;
  std::vector<Integer> torsion;  /* invariant factors d_1 | d_2 | ..., each >= 2 */

  bool is_trivial() const { return rank == 0 && torsion.empty(); }
  bool operator==(const FgAbGroup& o) const { return rank == o.rank && torsion == o.torsion; }
  bool operator!=(const FgAbGroup& o) const { return !(*this == o); }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string s;
    if (rank == 1) s = "Z";
    else if (rank > 1) s = "Z^" + std::to_string(rank);
    for (const Integer& d : torsion) {
      if (!s.empty()) s += " + ";
      s += "Z/" + d.to_string();
    }
    return s;
  }
};

/* Z^gens / column span of `relations`. */
struct Presentation {
  Index gens = 0;
  MatrixXZ relations;  /* gens x k */

  static Presentation free_group(Index n) { return {n, zeros(n, 0)}; }

  FgAbGroup normal_form() const {
    SmithResult<Integer> s = smith_normal_form<Integer>(relations);
    FgAbGroup g;
    g.rank = gens - s.rank;
    for (Index i = 0; i < s.rank; ++i)
      if (s.D(i, i) > 1) g.torsion.push_back(s.D(i, i));
    return g;
  }
  bool is_trivial() const { return normal_form().is_trivial(); }
};

inline FgAbGroup cokernel(const MatrixXZ& m) {
  return Presentation{m.rows(), m}.normal_form();
}

inline FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  Index nt = static_cast<Index>(a.torsion.size() + b.torsion.size());
  MatrixXZ rel = zeros(a.rank + b.rank + nt, nt);
  Index at = static_cast<Index>(a.torsion.size());
  for (Index i = 0; i < at; ++i) rel(a.rank + b.rank + i, i) = a.torsion[i];
  for (Index i = at; i < nt; ++i) rel(a.rank + b.rank + i, i) = b.torsion[i - at];
  return Presentation{a.rank + b.rank + nt, rel}.normal_form();
}

/* span(lower) ⊆ span(upper) inside a common ambient Z^n; the quotient
 * upper/lower presented on the canonical basis of upper. */
inline Presentation subquotient(const MatrixXZ& upper, const MatrixXZ& lower) {
  MatrixXZ basis = lattice_canonical(upper);
  auto coords = solve(basis, lower);
  if (!coords) throw ValidationError("subquotient", "lower lattice not contained in upper");
  return Presentation{basis.cols(), *coords};
}

inline FgAbGroup lattice_quotient(const MatrixXZ& upper, const MatrixXZ& lower) {
  return subquotient(upper, lower).normal_form();
}

/* A homomorphism of finitely presented groups, given on generators. */
struct GroupHom {
  Presentation src, dst;
  MatrixXZ map;  /* dst.gens x src.gens */
};

inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  return {f.src, g.dst, g.map * f.map};
}

inline bool well_defined(const GroupHom& h) {
  if (h.map.rows() != h.dst.gens || h.map.cols() != h.src.gens) return false;
  MatrixXZ img = h.map * h.src.relations;
  return lattice_contains(h.dst.relations, img);
}

inline bool is_zero_hom(const GroupHom& h) {
  return lattice_contains(h.dst.relations, h.map);
}

/* { x : map(x) ∈ relations } in source generator coordinates; contains the
 * source relations. */
inline MatrixXZ kernel_lattice(const GroupHom& h) {
  MatrixXZ pre = preimage_lattice(h.map, h.dst.relations);
  return lattice_sum(pre, h.src.relations);
}

inline MatrixXZ image_lattice(const GroupHom& h) {
  return lattice_sum(h.map, h.dst.relations);
}

inline bool is_surjective(const GroupHom& h) {
  return Presentation{h.dst.gens, image_lattice(h)}.is_trivial();
}

inline bool is_injective(const GroupHom& h) {
  return lattice_subset(kernel_lattice(h), h.src.relations);
}

inline bool is_isomorphism(const GroupHom& h) {
  return is_surjective(h) && is_injective(h);
}

inline FgAbGroup kernel_group(const GroupHom& h) {
  return lattice_quotient(kernel_lattice(h), h.src.relations);
}

inline FgAbGroup image_group(const GroupHom& h) {
  return lattice_quotient(image_lattice(h), h.dst.relations);
}

inline FgAbGroup cokernel_group(const GroupHom& h) {
  return Presentation{h.dst.gens, image_lattice(h)}.normal_form();
}

/* Exactness of A --f--> B --g--> C at B: g∘f = 0 and ker(g) ⊆ im(f). */
inline bool exact_at(const GroupHom& f, const GroupHom& g) {
  if (!is_zero_hom(compose(g, f))) return false;
  return lattice_subset(kernel_lattice(g), image_lattice(f));
}

}  // namespace kdescent
