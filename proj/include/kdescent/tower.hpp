#pragma once

#include <map>
#include <vector>

#include "kdescent/diagram.hpp"

/* Towers of fibrations: finite sequences of degreewise-surjective chain maps
 * X(L) -> ... -> X(1) -> X(0) with a declared stabilization index.  Fibers
 * are kernel complexes; the associated pages carry the homotopy spectral
 * sequence of the tower.  Cubical diagrams of towers admit the diagonal
 * construction (each vertex shifted by its weight minus one) and the stage-
 * wise simple. */

namespace kdescent {

struct Tower {
  std::vector<ZComplex> stages;  /* X(0) .. X(L) */
  std::vector<ChainMap> maps;    /* maps[p-1] : X(p) -> X(p-1) */
  int stab = 0;

  int length() const { return static_cast<int>(stages.size()) - 1; }
  const ZComplex& limit() const { return stages.back(); }
  /* X(p) for arbitrary p: zero below 0, constant above L */
  ZComplex stage(int p) const;
  /* X(p) -> X(p-1) for arbitrary p >= 1 (identity above L) */
  ChainMap structure_map(int p) const;
  void validate() const;
};

Tower constant_tower(const ZComplex& c, int length);
Tower shift_tower(const Tower& t, int places);

struct TowerFiber {
  ZComplex complex;
  std::map<Index, MatrixXZ> inclusion;  /* kernel basis columns into X(p) */
};

/* kernel of X(p) -> X(p-1); at p = 0 the whole stage */
TowerFiber tower_fiber(const Tower& t, int p);

struct TowerMap {
  Tower src, dst;
  std::vector<ChainMap> levels;  /* per stage 0..L */
  void validate() const;
};

TowerMap identity_tower_map(const Tower& t);
TowerMap constant_tower_map(const ChainMap& f, int length);

struct TowerDiagram {
  CubeIndex index;
  std::map<std::string, Tower> vertices;
  std::map<std::string, TowerMap> edges;

  const Tower& vertex(const CubeVertex& v) const;
  const TowerMap& edge(const CubeVertex& from, const CubeVertex& to) const;
  void validate() const;
};

/* vertex alpha gets its tower translated by |alpha| - 1 places */
TowerDiagram d_construction(const TowerDiagram& x);

/* stage p is the simple of the stage-p cubical diagram of the diagonal
 * construction */
Tower s2_simple(const TowerDiagram& x);

/* the map of stagewise simples induced by a vertexwise family of tower maps */
TowerMap s2_simple_map(const TowerDiagram& src, const TowerDiagram& dst,
                       const std::map<std::string, TowerMap>& comps);

/* E_1^{pq} = H_{q-p}(F(p)) with the connecting differential, and E_2 as its
 * homology; presentations are kept so maps can be pushed through */
struct TowerPages {
  int p_max = 0;
  Index q_lo = 0, q_hi = -1;
  std::map<std::pair<int, Index>, Presentation> e1;      /* key (p, q) */
  std::map<std::pair<int, Index>, MatrixXZ> d1;          /* E1^{pq} -> E1^{p+1,q} */
  std::map<std::pair<int, Index>, Presentation> e2;      /* subquotient presentation */
  std::map<std::pair<int, Index>, MatrixXZ> e2_basis;    /* E2 generators inside E1 gens */

  FgAbGroup e1_group(int p, Index q) const;
  FgAbGroup e2_group(int p, Index q) const;
};

TowerPages tower_pages(const Tower& t);

bool is_e2_weak_equivalence(const TowerMap& f);

/* E_1^{*q}(s2 X) compared, as a complex of abelian groups, with the total
 * complex of the vertexwise E_1's; the comparison map is written down
 * explicitly and checked to be an isomorphism of complexes */
bool comparison_lemma_holds(const TowerDiagram& x, std::string* diagnostic = nullptr);

struct F2Verdict {
  bool e2_acyclic = false;
  bool rows_exact = false;
  bool agree() const { return e2_acyclic == rows_exact; }
};

/* the two sides of the tower criterion on an augmented square of complexes:
 * E2-acyclicity of the constant-tower s2 against degreewise short
 * exactness of 0 -> H(X) -> H(Xt) ⊕ H(Y) -> H(Yt) -> 0 */
F2Verdict f2_tower_criterion(const CubicalDiagram& square);

}  // namespace kdescent
