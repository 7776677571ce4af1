#pragma once

#include <map>
#include <string>
#include <vector>

#include "kdescent/complex.hpp"
#include "kdescent/cube.hpp"

/* Cubical diagrams of complexes and the simple functor: the total complex
 * with summand X_alpha placed in degree m + |alpha| - 1, internal
 * differential twisted by (-1)^{|alpha|-1} and edge components signed by the
 * coface signs.  Augmented diagrams get their simple through the fiber of
 * the augmentation map. */

namespace kdescent {

std::string edge_key(const CubeVertex& from, const CubeVertex& to);

struct CubicalDiagram {
  CubeIndex index;
  std::map<std::string, ZComplex> vertices;
  std::map<std::string, ChainMap> edges;  /* cofaces only, keyed "from->to" */

  const ZComplex& vertex(const CubeVertex& v) const;
  const ChainMap& edge(const CubeVertex& from, const CubeVertex& to) const;
  void validate() const;
};

struct SimpleBlock {
  CubeVertex vertex;
  Index internal_degree;
  Index offset;
  Index size;
};

struct SimpleResult {
  ZComplex total;
  std::map<Index, std::vector<SimpleBlock>> layout;  /* per total degree, lex order */

  const SimpleBlock* block(Index m, const CubeVertex& v) const;
};

/* total complex of a non-augmented diagram; D∘D = 0 is checked on
 * construction */
SimpleResult simple(const CubicalDiagram& x);

CubicalDiagram restriction(const CubicalDiagram& augmented);

/* X_0 -> s(X), assembled from the weight-one edges */
ChainMap augmentation_map(const CubicalDiagram& augmented);

ZComplex simple_augmented(const CubicalDiagram& augmented);

/* the same object computed by splitting off one coordinate at a time and
 * taking vertexwise fibers */
ZComplex iterated_simple_augmented(const CubicalDiagram& augmented);

bool diagram_is_acyclic(const CubicalDiagram& augmented);

/* vertexwise chain maps forming a natural transformation over a fixed cube */
void validate_diagram_map(const CubicalDiagram& src, const CubicalDiagram& dst,
                          const std::map<std::string, ChainMap>& comps);
ChainMap simple_map(const CubicalDiagram& src, const CubicalDiagram& dst,
                    const std::map<std::string, ChainMap>& comps);

CubicalDiagram product_diagram(const CubicalDiagram& x, const CubicalDiagram& y);

/* restriction along an order-preserving coordinate inclusion: the sub-diagram
 * supported on the given positions, plus the projection of simples */
CubicalDiagram restrict_to_positions(const CubicalDiagram& x, const std::vector<int>& positions);
ChainMap face_projection(const CubicalDiagram& x, const std::vector<int>& positions);

/* diagram over a product of two cubes */
struct Bidiagram {
  ProductIndex index;
  std::map<std::string, ZComplex> vertices;            /* key "a|b" */
  std::map<std::string, ChainMap> first_edges;         /* key "a->a'|b"  */
  std::map<std::string, ChainMap> second_edges;        /* key "a|b->b'"  */

  const ZComplex& vertex(const CubeVertex& a, const CubeVertex& b) const;
  void validate() const;
};

/* iterate the simple in the two orders */
SimpleResult simple_first_outer(const Bidiagram& x);   /* s_a ( alpha -> s_b X ) */
SimpleResult simple_second_outer(const Bidiagram& x);  /* s_b ( beta -> s_a X ) */

/* the factorization comparison: a signed permutation with sign
 * (-1)^{(|a|-1)(|b|-1)}, from the first-outer to the second-outer total */
ChainMap mu_map(const Bidiagram& x);

struct AxiomCheckOptions {
  std::uint64_t seed = 1;
  int count = 200;
  int max_cube = 2;
  Index max_rank = 3;
  Index deg_lo = -2, deg_hi = 2;
  long long max_entry = 3;
};

struct AxiomReport {
  int product_checked = 0;
  int factorization_checked = 0;
  int exactness_checked = 0;
  int acyclicity_checked = 0;
  int simples_built = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

AxiomReport verify_descent_axioms(const AxiomCheckOptions& opt);

}  // namespace kdescent
