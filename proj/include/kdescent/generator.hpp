#pragma once

#include <cstdint>
#include <vector>

#include "kdescent/complex.hpp"

/* Deterministic generation of random matrices, complexes, chain maps and
 * (further down the line) cubical diagrams and towers.  splitmix64 keeps
 * streams reproducible across platforms, which golden tests rely on. */

namespace kdescent {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  long long range(long long a, long long b) {  /* inclusive */
    return a + static_cast<long long>(below(static_cast<std::uint64_t>(b - a + 1)));
  }
  bool flip() { return below(2) == 1; }

 private:
  std::uint64_t state_;
};

MatrixXZ random_matrix(Rng& rng, Index rows, Index cols, long long lo, long long hi);

/* product of a few elementary row/column operations; entries stay small */
MatrixXZ random_unimodular(Rng& rng, Index n, int ops = 6);

/* direct sum of elementary pieces (a free summand or Z -k-> Z), base-changed
 * degreewise by small unimodular matrices; d∘d = 0 by construction */
ZComplex random_complex(Rng& rng, Index deg_lo, Index deg_hi, Index max_rank, long long max_entry);

/* lattice of all chain maps src -> dst, encoded as a kernel basis over the
 * stacked entries of the per-degree components */
ChainMap sample_chain_map(Rng& rng, const ZComplex& src, const ZComplex& dst, long long coeff_bound);

}  // namespace kdescent

#include "kdescent/diagram.hpp"

namespace kdescent {

struct DiagramBounds {
  Index deg_lo = -2, deg_hi = 2;
  Index max_rank = 3;
  long long max_entry = 3;
  long long twist_bound = 1;
};

/* Valid random diagrams built as poset-free sums of random pieces,
 * conjugated by a unipotent natural automorphism so the edge matrices mix.
 * Faces commute by construction. */
CubicalDiagram random_diagram(Rng& rng, const CubeIndex& cube, const DiagramBounds& b);

/* free-with-twist diagram on prescribed generating pieces (keyed by vertex) */
CubicalDiagram free_twisted_diagram(Rng& rng, const CubeIndex& cube,
                                    const std::map<std::string, ZComplex>& pieces,
                                    long long twist_bound);

/* augmented diagram whose augmented simple is acyclic iff the piece at the
 * top vertex is (free diagrams split off cube-shaped acyclic factors) */
CubicalDiagram random_augmented_diagram(Rng& rng, int n, const DiagramBounds& b, bool force_acyclic);

Bidiagram random_bidiagram(Rng& rng, const ProductIndex& idx, const DiagramBounds& b);

}  // namespace kdescent

#include "kdescent/tower.hpp"

namespace kdescent {

/* towers built by iterated extensions with sampled connecting data; the
 * resulting fibrations are degreewise split but rarely chain split, so the
 * page differentials are nonzero */
Tower random_tower(Rng& rng, int length, const DiagramBounds& b);

/* a random morphism of towers: levelwise chain maps commuting with the
 * structure maps, sampled from the solution lattice of those constraints */
TowerMap sample_tower_map(Rng& rng, const Tower& src, const Tower& dst, long long bound);

TowerDiagram random_tower_diagram(Rng& rng, const CubeIndex& cube, int length,
                                  const DiagramBounds& b);

}  // namespace kdescent
