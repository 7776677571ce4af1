#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kdescent/error.hpp"

/* Cubical index categories: the poset of nonzero 0/1 tuples of a fixed
 * length (augmented variant admits the zero tuple), coface structure with
 * signs, and products of cubes. */

namespace kdescent {

struct CubeVertex {
  std::vector<std::uint8_t> bits;  /* length n+1, entries 0/1 */

  int weight() const {
    int w = 0;
    for (auto b : bits) w += b;
    return w;
  }
  bool is_zero() const { return weight() == 0; }
  std::string str() const {
    std::string s;
    for (auto b : bits) s += static_cast<char>('0' + b);
    return s;
  }
  static CubeVertex parse(const std::string& s);

  bool operator==(const CubeVertex& o) const { return bits == o.bits; }
  bool operator<(const CubeVertex& o) const { return bits < o.bits; }  /* lex */
  /* componentwise partial order of the poset */
  bool leq(const CubeVertex& o) const {
    if (bits.size() != o.bits.size()) return false;
    for (size_t i = 0; i < bits.size(); ++i)
      if (bits[i] > o.bits[i]) return false;
    return true;
  }
};

struct Coface {
  CubeVertex to;
  int position;
  int sign;  /* (-1)^{#{j < position : bit_j = 1}} */
};

/* All one-bit extensions of a vertex, in increasing flip position. */
std::vector<Coface> cofaces(const CubeVertex& v);

int coface_sign(const CubeVertex& v, int position);

struct CubeIndex {
  int n = 0;
  bool augmented = false;

  int tuple_length() const { return n + 1; }
  /* lexicographic enumeration; the zero tuple (augmented only) comes first */
  std::vector<CubeVertex> vertices() const;
  std::vector<CubeVertex> positive_vertices() const;  /* weight >= 1 */
  bool contains(const CubeVertex& v) const;

  bool operator==(const CubeIndex& o) const { return n == o.n && augmented == o.augmented; }
};

CubeIndex build_cube(int n, bool augmented);

/* Product of two non-augmented cubes; vertices are pairs, weights add. */
struct ProductIndex {
  CubeIndex a, b;
  std::vector<std::pair<CubeVertex, CubeVertex>> vertices() const;
};

ProductIndex cube_product(const CubeIndex& a, const CubeIndex& b);

}  // namespace kdescent
