#include "kdescent/cube.hpp"

namespace kdescent {

CubeVertex CubeVertex::parse(const std::string& s) {
  CubeVertex v;
  for (char c : s) {
    if (c != '0' && c != '1') throw ValidationError("vertex '" + s + "'", "bits must be 0 or 1");
    v.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (v.bits.empty()) throw ValidationError("vertex ''", "empty bitstring");
  return v;
}

int coface_sign(const CubeVertex& v, int position) {
  int ones = 0;
  for (int j = 0; j < position; ++j) ones += v.bits[j];
  return (ones % 2 == 0) ? 1 : -1;
}

std::vector<Coface> cofaces(const CubeVertex& v) {
  std::vector<Coface> out;
  for (int k = 0; k < static_cast<int>(v.bits.size()); ++k) {
    if (v.bits[k] != 0) continue;
    CubeVertex w = v;
    w.bits[k] = 1;
    out.push_back({w, k, coface_sign(v, k)});
  }
  return out;
}

std::vector<CubeVertex> CubeIndex::vertices() const {
  std::vector<CubeVertex> out;
  const int len = tuple_length();
  for (unsigned long mask = 0; mask < (1ul << len); ++mask) {
    CubeVertex v;
    v.bits.resize(len);
    /* lexicographic order on tuples = numeric order with bit 0 most significant */
    for (int i = 0; i < len; ++i)
      v.bits[i] = static_cast<std::uint8_t>((mask >> (len - 1 - i)) & 1);
    if (!augmented && v.is_zero()) continue;
    out.push_back(v);
  }
  return out;
}

std::vector<CubeVertex> CubeIndex::positive_vertices() const {
  std::vector<CubeVertex> out;
  for (const auto& v : vertices())
    if (!v.is_zero()) out.push_back(v);
  return out;
}

bool CubeIndex::contains(const CubeVertex& v) const {
  if (static_cast<int>(v.bits.size()) != tuple_length()) return false;
  if (v.is_zero() && !augmented) return false;
  return true;
}

CubeIndex build_cube(int n, bool augmented) {
  if (n < 0) throw ValidationError("cube", "dimension must be nonnegative");
  return CubeIndex{n, augmented};
}

ProductIndex cube_product(const CubeIndex& a, const CubeIndex& b) {
  if (a.augmented || b.augmented)
    throw ValidationError("cube product", "factors must be non-augmented");
  return ProductIndex{a, b};
}

std::vector<std::pair<CubeVertex, CubeVertex>> ProductIndex::vertices() const {
  std::vector<std::pair<CubeVertex, CubeVertex>> out;
  for (const auto& va : a.vertices())
    for (const auto& vb : b.vertices()) out.emplace_back(va, vb);
  return out;
}

}  // namespace kdescent
