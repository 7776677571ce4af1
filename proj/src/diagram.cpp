#include "kdescent/diagram.hpp"

#include <algorithm>

#include "kdescent/generator.hpp"

namespace kdescent {

std::string edge_key(const CubeVertex& from, const CubeVertex& to) {
  return from.str() + "->" + to.str();
}

const ZComplex& CubicalDiagram::vertex(const CubeVertex& v) const {
  auto it = vertices.find(v.str());
  if (it == vertices.end())
    throw ValidationError("vertex " + v.str(), "missing complex");
  return it->second;
}

const ChainMap& CubicalDiagram::edge(const CubeVertex& from, const CubeVertex& to) const {
  auto it = edges.find(edge_key(from, to));
  if (it == edges.end())
    throw ValidationError("edge " + edge_key(from, to), "missing chain map");
  return it->second;
}

void CubicalDiagram::validate() const {
  auto verts = index.vertices();
  if (vertices.size() != verts.size())
    throw ValidationError("diagram", "expected " + std::to_string(verts.size()) +
                                         " vertices, found " + std::to_string(vertices.size()));
  for (const auto& v : verts) vertex(v);

  for (const auto& v : verts) {
    for (const auto& cf : cofaces(v)) {
      if (!index.contains(cf.to)) continue;
      const ChainMap& e = edge(v, cf.to);
      if (!(e.src == vertex(v)) || !(e.dst == vertex(cf.to)))
        throw ValidationError("edge " + edge_key(v, cf.to), "endpoints disagree with vertex complexes");
      e.validate("edge " + edge_key(v, cf.to));
    }
  }

  /* commuting faces: both flip orders agree */
  for (const auto& v : verts) {
    auto cfs = cofaces(v);
    for (size_t a = 0; a < cfs.size(); ++a)
      for (size_t b = a + 1; b < cfs.size(); ++b) {
        CubeVertex target = v;
        target.bits[cfs[a].position] = 1;
        target.bits[cfs[b].position] = 1;
        ChainMap p1 = compose(edge(cfs[a].to, target), edge(v, cfs[a].to));
        ChainMap p2 = compose(edge(cfs[b].to, target), edge(v, cfs[b].to));
        Index lo = std::min(p1.src.lo(), p1.dst.lo());
        Index hi = std::max(p1.src.hi(), p1.dst.hi());
        for (Index m = lo; m <= hi; ++m)
          if (!equal(p1.comp(m), p2.comp(m)))
            throw ValidationError("face " + v.str() + " +{" + std::to_string(cfs[a].position) +
                                      "," + std::to_string(cfs[b].position) + "}",
                                  "face does not commute at degree " + std::to_string(m));
      }
  }
}

const SimpleBlock* SimpleResult::block(Index m, const CubeVertex& v) const {
  auto it = layout.find(m);
  if (it == layout.end()) return nullptr;
  for (const auto& b : it->second)
    if (b.vertex == v) return &b;
  return nullptr;
}

SimpleResult simple(const CubicalDiagram& x) {
  if (x.index.augmented)
    throw ValidationError("simple", "expects a non-augmented diagram");
  auto verts = x.index.vertices();

  Index m_lo = 0, m_hi = -1;
  bool any = false;
  for (const auto& v : verts) {
    const ZComplex& c = x.vertex(v);
    if (c.is_zero_complex()) continue;
    Index lo = c.lo() - v.weight() + 1, hi = c.hi() - v.weight() + 1;
    if (!any) { m_lo = lo; m_hi = hi; any = true; }
    else { m_lo = std::min(m_lo, lo); m_hi = std::max(m_hi, hi); }
  }
  SimpleResult out;
  if (!any) { out.total = ZComplex::zero(); return out; }

  std::vector<Index> ranks;
  for (Index m = m_lo; m <= m_hi; ++m) {
    Index off = 0;
    std::vector<SimpleBlock> row;
    for (const auto& v : verts) {
      Index q = m + v.weight() - 1;
      Index sz = x.vertex(v).rank(q);
      row.push_back({v, q, off, sz});
      off += sz;
    }
    out.layout[m] = std::move(row);
    ranks.push_back(off);
  }

  std::map<Index, MatrixXZ> diffs;
  for (Index m = m_lo + 1; m <= m_hi; ++m) {
    const auto& cols = out.layout[m];
    const auto& rows = out.layout[m - 1];
    MatrixXZ d = zeros(ranks[m - 1 - m_lo], ranks[m - m_lo]);
    for (const auto& cb : cols) {
      if (cb.size == 0) continue;
      const ZComplex& c = x.vertex(cb.vertex);
      int w = cb.vertex.weight();
      for (const auto& rb : rows) {
        if (rb.vertex == cb.vertex && rb.size > 0) {
          MatrixXZ blk = c.diff(cb.internal_degree);
          if (w % 2 == 0) blk = -blk; /* (-1)^{w-1} */
          d.block(rb.offset, cb.offset, rb.size, cb.size) = blk;
        }
      }
      for (const auto& cf : cofaces(cb.vertex)) {
        const SimpleBlock* rb = nullptr;
        for (const auto& r : rows)
          if (r.vertex == cf.to) { rb = &r; break; }
        if (!rb || rb->size == 0) continue;
        MatrixXZ blk = x.edge(cb.vertex, cf.to).comp(cb.internal_degree);
        if (cf.sign < 0) blk = -blk;
        d.block(rb->offset, cb.offset, rb->size, cb.size) = blk;
      }
    }
    diffs[m] = d;
  }
  out.total = ZComplex(m_lo, ranks, diffs);
  return out;
}

CubicalDiagram restriction(const CubicalDiagram& augmented) {
  if (!augmented.index.augmented)
    throw ValidationError("restriction", "expects an augmented diagram");
  CubicalDiagram r;
  r.index = CubeIndex{augmented.index.n, false};
  std::string zero_prefix(augmented.index.tuple_length(), '0');
  for (const auto& v : r.index.vertices()) r.vertices[v.str()] = augmented.vertex(v);
  for (const auto& [k, e] : augmented.edges) {
    if (k.rfind(zero_prefix + "->", 0) == 0) continue;
    r.edges[k] = e;
  }
  return r;
}

ChainMap augmentation_map(const CubicalDiagram& augmented) {
  if (!augmented.index.augmented)
    throw ValidationError("augmentation", "expects an augmented diagram");
  CubeVertex zero{std::vector<std::uint8_t>(augmented.index.tuple_length(), 0)};
  const ZComplex& base = augmented.vertex(zero);
  SimpleResult s = simple(restriction(augmented));

  ChainMap lambda{base, s.total, {}};
  for (Index m = base.lo(); m <= base.hi(); ++m) {
    if (base.rank(m) == 0 || s.total.rank(m) == 0) continue;
    MatrixXZ comp = zeros(s.total.rank(m), base.rank(m));
    auto it = s.layout.find(m);
    if (it != s.layout.end())
      for (const auto& b : it->second) {
        if (b.vertex.weight() != 1 || b.size == 0) continue;
        comp.block(b.offset, 0, b.size, base.rank(m)) = augmented.edge(zero, b.vertex).comp(m);
      }
    lambda.comps[m] = comp;
  }
  return lambda;
}

ZComplex simple_augmented(const CubicalDiagram& augmented) {
  return fiber(augmentation_map(augmented));
}

namespace {

/* fiber(f) -> fiber(f') induced by a commuting square (u on sources, v on
 * targets) */
ChainMap fiber_map(const ChainMap& f, const ChainMap& fp, const ChainMap& u, const ChainMap& v) {
  ZComplex a = fiber(f), b = fiber(fp);
  ChainMap out{a, b, {}};
  Index lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  for (Index m = lo; m <= hi; ++m) {
    if (a.rank(m) == 0 || b.rank(m) == 0) continue;
    MatrixXZ blk = zeros(b.rank(m), a.rank(m));
    blk.block(0, 0, fp.src.rank(m), f.src.rank(m)) = u.comp(m);
    blk.block(fp.src.rank(m), f.src.rank(m), fp.dst.rank(m + 1), f.dst.rank(m + 1)) = v.comp(m + 1);
    out.comps[m] = blk;
  }
  return out;
}

}  // namespace

ZComplex iterated_simple_augmented(const CubicalDiagram& augmented) {
  if (!augmented.index.augmented)
    throw ValidationError("iterated simple", "expects an augmented diagram");
  const int n = augmented.index.n;
  if (n == 0) {
    CubeVertex zero = CubeVertex::parse("0"), one = CubeVertex::parse("1");
    return fiber(augmented.edge(zero, one));
  }

  /* split off the first coordinate; recurse on the diagram of vertexwise
   * fibers */
  CubicalDiagram sub;
  sub.index = CubeIndex{n - 1, true};
  auto prepend = [](int bit, const CubeVertex& g) {
    CubeVertex v;
    v.bits.push_back(static_cast<std::uint8_t>(bit));
    v.bits.insert(v.bits.end(), g.bits.begin(), g.bits.end());
    return v;
  };
  std::map<std::string, ChainMap> fs;
  for (const auto& g : sub.index.vertices()) {
    const ChainMap& f = augmented.edge(prepend(0, g), prepend(1, g));
    fs[g.str()] = f;
    sub.vertices[g.str()] = fiber(f);
  }
  for (const auto& g : sub.index.vertices()) {
    for (const auto& cf : cofaces(g)) {
      const ChainMap& u = augmented.edge(prepend(0, g), prepend(0, cf.to));
      const ChainMap& v = augmented.edge(prepend(1, g), prepend(1, cf.to));
      sub.edges[edge_key(g, cf.to)] = fiber_map(fs[g.str()], fs[cf.to.str()], u, v);
    }
  }
  return iterated_simple_augmented(sub);
}

bool diagram_is_acyclic(const CubicalDiagram& augmented) {
  return is_acyclic_complex(simple_augmented(augmented));
}

void validate_diagram_map(const CubicalDiagram& src, const CubicalDiagram& dst,
                          const std::map<std::string, ChainMap>& comps) {
  if (!(src.index == dst.index))
    throw ValidationError("diagram map", "source and target live over different cubes");
  for (const auto& v : src.index.vertices()) {
    auto it = comps.find(v.str());
    if (it == comps.end())
      throw ValidationError("diagram map", "missing component at vertex " + v.str());
    const ChainMap& g = it->second;
    if (!(g.src == src.vertex(v)) || !(g.dst == dst.vertex(v)))
      throw ValidationError("diagram map", "component at " + v.str() + " has wrong endpoints");
    g.validate("diagram map at " + v.str());
  }
  for (const auto& v : src.index.vertices()) {
    for (const auto& cf : cofaces(v)) {
      if (!src.index.contains(cf.to)) continue;
      ChainMap p1 = compose(dst.edge(v, cf.to), comps.at(v.str()));
      ChainMap p2 = compose(comps.at(cf.to.str()), src.edge(v, cf.to));
      Index lo = std::min(p1.src.lo(), p1.dst.lo());
      Index hi = std::max(p1.src.hi(), p1.dst.hi());
      for (Index m = lo; m <= hi; ++m)
        if (!equal(p1.comp(m), p2.comp(m)))
          throw ValidationError("diagram map", "naturality fails along " + edge_key(v, cf.to) +
                                                   " at degree " + std::to_string(m));
    }
  }
}

ChainMap simple_map(const CubicalDiagram& src, const CubicalDiagram& dst,
                    const std::map<std::string, ChainMap>& comps) {
  validate_diagram_map(src, dst, comps);
  SimpleResult a = simple(src), b = simple(dst);
  ChainMap out{a.total, b.total, {}};
  Index lo = std::min(a.total.lo(), b.total.lo());
  Index hi = std::max(a.total.hi(), b.total.hi());
  for (Index m = lo; m <= hi; ++m) {
    if (a.total.rank(m) == 0 || b.total.rank(m) == 0) continue;
    MatrixXZ blk = zeros(b.total.rank(m), a.total.rank(m));
    auto it = a.layout.find(m);
    if (it != a.layout.end())
      for (const auto& cb : it->second) {
        if (cb.size == 0) continue;
        const SimpleBlock* rb = b.block(m, cb.vertex);
        if (!rb || rb->size == 0) continue;
        blk.block(rb->offset, cb.offset, rb->size, cb.size) =
            comps.at(cb.vertex.str()).comp(cb.internal_degree);
      }
    out.comps[m] = blk;
  }
  return out;
}

CubicalDiagram product_diagram(const CubicalDiagram& x, const CubicalDiagram& y) {
  if (!(x.index == y.index))
    throw ValidationError("product diagram", "factors live over different cubes");
  CubicalDiagram p;
  p.index = x.index;
  for (const auto& v : x.index.vertices())
    p.vertices[v.str()] = direct_sum(x.vertex(v), y.vertex(v));
  for (const auto& v : x.index.vertices())
    for (const auto& cf : cofaces(v)) {
      if (!x.index.contains(cf.to)) continue;
      p.edges[edge_key(v, cf.to)] = direct_sum_map(x.edge(v, cf.to), y.edge(v, cf.to));
    }
  return p;
}

CubicalDiagram restrict_to_positions(const CubicalDiagram& x, const std::vector<int>& positions) {
  for (size_t i = 0; i + 1 < positions.size(); ++i)
    if (positions[i] >= positions[i + 1])
      throw ValidationError("restriction", "positions must be strictly increasing");
  if (positions.empty())
    throw ValidationError("restriction", "positions must be nonempty");
  if (positions.front() < 0 || positions.back() >= x.index.tuple_length())
    throw ValidationError("restriction", "position out of range");
  CubicalDiagram r;
  r.index = CubeIndex{static_cast<int>(positions.size()) - 1, x.index.augmented};
  auto embed = [&](const CubeVertex& g) {
    CubeVertex v{std::vector<std::uint8_t>(x.index.tuple_length(), 0)};
    for (size_t i = 0; i < positions.size(); ++i) v.bits[positions[i]] = g.bits[i];
    return v;
  };
  for (const auto& g : r.index.vertices()) r.vertices[g.str()] = x.vertex(embed(g));
  for (const auto& g : r.index.vertices())
    for (const auto& cf : cofaces(g)) {
      if (!r.index.contains(cf.to)) continue;
      r.edges[edge_key(g, cf.to)] = x.edge(embed(g), embed(cf.to));
    }
  return r;
}

ChainMap face_projection(const CubicalDiagram& x, const std::vector<int>& positions) {
  CubicalDiagram r = restrict_to_positions(x, positions);
  SimpleResult a = simple(x), b = simple(r);
  auto embed = [&](const CubeVertex& g) {
    CubeVertex v{std::vector<std::uint8_t>(x.index.tuple_length(), 0)};
    for (size_t i = 0; i < positions.size(); ++i) v.bits[positions[i]] = g.bits[i];
    return v;
  };
  ChainMap out{a.total, b.total, {}};
  Index lo = std::min(a.total.lo(), b.total.lo());
  Index hi = std::max(a.total.hi(), b.total.hi());
  for (Index m = lo; m <= hi; ++m) {
    if (a.total.rank(m) == 0 || b.total.rank(m) == 0) continue;
    MatrixXZ blk = zeros(b.total.rank(m), a.total.rank(m));
    auto it = b.layout.find(m);
    if (it != b.layout.end())
      for (const auto& rb : it->second) {
        if (rb.size == 0) continue;
        const SimpleBlock* cb = a.block(m, embed(rb.vertex));
        if (!cb || cb->size == 0) continue;
        blk.block(rb.offset, cb->offset, rb.size, cb->size) = identity(rb.size);
      }
    out.comps[m] = blk;
  }
  return out;
}

/* ---------- bidiagrams ---------- */

namespace {
std::string pair_key(const std::string& a, const std::string& b) { return a + "|" + b; }
}  // namespace

const ZComplex& Bidiagram::vertex(const CubeVertex& a, const CubeVertex& b) const {
  auto it = vertices.find(pair_key(a.str(), b.str()));
  if (it == vertices.end())
    throw ValidationError("vertex (" + a.str() + "," + b.str() + ")", "missing complex");
  return it->second;
}

void Bidiagram::validate() const {
  auto va = index.a.vertices();
  auto vb = index.b.vertices();
  for (const auto& a : va)
    for (const auto& b : vb) vertex(a, b);

  auto first_edge = [&](const CubeVertex& a, const CubeVertex& a2, const CubeVertex& b) -> const ChainMap& {
    auto it = first_edges.find(pair_key(edge_key(a, a2), b.str()));
    if (it == first_edges.end())
      throw ValidationError("edge (" + edge_key(a, a2) + "," + b.str() + ")", "missing");
    return it->second;
  };
  auto second_edge = [&](const CubeVertex& a, const CubeVertex& b, const CubeVertex& b2) -> const ChainMap& {
    auto it = second_edges.find(pair_key(a.str(), edge_key(b, b2)));
    if (it == second_edges.end())
      throw ValidationError("edge (" + a.str() + "," + edge_key(b, b2) + ")", "missing");
    return it->second;
  };

  for (const auto& a : va)
    for (const auto& b : vb) {
      for (const auto& cf : cofaces(a)) {
        if (!index.a.contains(cf.to)) continue;
        const ChainMap& e = first_edge(a, cf.to, b);
        if (!(e.src == vertex(a, b)) || !(e.dst == vertex(cf.to, b)))
          throw ValidationError("edge (" + edge_key(a, cf.to) + "," + b.str() + ")", "wrong endpoints");
        e.validate("first-factor edge");
      }
      for (const auto& cf : cofaces(b)) {
        if (!index.b.contains(cf.to)) continue;
        const ChainMap& e = second_edge(a, b, cf.to);
        if (!(e.src == vertex(a, b)) || !(e.dst == vertex(a, cf.to)))
          throw ValidationError("edge (" + a.str() + "," + edge_key(b, cf.to) + ")", "wrong endpoints");
        e.validate("second-factor edge");
      }
      for (const auto& ca : cofaces(a)) {
        if (!index.a.contains(ca.to)) continue;
        for (const auto& cb : cofaces(b)) {
          if (!index.b.contains(cb.to)) continue;
          ChainMap p1 = compose(second_edge(ca.to, b, cb.to), first_edge(a, ca.to, b));
          ChainMap p2 = compose(first_edge(a, ca.to, cb.to), second_edge(a, b, cb.to));
          Index lo = std::min(p1.src.lo(), p1.dst.lo());
          Index hi = std::max(p1.src.hi(), p1.dst.hi());
          for (Index m = lo; m <= hi; ++m)
            if (!equal(p1.comp(m), p2.comp(m)))
              throw ValidationError("mixed square at (" + a.str() + "," + b.str() + ")",
                                    "does not commute");
        }
      }
    }
}

namespace {

struct IteratedSimple {
  SimpleResult outer;
  std::map<std::string, SimpleResult> inner; /* keyed by outer vertex */
};

IteratedSimple iterate(const Bidiagram& x, bool first_outer) {
  const CubeIndex& outer_cube = first_outer ? x.index.a : x.index.b;
  const CubeIndex& inner_cube = first_outer ? x.index.b : x.index.a;

  auto vertex_of = [&](const CubeVertex& o, const CubeVertex& i) -> const ZComplex& {
    return first_outer ? x.vertex(o, i) : x.vertex(i, o);
  };
  auto inner_edge = [&](const CubeVertex& o, const CubeVertex& i, const CubeVertex& i2) {
    return first_outer ? x.second_edges.at(pair_key(o.str(), edge_key(i, i2)))
                       : x.first_edges.at(pair_key(edge_key(i, i2), o.str()));
  };
  auto outer_edge = [&](const CubeVertex& o, const CubeVertex& o2, const CubeVertex& i) {
    return first_outer ? x.first_edges.at(pair_key(edge_key(o, o2), i.str()))
                       : x.second_edges.at(pair_key(i.str(), edge_key(o, o2)));
  };

  IteratedSimple out;
  CubicalDiagram outer_diagram;
  outer_diagram.index = outer_cube;
  std::map<std::string, CubicalDiagram> columns;
  for (const auto& o : outer_cube.vertices()) {
    CubicalDiagram col;
    col.index = inner_cube;
    for (const auto& i : inner_cube.vertices()) col.vertices[i.str()] = vertex_of(o, i);
    for (const auto& i : inner_cube.vertices())
      for (const auto& cf : cofaces(i)) {
        if (!inner_cube.contains(cf.to)) continue;
        col.edges[edge_key(i, cf.to)] = inner_edge(o, i, cf.to);
      }
    SimpleResult s = simple(col);
    out.inner[o.str()] = s;
    outer_diagram.vertices[o.str()] = s.total;
    columns[o.str()] = std::move(col);
  }
  for (const auto& o : outer_cube.vertices())
    for (const auto& cf : cofaces(o)) {
      if (!outer_cube.contains(cf.to)) continue;
      std::map<std::string, ChainMap> comps;
      for (const auto& i : inner_cube.vertices()) comps[i.str()] = outer_edge(o, cf.to, i);
      outer_diagram.edges[edge_key(o, cf.to)] =
          simple_map(columns[o.str()], columns[cf.to.str()], comps);
    }
  out.outer = simple(outer_diagram);
  return out;
}

}  // namespace

SimpleResult simple_first_outer(const Bidiagram& x) { return iterate(x, true).outer; }
SimpleResult simple_second_outer(const Bidiagram& x) { return iterate(x, false).outer; }

ChainMap mu_map(const Bidiagram& x) {
  IteratedSimple t1 = iterate(x, true);
  IteratedSimple t2 = iterate(x, false);
  ChainMap mu{t1.outer.total, t2.outer.total, {}};

  Index lo = std::min(t1.outer.total.lo(), t2.outer.total.lo());
  Index hi = std::max(t1.outer.total.hi(), t2.outer.total.hi());
  for (Index m = lo; m <= hi; ++m) {
    if (t1.outer.total.rank(m) == 0 || t2.outer.total.rank(m) == 0) continue;
    MatrixXZ blk = zeros(t2.outer.total.rank(m), t1.outer.total.rank(m));
    auto it1 = t1.outer.layout.find(m);
    if (it1 != t1.outer.layout.end())
      for (const auto& ob : it1->second) {
        if (ob.size == 0) continue;
        const SimpleResult& in1 = t1.inner.at(ob.vertex.str());
        auto iti = in1.layout.find(ob.internal_degree);
        if (iti == in1.layout.end()) continue;
        for (const auto& ib : iti->second) {
          if (ib.size == 0) continue;
          const int wa = ob.vertex.weight(), wb = ib.vertex.weight();
          const SimpleBlock* tob = t2.outer.block(m, ib.vertex);
          if (!tob) continue;
          const SimpleResult& in2 = t2.inner.at(ib.vertex.str());
          const SimpleBlock* tib = in2.block(tob->internal_degree, ob.vertex);
          if (!tib || tib->size != ib.size) continue;
          int sign = ((wa - 1) * (wb - 1)) % 2 == 0 ? 1 : -1;
          for (Index k = 0; k < ib.size; ++k)
            blk(tob->offset + tib->offset + k, ob.offset + ib.offset + k) = Integer(sign);
        }
      }
    mu.comps[m] = blk;
  }
  return mu;
}

/* ---------- axiom suite ---------- */

namespace {

bool columns_signed_permutation(const MatrixXZ& m) {
  if (m.rows() != m.cols()) return false;
  for (Index j = 0; j < m.cols(); ++j) {
    int nz = 0;
    for (Index i = 0; i < m.rows(); ++i) {
      if (m(i, j).is_zero()) continue;
      ++nz;
      if (m(i, j) != Integer(1) && m(i, j) != Integer(-1)) return false;
    }
    if (nz != 1) return false;
  }
  return true;
}

}  // namespace

AxiomReport verify_descent_axioms(const AxiomCheckOptions& opt) {
  Rng rng(opt.seed);
  AxiomReport rep;
  DiagramBounds bounds{opt.deg_lo, opt.deg_hi, opt.max_rank, opt.max_entry, 1};

  for (int iter = 0; iter < opt.count; ++iter) {
    int which = iter % 4;
    try {
      switch (which) {
        case 0: { /* product */
          int n = static_cast<int>(rng.range(1, opt.max_cube));
          CubeIndex cube{n, false};
          CubicalDiagram x = random_diagram(rng, cube, bounds);
          CubicalDiagram y = random_diagram(rng, cube, bounds);
          CubicalDiagram xy = product_diagram(x, y);
          SimpleResult sx = simple(x), sy = simple(y), sxy = simple(xy);
          rep.simples_built += 3;
          std::map<std::string, ChainMap> px, py;
          for (const auto& v : cube.vertices()) {
            px[v.str()] = sum_projection_left(x.vertex(v), y.vertex(v));
            py[v.str()] = sum_projection_right(x.vertex(v), y.vertex(v));
          }
          ChainMap mx = simple_map(xy, x, px);
          ChainMap my = simple_map(xy, y, py);
          ZComplex target = direct_sum(sx.total, sy.total);
          ChainMap stacked{sxy.total, target, {}};
          for (Index m = std::min(sxy.total.lo(), target.lo());
               m <= std::max(sxy.total.hi(), target.hi()); ++m) {
            if (sxy.total.rank(m) == 0 || target.rank(m) == 0) continue;
            MatrixXZ blk = zeros(target.rank(m), sxy.total.rank(m));
            blk.topRows(sx.total.rank(m)) = mx.comp(m);
            blk.bottomRows(sy.total.rank(m)) = my.comp(m);
            stacked.comps[m] = blk;
          }
          stacked.validate("product comparison");
          for (Index m = target.lo(); m <= target.hi(); ++m) {
            if (target.rank(m) != sxy.total.rank(m))
              throw ValidationError("product axiom", "rank mismatch at degree " + std::to_string(m));
            if (target.rank(m) > 0 && !is_unimodular(stacked.comp(m)))
              throw ValidationError("product axiom", "comparison not invertible at degree " + std::to_string(m));
          }
          ++rep.product_checked;
          break;
        }
        case 1: { /* factorization */
          int a = static_cast<int>(rng.range(0, opt.max_cube - 1));
          int b = static_cast<int>(rng.range(0, opt.max_cube - 1));
          ProductIndex idx = cube_product(CubeIndex{a, false}, CubeIndex{b, false});
          Bidiagram x = random_bidiagram(rng, idx, bounds);
          ChainMap mu = mu_map(x);
          mu.validate("factorization comparison");
          rep.simples_built += 2;
          for (Index m = mu.src.lo(); m <= mu.src.hi(); ++m) {
            if (mu.src.rank(m) != mu.dst.rank(m))
              throw ValidationError("factorization axiom", "rank mismatch at degree " + std::to_string(m));
            if (mu.src.rank(m) > 0 && !columns_signed_permutation(mu.comp(m)))
              throw ValidationError("factorization axiom",
                                    "comparison is not a signed permutation at degree " + std::to_string(m));
          }
          break;
        }
        case 2: { /* exactness */
          int n = static_cast<int>(rng.range(1, opt.max_cube));
          CubeIndex cube{n, false};
          CubicalDiagram x = random_diagram(rng, cube, bounds);
          CubicalDiagram y;
          y.index = cube;
          std::map<std::string, ChainMap> incl;
          for (const auto& v : cube.vertices()) {
            ZComplex pad = rng.flip()
                               ? cone(identity_map(random_complex(rng, opt.deg_lo, opt.deg_hi,
                                                                  opt.max_rank, opt.max_entry)))
                               : ZComplex::zero();
            y.vertices[v.str()] = direct_sum(x.vertex(v), pad);
            incl[v.str()] = sum_inclusion_left(x.vertex(v), pad);
          }
          for (const auto& v : cube.vertices())
            for (const auto& cf : cofaces(v)) {
              if (!cube.contains(cf.to)) continue;
              ZComplex pad_src = y.vertex(v);
              /* edge = x-edge on the first summand, zero on the pad */
              ChainMap e{y.vertex(v), y.vertex(cf.to), {}};
              const ChainMap& xe = x.edge(v, cf.to);
              for (Index m = std::min(e.src.lo(), e.dst.lo());
                   m <= std::max(e.src.hi(), e.dst.hi()); ++m) {
                if (e.src.rank(m) == 0 || e.dst.rank(m) == 0) continue;
                MatrixXZ blk = zeros(e.dst.rank(m), e.src.rank(m));
                blk.block(0, 0, xe.dst.rank(m), xe.src.rank(m)) = xe.comp(m);
                e.comps[m] = blk;
              }
              y.edges[edge_key(v, cf.to)] = e;
            }
          y.validate();
          ChainMap sf = simple_map(x, y, incl);
          rep.simples_built += 2;
          bool vertexwise = true;
          for (const auto& v : cube.vertices())
            if (!is_quasi_iso(incl.at(v.str()))) vertexwise = false;
          if (!vertexwise)
            throw ValidationError("exactness axiom", "constructed map is not a vertexwise quasi-isomorphism");
          if (!is_quasi_iso(sf))
            throw ValidationError("exactness axiom", "simple of a vertexwise quasi-isomorphism is not one");
          ++rep.exactness_checked;
          break;
        }
        default: { /* acyclicity criterion 4' */
          int n = static_cast<int>(rng.range(1, opt.max_cube));
          bool force = rng.flip();
          CubicalDiagram x = random_augmented_diagram(rng, n, bounds, force);
          bool acyclic = diagram_is_acyclic(x);
          bool lambda_qiso = is_quasi_iso(augmentation_map(x));
          rep.simples_built += 1;
          if (acyclic != lambda_qiso)
            throw ValidationError("acyclicity axiom",
                                  "augmented-simple verdict disagrees with the augmentation map");
          if (force && !acyclic)
            throw ValidationError("acyclicity axiom", "constructed acyclic diagram reported non-acyclic");
          ++rep.acyclicity_checked;
          break;
        }
      }
      if (which == 1) ++rep.factorization_checked;
    } catch (const std::exception& e) {
      rep.failures.push_back("iteration " + std::to_string(iter) + ": " + e.what());
    }
  }
  return rep;
}

}  // namespace kdescent
