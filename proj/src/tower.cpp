#include "kdescent/tower.hpp"

#include <algorithm>

namespace kdescent {

ZComplex Tower::stage(int p) const {
  if (p < 0) return ZComplex::zero();
  if (p > length()) return stages.back();
  return stages[p];
}

ChainMap Tower::structure_map(int p) const {
  if (p <= 0) return zero_map(stage(p), stage(p - 1));
  if (p > length()) return identity_map(limit());
  return maps[p - 1];
}

void Tower::validate() const {
  if (stages.empty()) throw ValidationError("tower", "no stages");
  if (static_cast<int>(maps.size()) != length())
    throw ValidationError("tower", "expected " + std::to_string(length()) + " structure maps");
  if (stab < 0 || stab > std::max(0, length()))
    throw ValidationError("tower", "stabilization index out of range");
  for (int p = 1; p <= length(); ++p) {
    const ChainMap& f = maps[p - 1];
    if (!(f.src == stages[p]) || !(f.dst == stages[p - 1]))
      throw ValidationError("tower stage " + std::to_string(p), "structure map endpoints disagree");
    f.validate("tower stage " + std::to_string(p));
    for (Index m = f.dst.lo(); m <= f.dst.hi(); ++m) {
      if (f.dst.rank(m) == 0) continue;
      if (!Presentation{f.dst.rank(m), f.comp(m)}.is_trivial())
        throw ValidationError("tower stage " + std::to_string(p),
                              "structure map not surjective at degree " + std::to_string(m));
    }
    if (p > stab) {
      if (!(stages[p] == stages[p - 1]))
        throw ValidationError("tower stage " + std::to_string(p), "stages beyond stab must agree");
      ChainMap id = identity_map(stages[p]);
      for (Index m = stages[p].lo(); m <= stages[p].hi(); ++m)
        if (!equal(f.comp(m), id.comp(m)))
          throw ValidationError("tower stage " + std::to_string(p),
                                "structure map beyond stab is not the identity");
    }
  }
}

Tower constant_tower(const ZComplex& c, int length) {
  Tower t;
  for (int p = 0; p <= length; ++p) t.stages.push_back(c);
  for (int p = 1; p <= length; ++p) t.maps.push_back(identity_map(c));
  t.stab = 0;
  return t;
}

Tower shift_tower(const Tower& t, int places) {
  if (places < 0) throw ValidationError("tower shift", "places must be nonnegative");
  if (places == 0) return t;
  Tower s;
  int len = t.length() + places;
  for (int p = 0; p <= len; ++p) s.stages.push_back(t.stage(p - places));
  for (int p = 1; p <= len; ++p) {
    if (p <= places)
      s.maps.push_back(zero_map(s.stages[p], s.stages[p - 1]));
    else
      s.maps.push_back(t.structure_map(p - places));
  }
  s.stab = std::min(len, t.stab + places);
  return s;
}

namespace {

Tower extend_tower(const Tower& t, int new_length) {
  if (new_length <= t.length()) return t;
  Tower s = t;
  for (int p = t.length() + 1; p <= new_length; ++p) {
    s.stages.push_back(t.limit());
    s.maps.push_back(identity_map(t.limit()));
  }
  return s;
}

}  // namespace

TowerFiber tower_fiber(const Tower& t, int p) {
  ZComplex x = t.stage(p);
  if (p <= 0) {
    TowerFiber f;
    f.complex = p == 0 ? x : ZComplex::zero();
    for (Index m = f.complex.lo(); m <= f.complex.hi(); ++m)
      f.inclusion[m] = identity(f.complex.rank(m));
    return f;
  }
  ChainMap pi = t.structure_map(p);
  TowerFiber f;
  std::vector<Index> ranks;
  std::map<Index, MatrixXZ> diffs;
  Index lo = x.lo(), hi = x.hi();
  if (x.is_zero_complex()) {
    f.complex = ZComplex::zero();
    return f;
  }
  std::map<Index, MatrixXZ> kernels;
  for (Index m = lo; m <= hi; ++m) kernels[m] = kernel_basis(pi.comp(m).eval());
  for (Index m = lo; m <= hi; ++m) ranks.push_back(kernels[m].cols());
  for (Index m = lo + 1; m <= hi; ++m) {
    MatrixXZ mapped = x.diff(m) * kernels[m];
    auto coords = solve(kernels[m - 1], mapped);
    if (!coords)
      throw ValidationError("tower fiber", "differential does not preserve the kernel");
    diffs[m] = *coords;
  }
  f.complex = ZComplex(lo, ranks, diffs);
  for (Index m = lo; m <= hi; ++m) f.inclusion[m] = kernels[m];
  return f;
}

void TowerMap::validate() const {
  if (src.length() != dst.length())
    throw ValidationError("tower map", "towers have different lengths");
  if (static_cast<int>(levels.size()) != src.length() + 1)
    throw ValidationError("tower map", "one level per stage expected");
  for (int p = 0; p <= src.length(); ++p) {
    const ChainMap& f = levels[p];
    if (!(f.src == src.stages[p]) || !(f.dst == dst.stages[p]))
      throw ValidationError("tower map level " + std::to_string(p), "endpoints disagree");
    f.validate("tower map level " + std::to_string(p));
  }
  for (int p = 1; p <= src.length(); ++p) {
    ChainMap a = compose(dst.structure_map(p), levels[p]);
    ChainMap b = compose(levels[p - 1], src.structure_map(p));
    Index lo = std::min(a.src.lo(), a.dst.lo()), hi = std::max(a.src.hi(), a.dst.hi());
    for (Index m = lo; m <= hi; ++m)
      if (!equal(a.comp(m), b.comp(m)))
        throw ValidationError("tower map level " + std::to_string(p),
                              "does not commute with structure maps");
  }
}

TowerMap identity_tower_map(const Tower& t) {
  TowerMap f{t, t, {}};
  for (int p = 0; p <= t.length(); ++p) f.levels.push_back(identity_map(t.stages[p]));
  return f;
}

TowerMap constant_tower_map(const ChainMap& f, int length) {
  TowerMap g{constant_tower(f.src, length), constant_tower(f.dst, length), {}};
  for (int p = 0; p <= length; ++p) g.levels.push_back(f);
  return g;
}

const Tower& TowerDiagram::vertex(const CubeVertex& v) const {
  auto it = vertices.find(v.str());
  if (it == vertices.end()) throw ValidationError("vertex " + v.str(), "missing tower");
  return it->second;
}

const TowerMap& TowerDiagram::edge(const CubeVertex& from, const CubeVertex& to) const {
  auto it = edges.find(edge_key(from, to));
  if (it == edges.end()) throw ValidationError("edge " + edge_key(from, to), "missing tower map");
  return it->second;
}

void TowerDiagram::validate() const {
  for (const auto& v : index.vertices()) {
    vertex(v).validate();
    for (const auto& cf : cofaces(v)) {
      if (!index.contains(cf.to)) continue;
      edge(v, cf.to).validate();
    }
  }
  for (const auto& v : index.vertices()) {
    auto cfs = cofaces(v);
    for (size_t a = 0; a < cfs.size(); ++a)
      for (size_t b = a + 1; b < cfs.size(); ++b) {
        CubeVertex target = v;
        target.bits[cfs[a].position] = 1;
        target.bits[cfs[b].position] = 1;
        if (!index.contains(target)) continue;
        for (int p = 0; p <= vertex(v).length(); ++p) {
          ChainMap p1 = compose(edge(cfs[a].to, target).levels[p], edge(v, cfs[a].to).levels[p]);
          ChainMap p2 = compose(edge(cfs[b].to, target).levels[p], edge(v, cfs[b].to).levels[p]);
          Index lo = std::min(p1.src.lo(), p1.dst.lo()), hi = std::max(p1.src.hi(), p1.dst.hi());
          for (Index m = lo; m <= hi; ++m)
            if (!equal(p1.comp(m), p2.comp(m)))
              throw ValidationError("tower face at " + v.str(), "does not commute");
        }
      }
  }
}

namespace {

int common_stage_count(const TowerDiagram& x) {
  int len = 0;
  for (const auto& v : x.index.vertices())
    len = std::max(len, x.vertex(v).length() + v.weight() - 1);
  return len;
}

ChainMap clamped_level(const TowerMap& e, int p) {
  if (p < 0) return zero_map(ZComplex::zero(), ZComplex::zero());
  if (p > e.src.length()) return e.levels.back();
  return e.levels[p];
}

}  // namespace

TowerDiagram d_construction(const TowerDiagram& x) {
  const int len = common_stage_count(x);
  TowerDiagram d;
  d.index = x.index;
  for (const auto& v : x.index.vertices())
    d.vertices[v.str()] = extend_tower(shift_tower(x.vertex(v), v.weight() - 1), len);
  for (const auto& v : x.index.vertices())
    for (const auto& cf : cofaces(v)) {
      if (!x.index.contains(cf.to)) continue;
      const TowerMap& e = x.edge(v, cf.to);
      const Tower& src = d.vertices[v.str()];
      const Tower& dst = d.vertices[cf.to.str()];
      TowerMap de{src, dst, {}};
      int wa = v.weight();
      for (int p = 0; p <= len; ++p) {
        int k = p - wa + 1; /* source stage; the target sits one lower */
        if (k < 0) {
          de.levels.push_back(zero_map(src.stage(p), dst.stage(p)));
        } else {
          ChainMap lvl = compose(x.vertex(cf.to).structure_map(k), clamped_level(e, k));
          de.levels.push_back(ChainMap{src.stage(p), dst.stage(p), lvl.comps});
        }
      }
      d.edges[edge_key(v, cf.to)] = de;
    }
  return d;
}

namespace {

struct S2Data {
  Tower tower;
  TowerDiagram diagonal;
  std::map<int, SimpleResult> stage_simple;
  std::map<int, CubicalDiagram> stage_diagram;
};

S2Data s2_simple_data(const TowerDiagram& x) {
  S2Data out;
  out.diagonal = d_construction(x);
  const TowerDiagram& d = out.diagonal;
  int len = 0;
  for (const auto& v : d.index.vertices()) len = std::max(len, d.vertex(v).length());

  for (int p = 0; p <= len; ++p) {
    CubicalDiagram stage;
    stage.index = d.index;
    for (const auto& v : d.index.vertices()) stage.vertices[v.str()] = d.vertex(v).stage(p);
    for (const auto& v : d.index.vertices())
      for (const auto& cf : cofaces(v)) {
        if (!d.index.contains(cf.to)) continue;
        stage.edges[edge_key(v, cf.to)] = d.edge(v, cf.to).levels[p];
      }
    SimpleResult s = simple(stage);
    out.tower.stages.push_back(s.total);
    out.stage_simple[p] = std::move(s);
    out.stage_diagram[p] = std::move(stage);
  }
  for (int p = 1; p <= len; ++p) {
    std::map<std::string, ChainMap> comps;
    for (const auto& v : d.index.vertices()) comps[v.str()] = d.vertex(v).structure_map(p);
    out.tower.maps.push_back(simple_map(out.stage_diagram[p], out.stage_diagram[p - 1], comps));
  }
  int stab = 0;
  for (const auto& v : x.index.vertices())
    stab = std::max(stab, x.vertex(v).stab + v.weight() - 1);
  out.tower.stab = std::min(stab, std::max(0, len));
  return out;
}

}  // namespace

Tower s2_simple(const TowerDiagram& x) { return s2_simple_data(x).tower; }

TowerMap s2_simple_map(const TowerDiagram& src, const TowerDiagram& dst,
                       const std::map<std::string, TowerMap>& comps) {
  if (!(src.index == dst.index))
    throw ValidationError("s2 map", "source and target live over different cubes");
  S2Data a = s2_simple_data(src);
  S2Data b = s2_simple_data(dst);
  if (a.tower.length() != b.tower.length())
    throw ValidationError("s2 map", "stagewise simples have different lengths");
  TowerMap out{a.tower, b.tower, {}};
  for (int p = 0; p <= a.tower.length(); ++p) {
    std::map<std::string, ChainMap> stage_comps;
    for (const auto& v : src.index.vertices()) {
      const TowerMap& f = comps.at(v.str());
      int k = p - v.weight() + 1; /* stage index after the diagonal shift */
      ChainMap lvl = k < 0 ? zero_map(ZComplex::zero(), ZComplex::zero()) : clamped_level(f, k);
      stage_comps[v.str()] = ChainMap{a.stage_diagram[p].vertices.at(v.str()),
                                      b.stage_diagram[p].vertices.at(v.str()), lvl.comps};
    }
    out.levels.push_back(simple_map(a.stage_diagram[p], b.stage_diagram[p], stage_comps));
  }
  out.validate();
  return out;
}

FgAbGroup TowerPages::e1_group(int p, Index q) const {
  auto it = e1.find({p, q});
  return it == e1.end() ? FgAbGroup{} : it->second.normal_form();
}

FgAbGroup TowerPages::e2_group(int p, Index q) const {
  auto it = e2.find({p, q});
  return it == e2.end() ? FgAbGroup{} : it->second.normal_form();
}

namespace {

struct TowerE1Data {
  std::map<int, TowerFiber> fibers;
  std::map<std::pair<int, Index>, HomologyData> fib_homology; /* (p, chain degree) */
};

TowerE1Data tower_e1_data(const Tower& t) {
  TowerE1Data out;
  for (int p = 0; p <= t.stab; ++p) {
    TowerFiber f = tower_fiber(t, p);
    for (Index m = f.complex.lo(); m <= f.complex.hi(); ++m)
      out.fib_homology[{p, m}] = homology_data(f.complex, m);
    out.fibers[p] = std::move(f);
  }
  return out;
}

}  // namespace

TowerPages tower_pages(const Tower& t) {
  t.validate();
  TowerE1Data data = tower_e1_data(t);
  TowerPages out;
  out.p_max = t.stab;

  bool any = false;
  for (const auto& [key, h] : data.fib_homology) {
    auto [p, m] = key;
    Index q = m + p;
    if (h.pres.gens == 0) continue;
    out.e1[{p, q}] = h.pres;
    if (!any) { out.q_lo = q; out.q_hi = q; any = true; }
    else { out.q_lo = std::min(out.q_lo, q); out.q_hi = std::max(out.q_hi, q); }
  }

  /* d1: lift a fiber cycle one stage up, take its boundary in the next fiber */
  for (const auto& [key, pres] : out.e1) {
    auto [p, q] = key;
    Index m = q - p;
    auto tgt = out.e1.find({p + 1, q});
    auto htgt_it = data.fib_homology.find({p + 1, m - 1});
    if (tgt == out.e1.end() || htgt_it == data.fib_homology.end()) continue;
    const HomologyData& hsrc = data.fib_homology.at({p, m});
    const TowerFiber& fsrc = data.fibers.at(p);
    const TowerFiber& ftgt = data.fibers.at(p + 1);
    const HomologyData& htgt = htgt_it->second;

    MatrixXZ ambient = fsrc.inclusion.count(m)
                           ? MatrixXZ(fsrc.inclusion.at(m) * hsrc.cycles)
                           : zeros(t.stage(p).rank(m), hsrc.cycles.cols());
    auto lift = solve(t.structure_map(p + 1).comp(m).eval(), ambient);
    if (!lift) throw ValidationError("tower pages", "failed to lift through a fibration");
    MatrixXZ boundary = t.stage(p + 1).diff(m) * *lift;
    MatrixXZ incl = ftgt.inclusion.count(m - 1) ? ftgt.inclusion.at(m - 1)
                                                : zeros(t.stage(p + 1).rank(m - 1), 0);
    auto fib_coords = solve(incl, boundary);
    if (!fib_coords) throw ValidationError("tower pages", "boundary misses the next fiber");
    auto cls = solve(htgt.cycles, *fib_coords);
    if (!cls) throw ValidationError("tower pages", "boundary of a lift is not a cycle");
    out.d1[{p, q}] = *cls;
  }

  /* e2 = homology of (e1, d1) at presentation level */
  for (const auto& [key, pres] : out.e1) {
    auto [p, q] = key;
    MatrixXZ ker;
    auto dit = out.d1.find({p, q});
    if (dit == out.d1.end()) {
      ker = identity(pres.gens);
    } else {
      const Presentation& tgt = out.e1.at({p + 1, q});
      ker = preimage_lattice(dit->second, tgt.relations);
    }
    ker = lattice_sum(ker, pres.relations);
    MatrixXZ deno = pres.relations;
    auto din = out.d1.find({p - 1, q});
    if (din != out.d1.end()) deno = lattice_sum(deno, din->second);
    auto rel = solve(ker, deno);
    if (!rel) throw ValidationError("tower pages", "image of d1 escapes the kernel of d1");
    out.e2[{p, q}] = Presentation{ker.cols(), *rel};
    out.e2_basis[{p, q}] = ker;
  }
  return out;
}

namespace {

ChainMap induced_fiber_map(const TowerFiber& a, const TowerFiber& b, const ChainMap& level) {
  ChainMap f{a.complex, b.complex, {}};
  for (Index m = a.complex.lo(); m <= a.complex.hi(); ++m) {
    if (a.complex.rank(m) == 0 || b.complex.rank(m) == 0) continue;
    MatrixXZ mapped = level.comp(m) * a.inclusion.at(m);
    auto coords = solve(b.inclusion.at(m), mapped);
    if (!coords) throw ValidationError("tower map", "does not preserve fibers");
    f.comps[m] = *coords;
  }
  return f;
}

}  // namespace

bool is_e2_weak_equivalence(const TowerMap& f) {
  f.validate();
  TowerPages ps = tower_pages(f.src);
  TowerPages pd = tower_pages(f.dst);
  TowerE1Data ds = tower_e1_data(f.src);
  TowerE1Data dd = tower_e1_data(f.dst);

  int p_max = std::max(ps.p_max, pd.p_max);
  Index q_lo = std::min(ps.q_lo, pd.q_lo), q_hi = std::max(ps.q_hi, pd.q_hi);
  for (int p = 0; p <= p_max; ++p)
    for (Index q = q_lo; q <= q_hi; ++q) {
      FgAbGroup gs = ps.e2_group(p, q);
      FgAbGroup gd = pd.e2_group(p, q);
      if (gs.is_trivial() && gd.is_trivial()) continue;
      if (gs.is_trivial() != gd.is_trivial()) return false;

      Index m = q - p;
      const HomologyData& hs = ds.fib_homology.at({p, m});
      const HomologyData& hd = dd.fib_homology.at({p, m});
      ChainMap fib = induced_fiber_map(ds.fibers.at(p), dd.fibers.at(p),
                                       p <= f.src.length() ? f.levels[p] : f.levels.back());
      MatrixXZ mapped = fib.comp(m) * hs.cycles;
      auto e1mat = solve(hd.cycles, mapped);
      if (!e1mat) throw ValidationError("e2 comparison", "image of a cycle is not a cycle");

      MatrixXZ src_basis = ps.e2_basis.at({p, q});
      MatrixXZ dst_basis = pd.e2_basis.at({p, q});
      auto coords = solve(dst_basis, MatrixXZ(*e1mat * src_basis));
      if (!coords) return false; /* image leaves the kernel of d1 */
      GroupHom h{ps.e2.at({p, q}), pd.e2.at({p, q}), *coords};
      if (!well_defined(h) || !is_isomorphism(h)) return false;
    }
  return true;
}

bool comparison_lemma_holds(const TowerDiagram& x, std::string* diagnostic) {
  x.validate();
  S2Data s2 = s2_simple_data(x);
  TowerPages lhs = tower_pages(s2.tower);
  TowerE1Data lhs_data = tower_e1_data(s2.tower);

  auto verts = x.index.vertices();
  std::map<std::string, TowerPages> vp;
  std::map<std::string, TowerE1Data> vd;
  for (const auto& v : verts) {
    vp[v.str()] = tower_pages(x.vertex(v));
    vd[v.str()] = tower_e1_data(x.vertex(v));
  }

  auto fail = [&](const std::string& why) {
    if (diagnostic) *diagnostic = why;
    return false;
  };

  int p_hi = lhs.p_max;
  for (const auto& v : verts) p_hi = std::max(p_hi, vp[v.str()].p_max + v.weight() - 1);
  Index q_lo = lhs.q_lo, q_hi = lhs.q_hi;
  for (const auto& v : verts) {
    if (vp[v.str()].e1.empty()) continue;
    q_lo = std::min(q_lo, vp[v.str()].q_lo);
    q_hi = std::max(q_hi, vp[v.str()].q_hi);
  }

  struct RhsEntry {
    Presentation pres;
    std::vector<std::pair<std::string, Index>> blocks; /* (vertex, offset) */
  };
  std::map<std::pair<int, Index>, RhsEntry> rhs;

  for (int P = 0; P <= p_hi; ++P)
    for (Index q = q_lo; q <= q_hi; ++q) {
      Index gens = 0;
      std::vector<std::pair<std::string, Index>> blocks;
      std::vector<const Presentation*> parts;
      for (const auto& v : verts) {
        int r = P + 1 - v.weight();
        if (r < 0) continue;
        auto it = vp[v.str()].e1.find({r, q});
        if (it == vp[v.str()].e1.end()) continue;
        blocks.push_back({v.str(), gens});
        parts.push_back(&it->second);
        gens += it->second.gens;
      }
      if (gens == 0) continue;
      Index rel_cols = 0;
      for (auto* pp : parts) rel_cols += pp->relations.cols();
      MatrixXZ rel = zeros(gens, rel_cols);
      Index go = 0, co = 0;
      for (auto* pp : parts) {
        rel.block(go, co, pp->gens, pp->relations.cols()) = pp->relations;
        go += pp->gens;
        co += pp->relations.cols();
      }
      rhs[{P, q}] = RhsEntry{Presentation{gens, rel}, blocks};
    }

  auto rhs_d = [&](int P, Index q) -> MatrixXZ {
    const RhsEntry& src = rhs.at({P, q});
    const RhsEntry& dst = rhs.at({P + 1, q});
    MatrixXZ d = zeros(dst.pres.gens, src.pres.gens);
    auto dst_offset = [&](const std::string& key) -> Index {
      for (const auto& [k, off] : dst.blocks)
        if (k == key) return off;
      return -1;
    };
    for (const auto& [key, off] : src.blocks) {
      CubeVertex v = CubeVertex::parse(key);
      int r = P + 1 - v.weight();
      const TowerPages& pg = vp[key];
      auto dit = pg.d1.find({r, q});
      Index tgt_off = dst_offset(key);
      if (dit != pg.d1.end() && tgt_off >= 0) {
        MatrixXZ blk = dit->second;
        if (v.weight() % 2 == 0) blk = -blk; /* (-1)^{|v|-1} */
        d.block(tgt_off, off, blk.rows(), blk.cols()) = blk;
      }
      for (const auto& cf : cofaces(v)) {
        if (!x.index.contains(cf.to)) continue;
        Index eoff = dst_offset(cf.to.str());
        if (eoff < 0) continue;
        auto hs_it = vd[key].fib_homology.find({r, q - r});
        auto hd_it = vd[cf.to.str()].fib_homology.find({r, q - r});
        if (hs_it == vd[key].fib_homology.end() || hd_it == vd[cf.to.str()].fib_homology.end())
          continue;
        if (hd_it->second.pres.gens == 0 || hs_it->second.pres.gens == 0) continue;
        const TowerMap& e = x.edge(v, cf.to);
        ChainMap fib = induced_fiber_map(vd[key].fibers.at(r), vd[cf.to.str()].fibers.at(r),
                                         r <= e.src.length() ? e.levels[r] : e.levels.back());
        MatrixXZ mapped = fib.comp(q - r) * hs_it->second.cycles;
        auto blk = solve(hd_it->second.cycles, mapped);
        if (!blk) throw ValidationError("comparison", "edge image of a cycle is not a cycle");
        MatrixXZ sblk = *blk;
        if (cf.sign < 0) sblk = -sblk;
        d.block(eoff, off, sblk.rows(), sblk.cols()) += sblk;
      }
    }
    return d;
  };

  std::map<std::pair<int, Index>, MatrixXZ> phi;
  for (const auto& [key, entry] : rhs) {
    auto [P, q] = key;
    Index m = q - P;
    auto lit = lhs.e1.find({P, q});
    if (lit == lhs.e1.end()) {
      if (!entry.pres.is_trivial())
        return fail("RHS nontrivial but LHS trivial at (" + std::to_string(P) + "," +
                    std::to_string(q) + ")");
      continue;
    }
    const HomologyData& lh = lhs_data.fib_homology.at({P, m});
    const TowerFiber& lf = lhs_data.fibers.at(P);
    const SimpleResult& stage = s2.stage_simple.at(P);
    MatrixXZ mat = zeros(lit->second.gens, entry.pres.gens);
    for (const auto& [vkey, off] : entry.blocks) {
      CubeVertex v = CubeVertex::parse(vkey);
      int r = P + 1 - v.weight();
      const HomologyData& vh = vd[vkey].fib_homology.at({r, q - r});
      const TowerFiber& vf = vd[vkey].fibers.at(r);
      MatrixXZ ambient_v = vf.inclusion.at(q - r) * vh.cycles; /* in X_v(r)_{q-r} */
      const SimpleBlock* blk = stage.block(m, v);
      if (!blk) return fail("missing layout block");
      MatrixXZ ambient = zeros(s2.tower.stage(P).rank(m), ambient_v.cols());
      ambient.block(blk->offset, 0, ambient_v.rows(), ambient_v.cols()) = ambient_v;
      auto fib_coords = solve(lf.inclusion.at(m), ambient);
      if (!fib_coords) return fail("vertex fiber does not land in the s2 fiber");
      auto cls = solve(lh.cycles, *fib_coords);
      if (!cls) return fail("vertex cycle is not an s2 cycle");
      mat.block(0, off, cls->rows(), cls->cols()) = *cls;
    }
    phi[{P, q}] = mat;
  }

  for (const auto& [key, pres] : lhs.e1) {
    if (rhs.count(key)) continue;
    if (!pres.is_trivial())
      return fail("LHS nontrivial but RHS trivial at (" + std::to_string(key.first) + "," +
                  std::to_string(key.second) + ")");
  }

  for (const auto& [key, entry] : rhs) {
    auto [P, q] = key;
    auto pit = phi.find(key);
    if (pit == phi.end()) continue;
    GroupHom h{entry.pres, lhs.e1.at(key), pit->second};
    if (!well_defined(h)) return fail("comparison map not well defined");
    if (!is_isomorphism(h)) return fail("comparison map is not an isomorphism");

    if (rhs.count({P + 1, q}) && phi.count({P + 1, q})) {
      MatrixXZ rd = rhs_d(P, q);
      auto ldit = lhs.d1.find({P, q});
      MatrixXZ ld = ldit != lhs.d1.end()
                        ? ldit->second
                        : zeros(lhs.e1.count({P + 1, q}) ? lhs.e1.at({P + 1, q}).gens : 0,
                                lhs.e1.at(key).gens);
      if (ld.rows() == 0) continue;
      MatrixXZ diff = ld * pit->second - phi.at({P + 1, q}) * rd;
      GroupHom z{entry.pres, lhs.e1.at({P + 1, q}), diff};
      if (!is_zero_hom(z)) return fail("comparison map does not intertwine the differentials");
    }
  }
  return true;
}

F2Verdict f2_tower_criterion(const CubicalDiagram& square) {
  if (!square.index.augmented || square.index.n != 1)
    throw ValidationError("tower criterion", "expects an augmented square");
  square.validate();

  CubeVertex v00 = CubeVertex::parse("00"), v01 = CubeVertex::parse("01"),
             v10 = CubeVertex::parse("10"), v11 = CubeVertex::parse("11");
  const ZComplex& base = square.vertex(v00);

  F2Verdict out;

  /* degreewise short exactness of 0 -> H(X) -> H(Xt) ⊕ H(Y) -> H(Yt) -> 0 */
  {
    bool ok = true;
    Index lo = base.lo(), hi = base.hi();
    for (const auto& v : square.index.vertices()) {
      lo = std::min(lo, square.vertex(v).lo());
      hi = std::max(hi, square.vertex(v).hi());
    }
    for (Index n = lo - 1; n <= hi + 1 && ok; ++n) {
      GroupHom a = induced_hom(square.edge(v00, v01), n);
      GroupHom b = induced_hom(square.edge(v00, v10), n);
      GroupHom c = induced_hom(square.edge(v01, v11), n);
      GroupHom d = induced_hom(square.edge(v10, v11), n);
      Presentation mid{b.dst.gens + a.dst.gens,
                       zeros(b.dst.gens + a.dst.gens,
                             b.dst.relations.cols() + a.dst.relations.cols())};
      mid.relations.block(0, 0, b.dst.gens, b.dst.relations.cols()) = b.dst.relations;
      mid.relations.block(b.dst.gens, b.dst.relations.cols(), a.dst.gens,
                          a.dst.relations.cols()) = a.dst.relations;
      MatrixXZ umat = zeros(mid.gens, a.src.gens);
      umat.topRows(b.dst.gens) = b.map;
      umat.bottomRows(a.dst.gens) = a.map;
      GroupHom u{a.src, mid, umat};
      MatrixXZ vmat = zeros(d.dst.gens, mid.gens);
      vmat.leftCols(b.dst.gens) = d.map;
      vmat.rightCols(a.dst.gens) = -c.map;
      GroupHom w{mid, d.dst, vmat};
      if (!is_injective(u) || !exact_at(u, w) || !is_surjective(w)) ok = false;
    }
    out.rows_exact = ok;
  }

  /* E2-acyclicity of the constant-tower square: the augmentation must be an
   * E2-weak equivalence into the stagewise simple */
  {
    const int len = 2;
    TowerDiagram td;
    td.index = CubeIndex{1, false};
    CubicalDiagram restr = restriction(square);
    for (const auto& v : td.index.vertices())
      td.vertices[v.str()] = constant_tower(restr.vertex(v), len);
    for (const auto& v : td.index.vertices())
      for (const auto& cf : cofaces(v)) {
        if (!td.index.contains(cf.to)) continue;
        td.edges[edge_key(v, cf.to)] = constant_tower_map(restr.edge(v, cf.to), len);
      }
    S2Data s2 = s2_simple_data(td);

    Tower src = constant_tower(base, s2.tower.length());
    TowerMap lambda{src, s2.tower, {}};
    for (int p = 0; p <= s2.tower.length(); ++p) {
      const SimpleResult& stage = s2.stage_simple.at(p);
      ChainMap lvl{base, s2.tower.stages[p], {}};
      for (Index m = base.lo(); m <= base.hi(); ++m) {
        if (base.rank(m) == 0 || lvl.dst.rank(m) == 0) continue;
        MatrixXZ comp = zeros(lvl.dst.rank(m), base.rank(m));
        auto it = stage.layout.find(m);
        if (it != stage.layout.end())
          for (const auto& blk : it->second) {
            if (blk.vertex.weight() != 1 || blk.size == 0) continue;
            comp.block(blk.offset, 0, blk.size, base.rank(m)) =
                square.edge(v00, blk.vertex).comp(m);
          }
        lvl.comps[m] = comp;
      }
      lambda.levels.push_back(lvl);
    }
    out.e2_acyclic = is_e2_weak_equivalence(lambda);
  }
  return out;
}

}  // namespace kdescent
