#include "kdescent/filtration.hpp"

#include <algorithm>

namespace kdescent {

MatrixXZ FilteredComplex::basis(int p, Index m) const {
  if (p <= 0) return identity(total.rank(m));
  if (p > p_max) return zeros(total.rank(m), 0);
  auto pit = bases.find(p);
  if (pit == bases.end()) return zeros(total.rank(m), 0);
  auto mit = pit->second.find(m);
  if (mit == pit->second.end()) return zeros(total.rank(m), 0);
  return mit->second;
}

void FilteredComplex::validate() const {
  for (int p = 1; p <= p_max; ++p)
    for (Index m = total.lo(); m <= total.hi(); ++m) {
      MatrixXZ cur = basis(p, m);
      if (cur.rows() != total.rank(m))
        throw ValidationError("filtration", "basis has wrong ambient rank");
      if (!lattice_contains(basis(p - 1, m), cur))
        throw ValidationError("filtration",
                              "level " + std::to_string(p) + " not contained in level " +
                                  std::to_string(p - 1));
      MatrixXZ img = total.diff(m) * cur;
      if (img.cols() > 0 && !lattice_contains(basis(p, m - 1), img))
        throw ValidationError("filtration",
                              "level " + std::to_string(p) + " is not a subcomplex");
    }
}

FgAbGroup SSPage::group(int p, Index q) const {
  for (const auto& e : entries)
    if (e.p == p && e.q == q) return e.group;
  return FgAbGroup{};
}

namespace {

/* { x in F_p at degree m : d x in F_{p+r} at degree m-1 }, canonical basis */
MatrixXZ z_lattice(const FilteredComplex& f, int p, int r, Index m) {
  MatrixXZ bp = f.basis(p, m);
  if (bp.cols() == 0) return bp;
  MatrixXZ dbp = f.total.diff(m) * bp;
  MatrixXZ pre = preimage_lattice(dbp, f.basis(p + r, m - 1));
  return lattice_canonical(MatrixXZ(bp * pre));
}

/* cycles inside F_p at degree m */
MatrixXZ z_infinity(const FilteredComplex& f, int p, Index m) {
  MatrixXZ bp = f.basis(p, m);
  if (bp.cols() == 0) return bp;
  MatrixXZ dbp = f.total.diff(m) * bp;
  MatrixXZ ker = kernel_basis(dbp);
  return lattice_canonical(MatrixXZ(bp * ker));
}

}  // namespace

PageData spectral_page(const FilteredComplex& f, int r) {
  if (r < 1) throw ValidationError("spectral page", "page index starts at 1");
  PageData out;
  out.r = r;
  const ZComplex& total = f.total;
  for (int p = 0; p <= f.p_max; ++p)
    for (Index m = total.lo(); m <= total.hi(); ++m) {
      MatrixXZ zr = z_lattice(f, p, r, m);
      if (zr.cols() == 0) continue;
      MatrixXZ den1 = z_lattice(f, p + 1, r - 1, m);
      MatrixXZ lifted = z_lattice(f, p - r + 1, r - 1, m + 1);
      MatrixXZ den2 = total.diff(m + 1) * lifted;
      MatrixXZ den = lattice_sum(den1, lattice_canonical(den2));
      auto rel = solve(zr, den);
      if (!rel)
        throw ValidationError("spectral page", "boundary lattice escapes the cycle lattice");
      Index q = m + p;
      out.pres[{p, q}] = Presentation{zr.cols(), *rel};
      out.gen_lattice[{p, q}] = zr;
    }
  for (const auto& [key, pres] : out.pres) {
    auto [p, q] = key;
    auto tgt = out.pres.find({p + r, q + r - 1});
    if (tgt == out.pres.end()) continue;
    MatrixXZ img = f.total.diff(q - p) * out.gen_lattice.at(key);
    auto coords = solve(out.gen_lattice.at({p + r, q + r - 1}), img);
    if (!coords)
      throw ValidationError("spectral page", "differential leaves the next cycle lattice");
    out.d[{p, q}] = *coords;
  }
  return out;
}

SSPage PageData::page() const {
  SSPage out;
  out.r = r;
  for (const auto& [key, p] : pres) {
    FgAbGroup g = p.normal_form();
    if (!g.is_trivial()) out.entries.push_back({key.first, key.second, g});
  }
  for (const auto& [key, mat] : d) {
    auto [p, q] = key;
    if (is_zero(mat)) continue;
    bool src_live = false, dst_live = false;
    for (const auto& e : out.entries) {
      if (e.p == p && e.q == q) src_live = true;
      if (e.p == p + r && e.q == q + r - 1) dst_live = true;
    }
    if (src_live && dst_live) out.differentials.push_back({p, q, mat});
  }
  return out;
}

std::vector<SSPage> spectral_pages(const FilteredComplex& f, int r_max) {
  std::vector<SSPage> out;
  for (int r = 1; r <= r_max; ++r) out.push_back(spectral_page(f, r).page());
  return out;
}

int stable_page_index(const FilteredComplex& f) { return f.p_max + 2; }

WeightFiltration abutment_filtration(const FilteredComplex& f, Index n) {
  HomologyData h = homology_data(f.total, n);
  WeightFiltration out;
  out.abutment = h.pres.normal_form();

  std::vector<MatrixXZ> lattices;
  for (int p = 0; p <= f.p_max + 1; ++p) {
    MatrixXZ zi = z_infinity(f, p, n);
    auto coords = solve(h.cycles, zi);
    if (!coords) throw ValidationError("abutment", "filtered cycle is not a cycle");
    lattices.push_back(lattice_sum(*coords, h.pres.relations));
  }
  for (int p = 0; p <= f.p_max + 1; ++p)
    out.subgroups.push_back(lattice_quotient(lattices[p], h.pres.relations));
  for (int p = 0; p <= f.p_max; ++p)
    out.graded.push_back(lattice_quotient(lattices[p], lattices[p + 1]));
  return out;
}

bool convergence_certificate(const FilteredComplex& f, std::string* diagnostic) {
  PageData inf = spectral_page(f, stable_page_index(f));
  for (Index n = f.total.lo(); n <= f.total.hi(); ++n) {
    WeightFiltration w = abutment_filtration(f, n);
    for (int p = 0; p <= f.p_max; ++p) {
      FgAbGroup einf;
      auto it = inf.pres.find({p, n + p});
      if (it != inf.pres.end()) einf = it->second.normal_form();
      if (einf != w.graded[p]) {
        if (diagnostic)
          *diagnostic = "degree " + std::to_string(n) + ", weight " + std::to_string(p) +
                        ": E_inf = " + einf.to_string() + " vs graded = " +
                        w.graded[p].to_string();
        return false;
      }
    }
  }
  return true;
}

FilteredComplex weight_filtered(const SimpleResult& s, int cube_dimension) {
  FilteredComplex f;
  f.total = s.total;
  f.p_max = cube_dimension;
  for (int p = 1; p <= cube_dimension; ++p) {
    std::map<Index, MatrixXZ> level;
    for (Index m = s.total.lo(); m <= s.total.hi(); ++m) {
      auto it = s.layout.find(m);
      Index cols = 0;
      if (it != s.layout.end())
        for (const auto& b : it->second)
          if (b.vertex.weight() >= p + 1) cols += b.size;
      MatrixXZ basis = zeros(s.total.rank(m), cols);
      Index at = 0;
      if (it != s.layout.end())
        for (const auto& b : it->second) {
          if (b.vertex.weight() < p + 1) continue;
          for (Index k = 0; k < b.size; ++k) basis(b.offset + k, at + k) = 1;
          at += b.size;
        }
      level[m] = basis;
    }
    f.bases[p] = std::move(level);
  }
  return f;
}

FilteredComplex tower_filtered(const Tower& t) {
  FilteredComplex f;
  f.total = t.limit();
  f.p_max = t.length();
  const int L = t.length();
  for (int p = 1; p <= L; ++p) {
    /* kernel of X(L) -> X(p-1) */
    std::map<Index, MatrixXZ> level;
    for (Index m = f.total.lo(); m <= f.total.hi(); ++m) {
      MatrixXZ comp = identity(f.total.rank(m));
      for (int k = L; k >= p; --k) comp = (t.structure_map(k).comp(m) * comp).eval();
      level[m] = kernel_basis(comp);
    }
    f.bases[p] = std::move(level);
  }
  return f;
}

CubicalDiagram weight_truncation(const CubicalDiagram& x, int p) {
  CubicalDiagram t;
  t.index = x.index;
  for (const auto& v : x.index.vertices())
    t.vertices[v.str()] = v.weight() <= p + 1 ? x.vertex(v) : ZComplex::zero();
  for (const auto& v : x.index.vertices())
    for (const auto& cf : cofaces(v)) {
      if (!x.index.contains(cf.to)) continue;
      const ZComplex& src = t.vertices[v.str()];
      const ZComplex& dst = t.vertices[cf.to.str()];
      if (v.weight() <= p + 1 && cf.to.weight() <= p + 1)
        t.edges[edge_key(v, cf.to)] = x.edge(v, cf.to);
      else
        t.edges[edge_key(v, cf.to)] = zero_map(src, dst);
    }
  return t;
}

FiltrationPieces filtration_pieces(const CubicalDiagram& x) {
  if (x.index.augmented)
    throw ValidationError("filtration pieces", "expects a non-augmented diagram");
  FiltrationPieces out;
  out.total = simple(x);
  out.filtered = weight_filtered(out.total, x.index.n);

  for (int p = 0; p <= x.index.n; ++p) out.truncations.push_back(weight_truncation(x, p));

  Tower tower;
  for (int p = 0; p <= x.index.n; ++p)
    tower.stages.push_back(simple(out.truncations[p]).total);
  for (int p = 1; p <= x.index.n; ++p) {
    std::map<std::string, ChainMap> comps;
    for (const auto& v : x.index.vertices()) {
      const ZComplex& src = out.truncations[p].vertex(v);
      const ZComplex& dst = out.truncations[p - 1].vertex(v);
      if (v.weight() <= p)
        comps[v.str()] = identity_map(src);
      else
        comps[v.str()] = zero_map(src, dst);
    }
    tower.maps.push_back(simple_map(out.truncations[p], out.truncations[p - 1], comps));
  }
  tower.stab = x.index.n;
  out.quotient_tower = std::move(tower);
  return out;
}

FgAbGroup DirectE1::group(int p, Index q) const {
  auto it = pres.find({p, q});
  return it == pres.end() ? FgAbGroup{} : it->second.normal_form();
}

DirectE1 e1_page(const CubicalDiagram& x) {
  if (x.index.augmented) throw ValidationError("e1 page", "expects a non-augmented diagram");
  DirectE1 out;
  std::map<std::pair<std::string, Index>, HomologyData> hom;
  for (const auto& v : x.index.vertices()) {
    const ZComplex& c = x.vertex(v);
    for (Index q = c.lo(); q <= c.hi(); ++q) hom[{v.str(), q}] = homology_data(c, q);
  }

  for (int p = 0; p <= x.index.n; ++p) {
    std::map<Index, std::vector<std::pair<std::string, Index>>> blocks_by_q;
    for (const auto& v : x.index.vertices()) {
      if (v.weight() != p + 1) continue;
      const ZComplex& c = x.vertex(v);
      for (Index q = c.lo(); q <= c.hi(); ++q) {
        const HomologyData& h = hom.at({v.str(), q});
        if (h.pres.gens == 0) continue;
        blocks_by_q[q].push_back({v.str(), 0});
      }
    }
    for (auto& [q, blocks] : blocks_by_q) {
      Index gens = 0, rel_cols = 0;
      for (auto& [key, off] : blocks) {
        off = gens;
        gens += hom.at({key, q}).pres.gens;
        rel_cols += hom.at({key, q}).pres.relations.cols();
      }
      MatrixXZ rel = zeros(gens, rel_cols);
      Index co = 0;
      for (const auto& [key, off] : blocks) {
        const Presentation& pr = hom.at({key, q}).pres;
        rel.block(off, co, pr.gens, pr.relations.cols()) = pr.relations;
        co += pr.relations.cols();
      }
      out.pres[{p, q}] = Presentation{gens, rel};
      out.blocks[{p, q}] = blocks;
    }
  }

  /* d1: signed edge-induced maps on homology */
  for (const auto& [key, pres] : out.pres) {
    auto [p, q] = key;
    auto tgt = out.pres.find({p + 1, q});
    if (tgt == out.pres.end()) continue;
    MatrixXZ d = zeros(tgt->second.gens, pres.gens);
    const auto& src_blocks = out.blocks.at(key);
    const auto& dst_blocks = out.blocks.at({p + 1, q});
    for (const auto& [vkey, off] : src_blocks) {
      CubeVertex v = CubeVertex::parse(vkey);
      for (const auto& cf : cofaces(v)) {
        if (!x.index.contains(cf.to)) continue;
        Index toff = -1;
        for (const auto& [dkey, doff] : dst_blocks)
          if (dkey == cf.to.str()) toff = doff;
        if (toff < 0) continue;
        GroupHom ind = induced_hom(x.edge(v, cf.to), q);
        MatrixXZ blk = ind.map;
        if (cf.sign < 0) blk = -blk;
        d.block(toff, off, blk.rows(), blk.cols()) += blk;
      }
    }
    out.d1[key] = d;
  }
  return out;
}

}  // namespace kdescent
