#include "kdescent/generator.hpp"

#include <algorithm>
#include <functional>

namespace kdescent {

MatrixXZ random_matrix(Rng& rng, Index rows, Index cols, long long lo, long long hi) {
  MatrixXZ m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Integer(rng.range(lo, hi));
  return m;
}

MatrixXZ random_unimodular(Rng& rng, Index n, int ops) {
  MatrixXZ u = identity(n);
  if (n <= 1) return u;
  for (int k = 0; k < ops; ++k) {
    Index i = rng.below(n), j = rng.below(n);
    switch (rng.below(3)) {
      case 0:
        if (i != j) u.row(i) += Integer(rng.range(-2, 2)) * u.row(j);
        break;
      case 1:
        if (i != j) u.row(i).swap(u.row(j));
        break;
      default:
        u.row(i) = -u.row(i);
        break;
    }
  }
  return u;
}

ZComplex random_complex(Rng& rng, Index deg_lo, Index deg_hi, Index max_rank, long long max_entry) {
  const Index span = deg_hi - deg_lo + 1;
  std::vector<Index> ranks(span, 0);
  struct Piece { Index top; Integer d; bool two_term; };
  std::vector<Piece> pieces;

  int budget = static_cast<int>(rng.range(1, 2 * static_cast<long long>(span)));
  for (int t = 0; t < budget; ++t) {
    Index deg = deg_lo + static_cast<Index>(rng.below(span));
    bool two = deg > deg_lo && rng.flip();
    if (ranks[deg - deg_lo] >= max_rank) continue;
    if (two && ranks[deg - 1 - deg_lo] >= max_rank) two = false;
    if (two) {
      Integer d(rng.range(-max_entry, max_entry));
      pieces.push_back({deg, d, true});
      ranks[deg - deg_lo] += 1;
      ranks[deg - 1 - deg_lo] += 1;
    } else {
      pieces.push_back({deg, 0, false});
      ranks[deg - deg_lo] += 1;
    }
  }
  if (pieces.empty()) {
    pieces.push_back({deg_lo, 0, false});
    ranks[0] = 1;
  }

  /* assemble the block-diagonal differential from the pieces */
  std::vector<Index> filled(span, 0);
  std::map<Index, MatrixXZ> diffs;
  for (Index m = deg_lo + 1; m <= deg_hi; ++m)
    diffs[m] = zeros(ranks[m - 1 - deg_lo], ranks[m - deg_lo]);
  for (const Piece& p : pieces) {
    Index top_slot = filled[p.top - deg_lo]++;
    if (p.two_term) {
      Index bot_slot = filled[p.top - 1 - deg_lo]++;
      diffs[p.top](bot_slot, top_slot) = p.d;
    }
  }

  std::vector<Index> final_ranks;
  for (Index m = deg_lo; m <= deg_hi; ++m) final_ranks.push_back(ranks[m - deg_lo]);
  ZComplex plain(deg_lo, final_ranks, diffs);

  /* conjugate by small unimodular base changes per degree */
  std::vector<MatrixXZ> base, base_inv;
  for (Index m = deg_lo; m <= deg_hi; ++m) {
    MatrixXZ u = random_unimodular(rng, plain.rank(m), 4);
    base.push_back(u);
    base_inv.push_back(*integer_inverse(u));
  }
  std::map<Index, MatrixXZ> twisted;
  for (Index m = deg_lo + 1; m <= deg_hi; ++m)
    twisted[m] = (base_inv[m - 1 - deg_lo] * plain.diff(m) * base[m - deg_lo]).eval();
  return ZComplex(deg_lo, final_ranks, twisted);
}

ChainMap sample_chain_map(Rng& rng, const ZComplex& src, const ZComplex& dst, long long coeff_bound) {
  /* unknowns: entries of f_m for all degrees where both sides have rank */
  Index lo = std::min(src.lo(), dst.lo());
  Index hi = std::max(src.hi(), dst.hi());
  struct Slot { Index degree; Index rows, cols, offset; };
  std::vector<Slot> slots;
  Index nvars = 0;
  for (Index m = lo; m <= hi; ++m) {
    Index r = dst.rank(m), c = src.rank(m);
    if (r == 0 || c == 0) continue;
    slots.push_back({m, r, c, nvars});
    nvars += r * c;
  }
  auto var = [&](const Slot& s, Index i, Index j) { return s.offset + j * s.rows + i; };

  /* constraints: f_{m-1} d^src_m - d^dst_m f_m = 0, one row per entry */
  std::vector<std::vector<std::pair<Index, Integer>>> rows;
  for (Index m = lo; m <= hi + 1; ++m) {
    MatrixXZ ds = src.diff(m), dd = dst.diff(m);
    Index out_r = dst.rank(m - 1), out_c = src.rank(m);
    if (out_r == 0 || out_c == 0) continue;
    const Slot* s_lo = nullptr;
    const Slot* s_hi = nullptr;
    for (const Slot& s : slots) {
      if (s.degree == m - 1) s_lo = &s;
      if (s.degree == m) s_hi = &s;
    }
    for (Index i = 0; i < out_r; ++i)
      for (Index j = 0; j < out_c; ++j) {
        std::vector<std::pair<Index, Integer>> row;
        if (s_lo)
          for (Index k = 0; k < src.rank(m - 1); ++k)
            if (!ds(k, j).is_zero()) row.emplace_back(var(*s_lo, i, k), ds(k, j));
        if (s_hi)
          for (Index k = 0; k < dst.rank(m); ++k)
            if (!dd(i, k).is_zero()) row.emplace_back(var(*s_hi, k, j), -dd(i, k));
        if (!row.empty()) rows.push_back(std::move(row));
      }
  }

  MatrixXZ constraint = zeros(static_cast<Index>(rows.size()), nvars);
  for (Index r = 0; r < static_cast<Index>(rows.size()); ++r)
    for (const auto& [v, coef] : rows[r]) constraint(r, v) += coef;

  MatrixXZ basis = nvars == 0 ? zeros(0, 0) : kernel_basis(constraint);
  VectorXZ x = zeros(nvars, 1);
  for (Index k = 0; k < basis.cols(); ++k) {
    Integer c(rng.range(-coeff_bound, coeff_bound));
    if (!c.is_zero()) x += c * basis.col(k);
  }

  ChainMap f{src, dst, {}};
  for (const Slot& s : slots) {
    MatrixXZ comp = zeros(s.rows, s.cols);
    for (Index i = 0; i < s.rows; ++i)
      for (Index j = 0; j < s.cols; ++j) comp(i, j) = x(var(s, i, j));
    f.comps[s.degree] = comp;
  }
  f.validate("sampled chain map");
  return f;
}

/* ---------- free diagrams with a unipotent twist ----------
 *
 * A diagram is assembled as X_at = ⊕_{gen ≤ at} piece(gen) with inclusion
 * edges, then every edge is conjugated by a natural unipotent automorphism
 * built from sampled chain maps piece(lower) -> piece(upper).  Faces commute
 * for free and the edge matrices are nondegenerate. */

namespace {

struct FreeTwist {
  std::vector<std::string> keys;  /* linear order refining the poset */
  std::map<std::string, ZComplex> piece;
  std::function<bool(const std::string&, const std::string&)> leq;
  std::map<std::pair<std::string, std::string>, ChainMap> theta; /* (upper, lower) */

  void sample(Rng& rng, long long bound) {
    for (const auto& lower : keys)
      for (const auto& upper : keys) {
        if (lower == upper || !leq(lower, upper)) continue;
        theta[{upper, lower}] = sample_chain_map(rng, piece.at(lower), piece.at(upper), bound);
      }
  }

  std::vector<std::string> gens_of(const std::string& at) const {
    std::vector<std::string> out;
    for (const auto& k : keys)
      if (leq(k, at)) out.push_back(k);
    return out;
  }

  ZComplex complex_at(const std::string& at) const {
    ZComplex acc = ZComplex::zero();
    for (const auto& g : gens_of(at)) acc = direct_sum(acc, piece.at(g));
    return acc;
  }

  Index offset_of(const std::vector<std::string>& gens, const std::string& gen, Index m) const {
    Index off = 0;
    for (const auto& g : gens) {
      if (g == gen) return off;
      off += piece.at(g).rank(m);
    }
    throw ValidationError("free diagram", "generator not present at vertex");
  }

  MatrixXZ theta_matrix(const std::string& at, Index m) const {
    auto gens = gens_of(at);
    ZComplex total = complex_at(at);
    MatrixXZ t = identity(total.rank(m));
    for (const auto& up : gens)
      for (const auto& lo : gens) {
        if (lo == up || !leq(lo, up)) continue;
        MatrixXZ blk = theta.at({up, lo}).comp(m);
        if (blk.rows() == 0 || blk.cols() == 0) continue;
        t.block(offset_of(gens, up, m), offset_of(gens, lo, m), blk.rows(), blk.cols()) = blk;
      }
    return t;
  }

  ChainMap edge(const std::string& from, const std::string& to) const {
    ZComplex a = complex_at(from), b = complex_at(to);
    auto gf = gens_of(from), gt = gens_of(to);
    ChainMap e{a, b, {}};
    Index lo_deg = std::min(a.lo(), b.lo()), hi_deg = std::max(a.hi(), b.hi());
    for (Index m = lo_deg; m <= hi_deg; ++m) {
      if (a.rank(m) == 0 || b.rank(m) == 0) continue;
      MatrixXZ incl = zeros(b.rank(m), a.rank(m));
      for (const auto& g : gf) {
        Index sz = piece.at(g).rank(m);
        if (sz == 0) continue;
        incl.block(offset_of(gt, g, m), offset_of(gf, g, m), sz, sz) = identity(sz);
      }
      MatrixXZ tin = theta_matrix(from, m);
      MatrixXZ tout = theta_matrix(to, m);
      auto tin_inv = integer_inverse(tin);
      e.comps[m] = (tout * incl * *tin_inv).eval();
    }
    return e;
  }
};

std::vector<std::string> weight_lex_order(const CubeIndex& cube) {
  auto verts = cube.vertices();
  std::stable_sort(verts.begin(), verts.end(), [](const CubeVertex& a, const CubeVertex& b) {
    return a.weight() < b.weight();
  });
  std::vector<std::string> keys;
  for (const auto& v : verts) keys.push_back(v.str());
  return keys;
}

ZComplex random_piece(Rng& rng, const DiagramBounds& b) {
  if (rng.below(4) == 0) return ZComplex::zero();
  return random_complex(rng, b.deg_lo, b.deg_hi, std::max<Index>(1, b.max_rank - 1), b.max_entry);
}

}  // namespace

CubicalDiagram free_twisted_diagram(Rng& rng, const CubeIndex& cube,
                                    const std::map<std::string, ZComplex>& pieces,
                                    long long twist_bound) {
  FreeTwist ft;
  ft.keys = weight_lex_order(cube);
  ft.piece = pieces;
  ft.leq = [](const std::string& a, const std::string& b) {
    return CubeVertex::parse(a).leq(CubeVertex::parse(b));
  };
  ft.sample(rng, twist_bound);

  CubicalDiagram d;
  d.index = cube;
  for (const auto& v : cube.vertices()) d.vertices[v.str()] = ft.complex_at(v.str());
  for (const auto& v : cube.vertices())
    for (const auto& cf : cofaces(v)) {
      if (!cube.contains(cf.to)) continue;
      d.edges[edge_key(v, cf.to)] = ft.edge(v.str(), cf.to.str());
    }
  return d;
}

CubicalDiagram random_diagram(Rng& rng, const CubeIndex& cube, const DiagramBounds& b) {
  std::map<std::string, ZComplex> pieces;
  bool any = false;
  for (const auto& v : cube.vertices()) {
    ZComplex p = random_piece(rng, b);
    if (!p.is_zero_complex()) any = true;
    pieces[v.str()] = p;
  }
  if (!any) {
    CubeVertex first = cube.positive_vertices().front();
    pieces[first.str()] = random_complex(rng, b.deg_lo, b.deg_hi, b.max_rank, b.max_entry);
  }
  return free_twisted_diagram(rng, cube, pieces, b.twist_bound);
}

CubicalDiagram random_augmented_diagram(Rng& rng, int n, const DiagramBounds& b, bool force_acyclic) {
  CubeIndex cube{n, true};
  std::map<std::string, ZComplex> pieces;
  std::string top(static_cast<size_t>(n + 1), '1');
  for (const auto& v : cube.vertices()) pieces[v.str()] = random_piece(rng, b);
  if (force_acyclic) {
    /* free diagrams split into cube-shaped acyclic factors except for the
     * summand generated at the top vertex */
    pieces[top] = ZComplex::zero();
  } else {
    pieces[top] = ZComplex::single(rng.range(b.deg_lo, b.deg_hi), 1);
  }
  return free_twisted_diagram(rng, cube, pieces, b.twist_bound);
}

Bidiagram random_bidiagram(Rng& rng, const ProductIndex& idx, const DiagramBounds& b) {
  FreeTwist ft;
  auto pair_key = [](const std::string& a, const std::string& bb) { return a + "|" + bb; };
  {
    auto pairs = idx.vertices();
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& p, const auto& q) {
                       return p.first.weight() + p.second.weight() <
                              q.first.weight() + q.second.weight();
                     });
    for (const auto& [a, bb] : pairs) {
      std::string k = pair_key(a.str(), bb.str());
      ft.keys.push_back(k);
      ft.piece[k] = random_piece(rng, b);
    }
  }
  ft.leq = [](const std::string& x, const std::string& y) {
    auto bar_x = x.find('|');
    auto bar_y = y.find('|');
    CubeVertex ax = CubeVertex::parse(x.substr(0, bar_x)), bx = CubeVertex::parse(x.substr(bar_x + 1));
    CubeVertex ay = CubeVertex::parse(y.substr(0, bar_y)), by = CubeVertex::parse(y.substr(bar_y + 1));
    return ax.leq(ay) && bx.leq(by);
  };
  ft.sample(rng, b.twist_bound);

  Bidiagram d;
  d.index = idx;
  for (const auto& a : idx.a.vertices())
    for (const auto& bb : idx.b.vertices())
      d.vertices[pair_key(a.str(), bb.str())] = ft.complex_at(pair_key(a.str(), bb.str()));
  for (const auto& a : idx.a.vertices())
    for (const auto& bb : idx.b.vertices()) {
      for (const auto& cf : cofaces(a)) {
        if (!idx.a.contains(cf.to)) continue;
        d.first_edges[pair_key(edge_key(a, cf.to), bb.str())] =
            ft.edge(pair_key(a.str(), bb.str()), pair_key(cf.to.str(), bb.str()));
      }
      for (const auto& cf : cofaces(bb)) {
        if (!idx.b.contains(cf.to)) continue;
        d.second_edges[pair_key(a.str(), edge_key(bb, cf.to))] =
            ft.edge(pair_key(a.str(), bb.str()), pair_key(a.str(), cf.to.str()));
      }
    }
  return d;
}

/* ---------- random towers and diagrams of towers ---------- */

Tower random_tower(Rng& rng, int length, const DiagramBounds& b) {
  Tower t;
  ZComplex base = rng.below(5) == 0 ? ZComplex::zero()
                                    : random_complex(rng, b.deg_lo, b.deg_hi,
                                                     std::max<Index>(1, b.max_rank - 1), b.max_entry);
  t.stages.push_back(base);
  for (int p = 1; p <= length; ++p) {
    ZComplex bottom = t.stages.back();
    ZComplex fib = rng.below(3) == 0 ? ZComplex::zero()
                                     : random_complex(rng, b.deg_lo, b.deg_hi,
                                                      std::max<Index>(1, b.max_rank - 1), b.max_entry);
    if (fib.is_zero_complex()) {
      t.stages.push_back(bottom);
      t.maps.push_back(identity_map(bottom));
      continue;
    }
    /* h : bottom -> suspend(fib) encodes exactly d_F h + h d_B = 0 */
    ChainMap h = sample_chain_map(rng, bottom, suspend(fib), 1);
    Index lo = std::min(fib.lo(), bottom.lo()), hi = std::max(fib.hi(), bottom.hi());
    std::vector<Index> ranks;
    std::map<Index, MatrixXZ> diffs;
    for (Index m = lo; m <= hi; ++m) ranks.push_back(fib.rank(m) + bottom.rank(m));
    for (Index m = lo + 1; m <= hi; ++m) {
      MatrixXZ d = zeros(fib.rank(m - 1) + bottom.rank(m - 1), fib.rank(m) + bottom.rank(m));
      d.block(0, 0, fib.rank(m - 1), fib.rank(m)) = fib.diff(m);
      d.block(0, fib.rank(m), fib.rank(m - 1), bottom.rank(m)) = h.comp(m);
      d.block(fib.rank(m - 1), fib.rank(m), bottom.rank(m - 1), bottom.rank(m)) = bottom.diff(m);
      diffs[m] = d;
    }
    ZComplex total(lo, ranks, diffs);
    ChainMap proj{total, bottom, {}};
    for (Index m = lo; m <= hi; ++m) {
      if (total.rank(m) == 0 || bottom.rank(m) == 0) continue;
      MatrixXZ pr = zeros(bottom.rank(m), total.rank(m));
      pr.rightCols(bottom.rank(m)) = identity(bottom.rank(m));
      proj.comps[m] = pr;
    }
    t.stages.push_back(total);
    t.maps.push_back(proj);
  }
  t.stab = length;
  t.validate();
  return t;
}

TowerMap sample_tower_map(Rng& rng, const Tower& src, const Tower& dst, long long bound) {
  const int L = src.length();
  struct Slot { int p; Index degree, rows, cols, offset; };
  std::vector<Slot> slots;
  Index nvars = 0;
  Index lo = 0, hi = -1;
  bool any = false;
  for (int p = 0; p <= L; ++p) {
    const ZComplex &s = src.stages[p], &d = dst.stages[p];
    Index a = std::min(s.lo(), d.lo()), bb = std::max(s.hi(), d.hi());
    if (!any) { lo = a; hi = bb; any = true; }
    else { lo = std::min(lo, a); hi = std::max(hi, bb); }
  }
  for (int p = 0; p <= L; ++p)
    for (Index m = lo; m <= hi; ++m) {
      Index r = dst.stages[p].rank(m), c = src.stages[p].rank(m);
      if (r == 0 || c == 0) continue;
      slots.push_back({p, m, r, c, nvars});
      nvars += r * c;
    }
  auto slot_of = [&](int p, Index m) -> const Slot* {
    for (const Slot& s : slots)
      if (s.p == p && s.degree == m) return &s;
    return nullptr;
  };
  auto var = [&](const Slot& s, Index i, Index j) { return s.offset + j * s.rows + i; };

  std::vector<std::vector<std::pair<Index, Integer>>> rows;
  /* chain-map constraints per stage */
  for (int p = 0; p <= L; ++p)
    for (Index m = lo; m <= hi + 1; ++m) {
      MatrixXZ ds = src.stages[p].diff(m), dd = dst.stages[p].diff(m);
      Index out_r = dst.stages[p].rank(m - 1), out_c = src.stages[p].rank(m);
      if (out_r == 0 || out_c == 0) continue;
      const Slot* s_lo = slot_of(p, m - 1);
      const Slot* s_hi = slot_of(p, m);
      for (Index i = 0; i < out_r; ++i)
        for (Index j = 0; j < out_c; ++j) {
          std::vector<std::pair<Index, Integer>> row;
          if (s_lo)
            for (Index k = 0; k < src.stages[p].rank(m - 1); ++k)
              if (!ds(k, j).is_zero()) row.emplace_back(var(*s_lo, i, k), ds(k, j));
          if (s_hi)
            for (Index k = 0; k < dst.stages[p].rank(m); ++k)
              if (!dd(i, k).is_zero()) row.emplace_back(var(*s_hi, k, j), -dd(i, k));
          if (!row.empty()) rows.push_back(std::move(row));
        }
    }
  /* structure-map constraints: pi'_p f_p = f_{p-1} pi_p */
  for (int p = 1; p <= L; ++p)
    for (Index m = lo; m <= hi; ++m) {
      MatrixXZ ps = src.structure_map(p).comp(m), pd = dst.structure_map(p).comp(m);
      Index out_r = dst.stages[p - 1].rank(m), out_c = src.stages[p].rank(m);
      if (out_r == 0 || out_c == 0) continue;
      const Slot* s_cur = slot_of(p, m);
      const Slot* s_prev = slot_of(p - 1, m);
      for (Index i = 0; i < out_r; ++i)
        for (Index j = 0; j < out_c; ++j) {
          std::vector<std::pair<Index, Integer>> row;
          if (s_cur)
            for (Index k = 0; k < dst.stages[p].rank(m); ++k)
              if (!pd(i, k).is_zero()) row.emplace_back(var(*s_cur, k, j), pd(i, k));
          if (s_prev)
            for (Index k = 0; k < src.stages[p - 1].rank(m); ++k)
              if (!ps(k, j).is_zero()) row.emplace_back(var(*s_prev, i, k), -ps(k, j));
          if (!row.empty()) rows.push_back(std::move(row));
        }
    }

  MatrixXZ constraint = zeros(static_cast<Index>(rows.size()), nvars);
  for (Index r = 0; r < static_cast<Index>(rows.size()); ++r)
    for (const auto& [v, coef] : rows[r]) constraint(r, v) += coef;
  MatrixXZ basis = nvars == 0 ? zeros(0, 0) : kernel_basis(constraint);
  VectorXZ x = zeros(nvars, 1);
  for (Index k = 0; k < basis.cols(); ++k) {
    Integer c(rng.range(-bound, bound));
    if (!c.is_zero()) x += c * basis.col(k);
  }

  TowerMap f{src, dst, {}};
  for (int p = 0; p <= L; ++p) {
    ChainMap lvl{src.stages[p], dst.stages[p], {}};
    for (Index m = lo; m <= hi; ++m) {
      const Slot* s = slot_of(p, m);
      if (!s) continue;
      MatrixXZ comp = zeros(s->rows, s->cols);
      for (Index i = 0; i < s->rows; ++i)
        for (Index j = 0; j < s->cols; ++j) comp(i, j) = x(var(*s, i, j));
      lvl.comps[m] = comp;
    }
    f.levels.push_back(lvl);
  }
  f.validate();
  return f;
}

namespace {

Tower direct_sum_towers(const Tower& a, const Tower& b) {
  Tower s;
  int len = std::max(a.length(), b.length());
  for (int p = 0; p <= len; ++p) s.stages.push_back(direct_sum(a.stage(p), b.stage(p)));
  for (int p = 1; p <= len; ++p) {
    ChainMap m = direct_sum_map(a.structure_map(p), b.structure_map(p));
    s.maps.push_back(ChainMap{s.stages[p], s.stages[p - 1], m.comps});
  }
  s.stab = std::max(a.stab, b.stab);
  return s;
}

}  // namespace

TowerDiagram random_tower_diagram(Rng& rng, const CubeIndex& cube, int length,
                                  const DiagramBounds& b) {
  auto verts = cube.vertices();
  std::vector<std::string> keys;
  {
    auto sorted = verts;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const CubeVertex& a, const CubeVertex& c) { return a.weight() < c.weight(); });
    for (const auto& v : sorted) keys.push_back(v.str());
  }
  std::map<std::string, Tower> piece;
  for (const auto& k : keys) piece[k] = random_tower(rng, length, b);

  std::map<std::pair<std::string, std::string>, TowerMap> theta;
  for (const auto& lo : keys)
    for (const auto& up : keys) {
      if (lo == up) continue;
      if (!CubeVertex::parse(lo).leq(CubeVertex::parse(up))) continue;
      theta[{up, lo}] = sample_tower_map(rng, piece[lo], piece[up], 1);
    }

  auto gens_of = [&](const std::string& at) {
    std::vector<std::string> out;
    for (const auto& k : keys)
      if (CubeVertex::parse(k).leq(CubeVertex::parse(at))) out.push_back(k);
    return out;
  };
  auto tower_at = [&](const std::string& at) {
    Tower acc = constant_tower(ZComplex::zero(), length);
    for (const auto& g : gens_of(at)) acc = direct_sum_towers(acc, piece[g]);
    acc.stab = length;
    return acc;
  };
  auto offset_of = [&](const std::vector<std::string>& gens, const std::string& gen, int p,
                       Index m) {
    Index off = 0;
    for (const auto& g : gens) {
      if (g == gen) return off;
      off += piece[g].stage(p).rank(m);
    }
    throw ValidationError("tower diagram", "generator not present");
  };
  auto theta_matrix = [&](const std::string& at, int p, Index m) {
    auto gens = gens_of(at);
    Index n = tower_at(at).stage(p).rank(m);
    MatrixXZ t = identity(n);
    for (const auto& up : gens)
      for (const auto& lo : gens) {
        if (lo == up || !CubeVertex::parse(lo).leq(CubeVertex::parse(up))) continue;
        MatrixXZ blk = theta.at({up, lo}).levels[p].comp(m);
        if (blk.rows() == 0 || blk.cols() == 0) continue;
        t.block(offset_of(gens, up, p, m), offset_of(gens, lo, p, m), blk.rows(), blk.cols()) = blk;
      }
    return t;
  };

  TowerDiagram d;
  d.index = cube;
  for (const auto& v : verts) d.vertices[v.str()] = tower_at(v.str());
  for (const auto& v : verts)
    for (const auto& cf : cofaces(v)) {
      if (!cube.contains(cf.to)) continue;
      const Tower& src = d.vertices[v.str()];
      const Tower& dst = d.vertices[cf.to.str()];
      auto gf = gens_of(v.str()), gt = gens_of(cf.to.str());
      TowerMap e{src, dst, {}};
      for (int p = 0; p <= length; ++p) {
        ChainMap lvl{src.stages[p], dst.stages[p], {}};
        Index lo_deg = std::min(lvl.src.lo(), lvl.dst.lo());
        Index hi_deg = std::max(lvl.src.hi(), lvl.dst.hi());
        for (Index m = lo_deg; m <= hi_deg; ++m) {
          if (lvl.src.rank(m) == 0 || lvl.dst.rank(m) == 0) continue;
          MatrixXZ incl = zeros(lvl.dst.rank(m), lvl.src.rank(m));
          for (const auto& g : gf) {
            Index sz = piece[g].stage(p).rank(m);
            if (sz == 0) continue;
            incl.block(offset_of(gt, g, p, m), offset_of(gf, g, p, m), sz, sz) = identity(sz);
          }
          MatrixXZ tin = theta_matrix(v.str(), p, m);
          MatrixXZ tout = theta_matrix(cf.to.str(), p, m);
          lvl.comps[m] = (tout * incl * *integer_inverse(tin)).eval();
        }
        e.levels.push_back(lvl);
      }
      d.edges[edge_key(v, cf.to)] = e;
    }
  return d;
}

}  // namespace kdescent
