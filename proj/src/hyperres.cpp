#include "kdescent/hyperres.hpp"

#include <algorithm>
#include <set>

#include "kdescent/generator.hpp"

namespace kdescent {

void HyperresolutionDoc::validate() const {
  if (diagram.index.augmented)
    throw ValidationError("document " + name, "the diagram part must be non-augmented");
  if (cube() > dimension)
    throw ValidationError("document " + name,
                          "cube dimension " + std::to_string(cube()) +
                              " exceeds the declared variety dimension " +
                              std::to_string(dimension));
  diagram.validate();
  if (augmented) {
    if (!augmented->index.augmented || augmented->index.n != diagram.index.n)
      throw ValidationError("document " + name, "augmentation lives over the wrong cube");
    augmented->validate();
    for (const auto& v : diagram.index.vertices())
      if (!(augmented->vertex(v) == diagram.vertex(v)))
        throw ValidationError("document " + name,
                              "augmented diagram disagrees at vertex " + v.str());
  }
}

SimpleResult assemble_kd(const HyperresolutionDoc& doc) {
  doc.validate();
  return simple(doc.diagram);
}

KdReport kd_groups_and_weights(const HyperresolutionDoc& doc, Index lo, Index hi) {
  SimpleResult s = assemble_kd(doc);
  FilteredComplex f = weight_filtered(s, doc.cube());
  KdReport out;
  out.name = doc.name;
  for (Index n = lo; n <= hi; ++n) {
    WeightFiltration w = abutment_filtration(f, n);
    KdRow row;
    row.n = n;
    row.group = w.abutment;
    row.graded = w.graded;
    out.rows.push_back(std::move(row));
  }
  /* dimension vanishing: everything below -dimension must die */
  for (Index n = s.total.lo(); n < -static_cast<Index>(doc.dimension); ++n)
    if (!homology(s.total, n).is_trivial()) {
      out.vanishing_ok = false;
      out.vanishing_failures.push_back(n);
    }
  return out;
}

/* ---------- blow-up models ---------- */

void BlowupData::validate() const {
  if (codim < 1) throw ValidationError("blow-up " + name, "codimension must be at least 1");
  for (const auto& [n, r] : ky_ranks) {
    if (r == 0) continue;
    auto iit = istar.find(n);
    Index kx = kx_ranks.count(n) ? kx_ranks.at(n) : 0;
    if (kx > 0) {
      if (iit == istar.end() || iit->second.rows() != r || iit->second.cols() != kx)
        throw ValidationError("blow-up " + name,
                              "istar at degree " + std::to_string(n) + " has the wrong shape");
    }
    if (codim > 1) {
      auto lit = ell.find(n);
      if (lit == ell.end() || lit->second.rows() != codim * r || lit->second.cols() != codim * r)
        throw ValidationError("blow-up " + name,
                              "ell action at degree " + std::to_string(n) + " has the wrong shape");
      auto mit = lambda.find(n);
      if (mit == lambda.end() || mit->second.rows() != codim * r ||
          mit->second.cols() != codim * r)
        throw ValidationError("blow-up " + name,
                              "lambda at degree " + std::to_string(n) + " has the wrong shape");
    }
  }
}

namespace {

ZComplex ranks_complex(const std::map<Index, Index>& ranks) {
  if (ranks.empty()) return ZComplex::zero();
  Index lo = ranks.begin()->first, hi = ranks.rbegin()->first;
  std::vector<Index> rs;
  for (Index m = lo; m <= hi; ++m) rs.push_back(ranks.count(m) ? ranks.at(m) : 0);
  return ZComplex(lo, rs, {});
}

ChainMap degreewise_map(const ZComplex& src, const ZComplex& dst,
                        const std::map<Index, MatrixXZ>& comps) {
  ChainMap f{src, dst, {}};
  for (const auto& [m, mat] : comps)
    if (mat.rows() > 0 && mat.cols() > 0) f.comps[m] = mat;
  return f;
}

}  // namespace

BlowupReport blowup_model(const BlowupData& b) {
  b.validate();
  const int d = b.codim;
  BlowupReport out;
  out.name = b.name;

  std::map<Index, Index> kxt_ranks, kyt_ranks;
  std::map<Index, MatrixXZ> fstar, gstar, jstar, jprime, istar;
  std::set<Index> degrees;
  for (const auto& [n, r] : b.kx_ranks)
    if (r > 0) degrees.insert(n);
  for (const auto& [n, r] : b.ky_ranks)
    if (r > 0) degrees.insert(n);

  for (Index n : degrees) {
    Index kx = b.kx_ranks.count(n) ? b.kx_ranks.at(n) : 0;
    Index ky = b.ky_ranks.count(n) ? b.ky_ranks.at(n) : 0;
    Index kxt = kx + (d - 1) * ky;
    Index kyt = d * ky;
    kxt_ranks[n] = kxt;
    kyt_ranks[n] = kyt;

    MatrixXZ f = zeros(kxt, kx);
    f.topRows(kx) = identity(kx);
    fstar[n] = f;

    MatrixXZ g = zeros(kyt, ky);
    g.topRows(ky) = identity(ky);
    gstar[n] = g;

    MatrixXZ is = kx > 0 && ky > 0 ? b.istar.at(n) : zeros(ky, kx);
    istar[n] = is;

    MatrixXZ j = zeros(kyt, kxt);
    MatrixXZ jp = zeros(kyt, kxt);
    if (ky > 0) {
      j.block(0, 0, ky, kx) = is;
      jp.block(0, 0, ky, kx) = is;
    }
    if (d > 1 && ky > 0) {
      const MatrixXZ& L = b.ell.at(n);
      const MatrixXZ& lam = b.lambda.at(n);
      if (!is_unimodular(L))
        throw ValidationError("blow-up " + b.name,
                              "ell action at degree " + std::to_string(n) + " is not invertible");
      MatrixXZ iota0 = g;
      MatrixXZ Lpow = identity(kyt); /* L^{i-1} */
      for (int i = 1; i <= d - 1; ++i) {
        MatrixXZ col_self = ((b.ell.at(n) - identity(kyt)) * Lpow * iota0).eval();
        MatrixXZ col_lambda = (lam * b.ell.at(n) * Lpow * iota0).eval();
        j.block(0, kx + (i - 1) * ky, kyt, ky) = col_self;
        jp.block(0, kx + (i - 1) * ky, kyt, ky) = col_lambda;
        Lpow = (b.ell.at(n) * Lpow).eval();
      }
    }
    jstar[n] = j;
    jprime[n] = jp;
  }

  /* the decomposition square: both routes to the corner must agree */
  out.square_commutes = true;
  for (Index n : degrees)
    if (!equal(jstar[n], jprime[n])) out.square_commutes = false;
  if (!out.square_commutes)
    throw ValidationError("blow-up " + b.name,
                          "decomposition square does not commute: inconsistent ell/lambda data");

  ZComplex KX = ranks_complex(b.kx_ranks);
  ZComplex KY = ranks_complex(b.ky_ranks);
  ZComplex KXt = ranks_complex(kxt_ranks);
  ZComplex KYt = ranks_complex(kyt_ranks);

  /* augmented three-cube: identity and product columns against the
   * decomposition */
  CubicalDiagram cube;
  cube.index = CubeIndex{2, true};
  cube.vertices["000"] = KX;
  cube.vertices["100"] = KX;
  cube.vertices["010"] = KXt; /* product coordinates */
  cube.vertices["001"] = KY;
  cube.vertices["110"] = KXt;
  cube.vertices["101"] = KY;
  cube.vertices["011"] = KYt; /* product coordinates */
  cube.vertices["111"] = KYt;
  cube.edges["000->100"] = identity_map(KX);
  cube.edges["000->010"] = degreewise_map(KX, KXt, fstar);
  cube.edges["000->001"] = degreewise_map(KX, KY, istar);
  cube.edges["100->110"] = degreewise_map(KX, KXt, fstar);
  cube.edges["100->101"] = degreewise_map(KX, KY, istar);
  cube.edges["010->110"] = identity_map(KXt);
  cube.edges["010->011"] = degreewise_map(KXt, KYt, jprime);
  cube.edges["001->101"] = identity_map(KY);
  cube.edges["001->011"] = degreewise_map(KY, KYt, gstar);
  cube.edges["110->111"] = degreewise_map(KXt, KYt, jstar);
  cube.edges["101->111"] = degreewise_map(KY, KYt, gstar);
  cube.edges["011->111"] = identity_map(KYt);
  cube.validate();
  out.cube_acyclic = diagram_is_acyclic(cube);

  /* front square as an augmented document */
  CubicalDiagram front;
  front.index = CubeIndex{1, true};
  front.vertices["00"] = KX;
  front.vertices["10"] = KXt;
  front.vertices["01"] = KY;
  front.vertices["11"] = KYt;
  front.edges["00->10"] = degreewise_map(KX, KXt, fstar);
  front.edges["00->01"] = degreewise_map(KX, KY, istar);
  front.edges["10->11"] = degreewise_map(KXt, KYt, jstar);
  front.edges["01->11"] = degreewise_map(KY, KYt, gstar);
  front.validate();
  out.front_acyclic = diagram_is_acyclic(front);

  out.front_square.name = b.name + "-square";
  out.front_square.dimension = std::max(1, b.dimension);
  out.front_square.diagram = restriction(front);
  out.front_square.labels["10"] = "blown-up total space";
  out.front_square.labels["01"] = "center";
  out.front_square.labels["11"] = "exceptional divisor";
  out.front_square.augmented = front;

  /* degreewise short exact sequences */
  for (Index n : degrees) {
    Index kx = KX.rank(n), ky = KY.rank(n), kxt = KXt.rank(n), kyt = KYt.rank(n);
    out.ranks[n] = {kx, kxt, ky, kyt};
    Presentation px = Presentation::free_group(kx);
    Presentation pmid = Presentation::free_group(kxt + ky);
    Presentation pyt = Presentation::free_group(kyt);
    MatrixXZ umat = zeros(kxt + ky, kx);
    umat.topRows(kxt) = fstar[n];
    umat.bottomRows(ky) = istar[n];
    MatrixXZ vmat = zeros(kyt, kxt + ky);
    vmat.leftCols(kxt) = jstar[n];
    vmat.rightCols(ky) = -gstar[n];
    GroupHom u{px, pmid, umat};
    GroupHom v{pmid, pyt, vmat};
    out.ses_exact[n] = is_injective(u) && exact_at(u, v) && is_surjective(v);
  }
  return out;
}

/* ---------- long exact sequence of a square ---------- */

LesReport acyclic_square_sequence(const HyperresolutionDoc& doc) {
  doc.validate();
  if (doc.cube() != 1)
    throw ValidationError("square sequence", "expects a square document");

  LesReport out;
  SimpleResult s = assemble_kd(doc);
  FilteredComplex f = weight_filtered(s, 1);

  /* corner subcomplex and weight-one quotient in block coordinates */
  const ZComplex& total = s.total;
  std::map<Index, MatrixXZ> sub_basis, quot_proj;
  for (Index m = total.lo(); m <= total.hi(); ++m) {
    sub_basis[m] = f.basis(1, m);
    MatrixXZ b1 = f.basis(1, m);
    /* quotient coordinates: the complement block columns */
    Index qcols = total.rank(m) - b1.cols();
    MatrixXZ proj = zeros(qcols, total.rank(m));
    auto it = s.layout.find(m);
    Index at = 0;
    if (it != s.layout.end())
      for (const auto& blk : it->second) {
        if (blk.vertex.weight() != 1) continue;
        for (Index k = 0; k < blk.size; ++k) proj(at + k, blk.offset + k) = 1;
        at += blk.size;
      }
    quot_proj[m] = proj;
  }

  std::vector<Index> qranks;
  std::vector<Index> kranks;
  Index lo = total.lo(), hi = total.hi();
  std::map<Index, MatrixXZ> qdiffs, kdiffs;
  for (Index m = lo; m <= hi; ++m) {
    qranks.push_back(quot_proj[m].rows());
    kranks.push_back(sub_basis[m].cols());
  }
  for (Index m = lo + 1; m <= hi; ++m) {
    qdiffs[m] = (quot_proj[m - 1] * total.diff(m) * quot_proj[m].transpose()).eval();
    auto kd = solve(sub_basis[m - 1], MatrixXZ(total.diff(m) * sub_basis[m]));
    if (!kd) throw ValidationError("square sequence", "corner part is not a subcomplex");
    kdiffs[m] = *kd;
  }
  ZComplex Q(lo, qranks, qdiffs);
  ZComplex K(lo, kranks, kdiffs);

  ChainMap proj{total, Q, {}};
  ChainMap incl{K, total, {}};
  for (Index m = lo; m <= hi; ++m) {
    if (total.rank(m) == 0) continue;
    if (Q.rank(m) > 0) proj.comps[m] = quot_proj[m];
    if (K.rank(m) > 0) incl.comps[m] = sub_basis[m];
  }
  proj.validate("weight-one quotient");
  incl.validate("corner inclusion");

  /* optional augmentation: groups read off the global complex */
  bool augmented_ok = true;
  std::map<Index, FgAbGroup> base_groups;
  if (doc.augmented) {
    ChainMap lam = augmentation_map(*doc.augmented);
    for (Index n = lo - 1; n <= hi + 1; ++n) {
      if (!is_isomorphism(induced_hom(lam, n))) augmented_ok = false;
      base_groups[n] = homology(lam.src, n);
    }
    if (!augmented_ok) {
      out.exact = false;
      out.failures.push_back("augmentation map is not a quasi-isomorphism");
    }
  }

  for (Index n = lo - 1; n <= hi + 1; ++n) {
    out.degrees.push_back(n);
    out.base[n] = doc.augmented && augmented_ok ? base_groups[n] : homology(total, n);
    out.middle[n] = homology(Q, n);
    out.corner[n] = homology(K, n - 1);

    GroupHom u = induced_hom(proj, n);
    GroupHom w = induced_hom(incl, n - 1);
    /* connecting map: lift a quotient cycle along the block section and take
     * its boundary in the corner */
    HomologyData hq = homology_data(Q, n);
    HomologyData hk = homology_data(K, n - 1);
    MatrixXZ lifted = quot_proj[n].transpose() * hq.cycles;
    MatrixXZ bnd = total.diff(n) * lifted;
    auto kc = solve(sub_basis[n - 1], bnd);
    if (!kc) throw ValidationError("square sequence", "boundary escapes the corner");
    auto cls = solve(hk.cycles, *kc);
    if (!cls) throw ValidationError("square sequence", "boundary of a lift is not a cycle");
    GroupHom delta{hq.pres, hk.pres, *cls};

    GroupHom u_next = induced_hom(proj, n - 1);
    bool at_middle = exact_at(u, delta);
    bool at_corner = exact_at(delta, w);
    /* exactness at the base of the NEXT degree: im(w) = ker(u at n-1) */
    bool at_base = exact_at(w, u_next);
    out.exact_at_middle[n] = at_middle;
    out.exact_at_corner[n] = at_corner;
    out.exact_at_base[n - 1] = at_base;
    out.connecting_zero[n] = is_zero_hom(w);
    if (!at_middle || !at_corner || !at_base) {
      out.exact = false;
      out.failures.push_back("exactness fails around degree " + std::to_string(n));
    }
  }
  return out;
}

/* ---------- compact support ---------- */

CompactSupportResult assemble_compact_support(const HyperresolutionDoc& xbar,
                                              const HyperresolutionDoc* y,
                                              const RestrictionSpec& restriction) {
  xbar.validate();
  CompactSupportResult out;
  SimpleResult sx = assemble_kd(xbar);

  ChainMap to_target = identity_map(sx.total);
  bool have_target = y != nullptr && !simple(y->diagram).total.is_zero_complex();
  if (y) y->validate();
  if (have_target) {
    CubicalDiagram source = xbar.diagram;
    ChainMap head = identity_map(sx.total);
    if (!restriction.positions.empty() &&
        restriction.positions.size() != static_cast<size_t>(xbar.cube() + 1)) {
      head = face_projection(xbar.diagram, restriction.positions);
      source = restrict_to_positions(xbar.diagram, restriction.positions);
    }
    if (!(source.index == y->diagram.index))
      throw ValidationError("compact support", "restriction does not land on the target cube");
    std::map<std::string, ChainMap> comps;
    for (const auto& v : source.index.vertices()) {
      auto it = restriction.components.find(v.str());
      if (it == restriction.components.end())
        throw ValidationError("compact support", "missing restriction component at " + v.str());
      comps[v.str()] = degreewise_map(source.vertex(v), y->diagram.vertex(v), it->second);
    }
    to_target = compose(simple_map(source, y->diagram, comps), head);
  } else {
    to_target = zero_map(sx.total, ZComplex::zero());
  }

  ZComplex fib = fiber(to_target);
  out.complex = fib;
  for (Index m = fib.lo(); m <= fib.hi(); ++m) {
    FgAbGroup g = homology(fib, m);
    if (!g.is_trivial()) out.groups[m] = g;
  }

  /* boundary long exact sequence of the fibration */
  ZComplex lb = loop(to_target.dst);
  ChainMap i = fiber_inclusion(to_target);
  ChainMap p = fiber_projection(to_target);
  for (Index m = fib.lo() - 1; m <= fib.hi() + 1; ++m) {
    GroupHom im = induced_hom(i, m);
    GroupHom pm = induced_hom(p, m);
    HomologyData ha = homology_data(to_target.src, m);
    HomologyData hb = homology_data(lb, m - 1);
    auto dm = solve(hb.cycles, MatrixXZ(to_target.comp(m) * ha.cycles));
    if (!dm) throw ValidationError("compact support", "restriction image of a cycle is not a cycle");
    GroupHom delta{ha.pres, hb.pres, *dm};
    GroupHom iprev = induced_hom(i, m - 1);
    if (!exact_at(im, pm)) {
      out.les_exact = false;
      out.failures.push_back("exactness fails entering degree " + std::to_string(m));
    }
    if (!exact_at(pm, delta)) {
      out.les_exact = false;
      out.failures.push_back("exactness fails at the restriction in degree " + std::to_string(m));
    }
    if (!exact_at(delta, iprev)) {
      out.les_exact = false;
      out.failures.push_back("exactness fails at the boundary in degree " + std::to_string(m));
    }
  }
  return out;
}

/* ---------- comparison ---------- */

CompareReport compare_hyperresolutions(const HyperresolutionDoc& a, const HyperresolutionDoc& b,
                                       Index lo, Index hi) {
  KdReport ra = kd_groups_and_weights(a, lo, hi);
  KdReport rb = kd_groups_and_weights(b, lo, hi);
  CompareReport out;
  for (size_t i = 0; i < ra.rows.size(); ++i) {
    CompareRow row;
    row.n = ra.rows[i].n;
    row.left = ra.rows[i].group;
    row.right = rb.rows[i].group;
    row.groups_match = row.left == row.right;
    size_t np = std::max(ra.rows[i].graded.size(), rb.rows[i].graded.size());
    row.graded_match = true;
    for (size_t p = 0; p < np; ++p) {
      FgAbGroup ga = p < ra.rows[i].graded.size() ? ra.rows[i].graded[p] : FgAbGroup{};
      FgAbGroup gb = p < rb.rows[i].graded.size() ? rb.rows[i].graded[p] : FgAbGroup{};
      row.graded.push_back({ga, gb});
      if (ga != gb) row.graded_match = false;
    }
    if (!row.groups_match || !row.graded_match) out.all_match = false;
    out.rows.push_back(std::move(row));
  }
  return out;
}

/* ---------- covering squares ---------- */

MvReport mayer_vietoris_check(const CubicalDiagram& x, const CubicalDiagram& u,
                              const CubicalDiagram& v, const CubicalDiagram& uv,
                              const std::map<std::string, ChainMap>& x_to_u,
                              const std::map<std::string, ChainMap>& x_to_v,
                              const std::map<std::string, ChainMap>& u_to_uv,
                              const std::map<std::string, ChainMap>& v_to_uv) {
  MvReport out;
  validate_diagram_map(x, u, x_to_u);
  validate_diagram_map(x, v, x_to_v);
  validate_diagram_map(u, uv, u_to_uv);
  validate_diagram_map(v, uv, v_to_uv);

  /* vertexwise square condition */
  for (const auto& vert : x.index.vertices()) {
    CubicalDiagram sq;
    sq.index = CubeIndex{1, true};
    sq.vertices["00"] = x.vertex(vert);
    sq.vertices["10"] = u.vertex(vert);
    sq.vertices["01"] = v.vertex(vert);
    sq.vertices["11"] = uv.vertex(vert);
    sq.edges["00->10"] = x_to_u.at(vert.str());
    sq.edges["00->01"] = x_to_v.at(vert.str());
    sq.edges["10->11"] = u_to_uv.at(vert.str());
    sq.edges["01->11"] = v_to_uv.at(vert.str());
    sq.validate();
    out.vertex_acyclic[vert.str()] = diagram_is_acyclic(sq);
  }

  ChainMap su = simple_map(x, u, x_to_u);
  ChainMap sv = simple_map(x, v, x_to_v);
  ChainMap tu = simple_map(u, uv, u_to_uv);
  ChainMap tv = simple_map(v, uv, v_to_uv);
  CubicalDiagram total;
  total.index = CubeIndex{1, true};
  total.vertices["00"] = su.src;
  total.vertices["10"] = su.dst;
  total.vertices["01"] = sv.dst;
  total.vertices["11"] = tu.dst;
  total.edges["00->10"] = su;
  total.edges["00->01"] = sv;
  total.edges["10->11"] = tu;
  total.edges["01->11"] = tv;
  total.validate();
  out.total_acyclic = diagram_is_acyclic(total);
  return out;
}

AugmentationComparison augmentation_comparison(const HyperresolutionDoc& doc) {
  doc.validate();
  if (!doc.augmented)
    throw ValidationError("augmentation comparison", "document has no global complex");
  AugmentationComparison out;
  out.acyclic = diagram_is_acyclic(*doc.augmented);
  out.global_map_is_qiso = is_quasi_iso(augmentation_map(*doc.augmented));
  return out;
}

/* ---------- built-in documents ---------- */

ZComplex point_complex() { return ZComplex::single(0, 1); }

ZComplex projective_space_complex(int n) { return ZComplex::single(0, n + 1); }

namespace {

MatrixXZ mat(std::initializer_list<std::initializer_list<long long>> rows) {
  Index r = static_cast<Index>(rows.size());
  Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  MatrixXZ m = zeros(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long long v : row) m(i, j++) = Integer(v);
    ++i;
  }
  return m;
}

ChainMap deg0(const ZComplex& a, const ZComplex& b, const MatrixXZ& m) {
  ChainMap f{a, b, {}};
  if (m.rows() > 0 && m.cols() > 0) f.comps[0] = m;
  return f;
}

}  // namespace

HyperresolutionDoc point_doc() {
  HyperresolutionDoc doc;
  doc.name = "point";
  doc.dimension = 0;
  doc.diagram.index = CubeIndex{0, false};
  doc.diagram.vertices["1"] = point_complex();
  doc.labels["1"] = "point";
  return doc;
}

HyperresolutionDoc p1_doc() {
  HyperresolutionDoc doc;
  doc.name = "projective-line";
  doc.dimension = 1;
  doc.diagram.index = CubeIndex{0, false};
  doc.diagram.vertices["1"] = projective_space_complex(1);
  doc.labels["1"] = "P^1";
  return doc;
}

HyperresolutionDoc nodal_doc() {
  HyperresolutionDoc doc;
  doc.name = "nodal-cubic";
  doc.dimension = 1;
  doc.diagram.index = CubeIndex{1, false};
  ZComplex y = point_complex();
  ZComplex xt = projective_space_complex(1);
  ZComplex yt = ZComplex::single(0, 2);
  doc.diagram.vertices["01"] = y;
  doc.diagram.vertices["10"] = xt;
  doc.diagram.vertices["11"] = yt;
  doc.diagram.edges["01->11"] = deg0(y, yt, mat({{1}, {1}}));
  doc.diagram.edges["10->11"] = deg0(xt, yt, mat({{1, 1}, {1, 1}}));
  doc.labels["01"] = "node";
  doc.labels["10"] = "normalization P^1";
  doc.labels["11"] = "two preimages of the node";
  return doc;
}

HyperresolutionDoc cusp_doc() {
  HyperresolutionDoc doc;
  doc.name = "cuspidal-cubic";
  doc.dimension = 1;
  doc.diagram.index = CubeIndex{1, false};
  ZComplex y = point_complex();
  ZComplex xt = projective_space_complex(1);
  ZComplex yt = point_complex();
  doc.diagram.vertices["01"] = y;
  doc.diagram.vertices["10"] = xt;
  doc.diagram.vertices["11"] = yt;
  doc.diagram.edges["01->11"] = deg0(y, yt, mat({{1}}));
  doc.diagram.edges["10->11"] = deg0(xt, yt, mat({{1, 1}}));
  doc.labels["01"] = "cusp";
  doc.labels["10"] = "normalization P^1";
  doc.labels["11"] = "single preimage of the cusp";
  return doc;
}

HyperresolutionDoc nodal_cube2_doc() {
  HyperresolutionDoc doc;
  doc.name = "nodal-cubic-redundant";
  /* the duplicated-row hyperresolution exceeds the minimal size bound, so
   * the declared ambient dimension is the cube size */
  doc.dimension = 2;
  doc.diagram.index = CubeIndex{2, false};
  ZComplex a = projective_space_complex(1); /* normalization */
  ZComplex b = point_complex();             /* node */
  ZComplex c = ZComplex::single(0, 2);      /* preimages */
  MatrixXZ am = mat({{1, 1}, {1, 1}});
  MatrixXZ bm = mat({{1}, {1}});

  doc.diagram.vertices["001"] = b;
  doc.diagram.vertices["010"] = b;
  doc.diagram.vertices["100"] = a;
  doc.diagram.vertices["011"] = b;
  doc.diagram.vertices["101"] = c;
  doc.diagram.vertices["110"] = c;
  doc.diagram.vertices["111"] = c;

  doc.diagram.edges["001->011"] = identity_map(b);
  doc.diagram.edges["001->101"] = deg0(b, c, bm);
  doc.diagram.edges["010->011"] = identity_map(b);
  doc.diagram.edges["010->110"] = deg0(b, c, bm);
  doc.diagram.edges["100->101"] = deg0(a, c, am);
  doc.diagram.edges["100->110"] = deg0(a, c, am);
  doc.diagram.edges["011->111"] = deg0(b, c, bm);
  doc.diagram.edges["101->111"] = identity_map(c);
  doc.diagram.edges["110->111"] = identity_map(c);

  doc.labels["001"] = "node (duplicate row)";
  doc.labels["010"] = "node";
  doc.labels["100"] = "normalization P^1";
  return doc;
}

HyperresolutionDoc identity_square_doc() {
  HyperresolutionDoc doc;
  doc.name = "identity-square";
  doc.dimension = 1;
  ZComplex z = point_complex();
  doc.diagram.index = CubeIndex{1, false};
  for (const auto& v : doc.diagram.index.vertices()) doc.diagram.vertices[v.str()] = z;
  for (const auto& v : doc.diagram.index.vertices())
    for (const auto& cf : cofaces(v)) {
      if (!doc.diagram.index.contains(cf.to)) continue;
      doc.diagram.edges[edge_key(v, cf.to)] = identity_map(z);
    }
  CubicalDiagram aug;
  aug.index = CubeIndex{1, true};
  for (const auto& v : aug.index.vertices()) aug.vertices[v.str()] = z;
  for (const auto& v : aug.index.vertices())
    for (const auto& cf : cofaces(v)) aug.edges[edge_key(v, cf.to)] = identity_map(z);
  doc.augmented = aug;
  return doc;
}

BlowupData p2_point_blowup() {
  BlowupData b;
  b.name = "plane-at-a-point";
  b.codim = 2;
  b.dimension = 2;
  b.kx_ranks[0] = 3;
  b.ky_ranks[0] = 1;
  b.istar[0] = mat({{1, 1, 1}});
  /* tautological class on the exceptional line: square satisfies
   * (1 - t)^2 = 0, so t * t = 2t - 1 */
  b.ell[0] = mat({{0, -1}, {1, 2}});
  b.lambda[0] = mat({{-1, -1}, {1, 1}});
  return b;
}

BlowupData p3_line_blowup() {
  BlowupData b;
  b.name = "space-along-a-line";
  b.codim = 2;
  b.dimension = 3;
  b.kx_ranks[0] = 4;
  b.ky_ranks[0] = 2;
  /* twisting sheaves restricted to the center line, in the basis
   * {structure sheaf, twist by -1} */
  b.istar[0] = mat({{1, 2, 3, 4}, {0, -1, -2, -3}});
  /* the center contributes its own twist class s with (1-s)^2 = 0; the
   * tautological class acts blockwise through s */
  b.ell[0] = mat({{0, 0, 1, 2}, {0, 0, -2, -3}, {1, 0, 0, -2}, {0, 1, 2, 4}});
  MatrixXZ linv = *integer_inverse(b.ell[0]);
  b.lambda[0] = (identity(4) - linv).eval();
  return b;
}

CompactSupportInput affine_line_pair() {
  CompactSupportInput in;
  in.name = "affine-line";
  in.xbar = p1_doc();
  HyperresolutionDoc y = point_doc();
  in.restriction.components["1"][0] = mat({{1, 1}});
  in.y = std::move(y);
  return in;
}

CompactSupportInput punctured_line_pair() {
  CompactSupportInput in;
  in.name = "doubly-punctured-line";
  in.xbar = p1_doc();
  HyperresolutionDoc y;
  y.name = "two-points";
  y.dimension = 0;
  y.diagram.index = CubeIndex{0, false};
  y.diagram.vertices["1"] = ZComplex::single(0, 2);
  y.labels["1"] = "two points";
  in.restriction.components["1"][0] = mat({{1, 1}, {1, 1}});
  in.y = std::move(y);
  return in;
}

std::vector<std::pair<std::string, CubicalDiagram>> f2_standard_corpus(std::uint64_t seed,
                                                                       int count) {
  std::vector<std::pair<std::string, CubicalDiagram>> out;
  out.push_back({"plane-at-a-point", *blowup_model(p2_point_blowup()).front_square.augmented});
  out.push_back({"space-along-a-line", *blowup_model(p3_line_blowup()).front_square.augmented});
  out.push_back({"identity-square", *identity_square_doc().augmented});
  {
    CubicalDiagram broken;
    broken.index = CubeIndex{1, true};
    ZComplex z = point_complex();
    broken.vertices["00"] = z;
    broken.vertices["01"] = ZComplex::zero();
    broken.vertices["10"] = ZComplex::zero();
    broken.vertices["11"] = ZComplex::zero();
    broken.edges["00->01"] = zero_map(z, ZComplex::zero());
    broken.edges["00->10"] = zero_map(z, ZComplex::zero());
    broken.edges["01->11"] = zero_map(ZComplex::zero(), ZComplex::zero());
    broken.edges["10->11"] = zero_map(ZComplex::zero(), ZComplex::zero());
    out.push_back({"broken-square", broken});
  }
  Rng rng(seed);
  DiagramBounds bounds;
  int i = 0;
  while (static_cast<int>(out.size()) < count) {
    bool force = i % 2 == 0;
    out.push_back({"generated-" + std::to_string(i),
                   random_augmented_diagram(rng, 1, bounds, force)});
    ++i;
  }
  return out;
}

}  // namespace kdescent
