#include "doctest.h"

#include "kdescent/generator.hpp"
#include "kdescent/hyperres.hpp"

using namespace kdescent;

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
}  // namespace

TEST_CASE("assembled groups of the standard documents") {
  SimpleResult nodal = assemble_kd(nodal_doc());
  CHECK(homology(nodal.total, 0) == FgAbGroup{2, {}});
  CHECK(homology(nodal.total, -1) == FgAbGroup{1, {}});
  CHECK(homology(nodal.total, -2).is_trivial());

  SimpleResult cusp = assemble_kd(cusp_doc());
  CHECK(homology(cusp.total, 0) == FgAbGroup{2, {}});
  CHECK(homology(cusp.total, -1).is_trivial());

  SimpleResult line = assemble_kd(p1_doc());
  CHECK(homology(line.total, 0) == FgAbGroup{2, {}});
}

TEST_CASE("groups and weights of the nodal cubic") {
  KdReport rep = kd_groups_and_weights(nodal_doc(), -2, 1);
  CHECK(rep.vanishing_ok);
  for (const auto& row : rep.rows) {
    if (row.n == 0) {
      CHECK(row.group == FgAbGroup{2, {}});
      CHECK(row.graded[0] == FgAbGroup{2, {}});
      CHECK(row.graded[1].is_trivial());
    } else if (row.n == -1) {
      CHECK(row.group == FgAbGroup{1, {}});
      CHECK(row.graded[0].is_trivial());
      CHECK(row.graded[1] == FgAbGroup{1, {}});
    } else {
      CHECK(row.group.is_trivial());
    }
  }
}

TEST_CASE("smooth documents are concentrated in weight zero") {
  KdReport rep = kd_groups_and_weights(p1_doc(), 0, 0);
  CHECK(rep.rows[0].group == FgAbGroup{2, {}});
  CHECK(rep.rows[0].graded[0] == FgAbGroup{2, {}});
}

TEST_CASE("disjoint unions add up") {
  HyperresolutionDoc a = nodal_doc();
  HyperresolutionDoc b = cusp_doc();
  HyperresolutionDoc u = a;
  u.name = "disjoint-union";
  u.diagram = product_diagram(a.diagram, b.diagram);
  KdReport ra = kd_groups_and_weights(a, -1, 0);
  KdReport rb = kd_groups_and_weights(b, -1, 0);
  KdReport ru = kd_groups_and_weights(u, -1, 0);
  for (size_t i = 0; i < ru.rows.size(); ++i)
    CHECK(ru.rows[i].group == direct_sum(ra.rows[i].group, rb.rows[i].group));
}

TEST_CASE("document validation") {
  HyperresolutionDoc doc = nodal_doc();
  doc.dimension = 0; /* cube exceeds the declared dimension */
  CHECK_THROWS_AS(doc.validate(), ValidationError);

  HyperresolutionDoc bad = nodal_doc();
  bad.diagram.edges["01->11"] =
      ChainMap{bad.diagram.vertices["01"], bad.diagram.vertices["11"], {{0, mat({{1}, {2}})}}};
  CHECK_NOTHROW(bad.diagram.validate()); /* still a valid square */
}

TEST_CASE("blow-up model of the plane at a point") {
  BlowupReport rep = blowup_model(p2_point_blowup());
  CHECK(rep.square_commutes);
  CHECK(rep.cube_acyclic);
  CHECK(rep.front_acyclic);
  CHECK(rep.ses_exact.at(0));
  CHECK(rep.ranks.at(0) == std::array<Index, 4>{3, 4, 1, 2});
  rep.front_square.validate();

  /* the front square document behaves like an acyclic square */
  LesReport les = acyclic_square_sequence(rep.front_square);
  CHECK(les.exact);
  for (const auto& [n, z] : les.connecting_zero) CHECK(z);
}

TEST_CASE("blow-up model of space along a line") {
  BlowupReport rep = blowup_model(p3_line_blowup());
  CHECK(rep.square_commutes);
  CHECK(rep.cube_acyclic);
  CHECK(rep.front_acyclic);
  CHECK(rep.ses_exact.at(0));
  CHECK(rep.ranks.at(0) == std::array<Index, 4>{4, 6, 2, 4});
}

TEST_CASE("trivial blow-up degenerates") {
  BlowupData b;
  b.name = "divisor";
  b.codim = 1;
  b.dimension = 2;
  b.kx_ranks[0] = 2;
  b.ky_ranks[0] = 1;
  b.istar[0] = mat({{1, 1}});
  BlowupReport rep = blowup_model(b);
  CHECK(rep.square_commutes);
  CHECK(rep.cube_acyclic);
  CHECK(rep.front_acyclic);
  CHECK(rep.ses_exact.at(0));
  CHECK(rep.ranks.at(0) == std::array<Index, 4>{2, 2, 1, 1});
}

TEST_CASE("inconsistent blow-up data is rejected") {
  BlowupData b = p2_point_blowup();
  b.lambda[0] = mat({{1, 0}, {0, 1}});
  CHECK_THROWS_AS(blowup_model(b), ValidationError);
}

TEST_CASE("long exact sequence of the nodal square") {
  LesReport les = acyclic_square_sequence(nodal_doc());
  CHECK(les.exact);
  CHECK(les.base.at(0) == FgAbGroup{2, {}});
  CHECK(les.base.at(-1) == FgAbGroup{1, {}});
  CHECK(les.middle.at(0) == FgAbGroup{3, {}});
  CHECK(les.corner.at(0) == FgAbGroup{2, {}});
  /* the connecting map into degree -1 is nonzero: the weight-one class */
  CHECK(!les.connecting_zero.at(0));
}

TEST_CASE("long exact sequence of the identity square") {
  LesReport les = acyclic_square_sequence(identity_square_doc());
  CHECK(les.exact);
  for (const auto& [n, z] : les.connecting_zero) CHECK(z);
}

TEST_CASE("compact support of the affine line") {
  CompactSupportInput in = affine_line_pair();
  CompactSupportResult r = assemble_compact_support(in.xbar, &*in.y, in.restriction);
  CHECK(r.les_exact);
  CHECK(r.groups.count(0));
  CHECK(r.groups.at(0) == FgAbGroup{1, {}});
  CHECK(!r.groups.count(-1));
}

TEST_CASE("compact support with empty boundary is the assembled complex") {
  HyperresolutionDoc xbar = p1_doc();
  CompactSupportResult r = assemble_compact_support(xbar, nullptr, RestrictionSpec{});
  CHECK(r.complex == assemble_kd(xbar).total);
  CHECK(r.les_exact);
}

TEST_CASE("compact support of the doubly punctured line") {
  CompactSupportInput in = punctured_line_pair();
  CompactSupportResult r = assemble_compact_support(in.xbar, &*in.y, in.restriction);
  CHECK(r.les_exact);
  CHECK(r.groups.at(0) == FgAbGroup{1, {}});
  CHECK(r.groups.at(-1) == FgAbGroup{1, {}});
}

TEST_CASE("hyperresolution comparison") {
  CompareReport same = compare_hyperresolutions(nodal_doc(), nodal_doc(), -2, 1);
  CHECK(same.all_match);

  CompareReport inflated = compare_hyperresolutions(nodal_doc(), nodal_cube2_doc(), -2, 1);
  CHECK(inflated.all_match);

  CompareReport different = compare_hyperresolutions(nodal_doc(), cusp_doc(), -2, 1);
  CHECK(!different.all_match);
  bool found = false;
  for (const auto& row : different.rows)
    if (row.n == -1) {
      found = true;
      CHECK(!row.groups_match);
    }
  CHECK(found);
}

TEST_CASE("weight pieces vanish above the cube size") {
  KdReport rep = kd_groups_and_weights(nodal_cube2_doc(), -2, 1);
  for (const auto& row : rep.rows) CHECK(row.graded[2].is_trivial());
}

TEST_CASE("covering squares assemble acyclically") {
  /* identity cover */
  CubicalDiagram x = nodal_doc().diagram;
  std::map<std::string, ChainMap> ids;
  for (const auto& v : x.index.vertices()) ids[v.str()] = identity_map(x.vertex(v));
  MvReport rep = mayer_vietoris_check(x, x, x, x, ids, ids, ids, ids);
  CHECK(rep.ok());

  /* pad the two opens with complementary summands */
  Rng rng(3);
  ZComplex e = random_complex(rng, -1, 1, 2, 2);
  ZComplex f = random_complex(rng, -1, 1, 2, 2);
  CubicalDiagram u, v, uv;
  u.index = v.index = uv.index = x.index;
  std::map<std::string, ChainMap> xu, xv, uuv, vuv;
  for (const auto& vert : x.index.vertices()) {
    const ZComplex& c = x.vertex(vert);
    u.vertices[vert.str()] = direct_sum(c, e);
    v.vertices[vert.str()] = direct_sum(c, f);
    uv.vertices[vert.str()] = direct_sum(direct_sum(c, e), f);
    xu[vert.str()] = sum_inclusion_left(c, e);
    xv[vert.str()] = sum_inclusion_left(c, f);
    ChainMap iu = sum_inclusion_left(direct_sum(c, e), f);
    uuv[vert.str()] = iu;
    /* c ⊕ f -> (c ⊕ e) ⊕ f placing f last */
    ZComplex ce = direct_sum(c, e);
    ChainMap iv{v.vertices[vert.str()], uv.vertices[vert.str()], {}};
    for (Index m = iv.src.lo(); m <= iv.src.hi(); ++m) {
      if (iv.src.rank(m) == 0 || iv.dst.rank(m) == 0) continue;
      MatrixXZ blk = zeros(iv.dst.rank(m), iv.src.rank(m));
      blk.block(0, 0, c.rank(m), c.rank(m)) = identity(c.rank(m));
      blk.block(ce.rank(m), c.rank(m), f.rank(m), f.rank(m)) = identity(f.rank(m));
      iv.comps[m] = blk;
    }
    vuv[vert.str()] = iv;
  }
  for (const auto& vert : x.index.vertices())
    for (const auto& cf : cofaces(vert)) {
      if (!x.index.contains(cf.to)) continue;
      const ChainMap& xe = x.edge(vert, cf.to);
      auto pad_edge = [&](const ZComplex& s, const ZComplex& t) {
        ChainMap m{s, t, {}};
        for (Index deg = std::min(s.lo(), t.lo()); deg <= std::max(s.hi(), t.hi()); ++deg) {
          if (s.rank(deg) == 0 || t.rank(deg) == 0) continue;
          MatrixXZ blk = zeros(t.rank(deg), s.rank(deg));
          blk.block(0, 0, xe.dst.rank(deg), xe.src.rank(deg)) = xe.comp(deg);
          /* identity on the pads */
          Index sr = xe.src.rank(deg), tr = xe.dst.rank(deg);
          Index pads = s.rank(deg) - sr;
          blk.block(tr, sr, pads, pads) = identity(pads);
          m.comps[deg] = blk;
        }
        return m;
      };
      u.edges[edge_key(vert, cf.to)] = pad_edge(u.vertices[vert.str()], u.vertices[cf.to.str()]);
      v.edges[edge_key(vert, cf.to)] = pad_edge(v.vertices[vert.str()], v.vertices[cf.to.str()]);
      uv.edges[edge_key(vert, cf.to)] =
          pad_edge(uv.vertices[vert.str()], uv.vertices[cf.to.str()]);
    }
  u.validate();
  v.validate();
  uv.validate();
  MvReport rep2 = mayer_vietoris_check(x, u, v, uv, xu, xv, uuv, vuv);
  CHECK(rep2.ok());
}

TEST_CASE("global complexes compare against the assembly") {
  AugmentationComparison id = augmentation_comparison(identity_square_doc());
  CHECK(id.acyclic);
  CHECK(id.global_map_is_qiso);
  CHECK(id.agree());

  AugmentationComparison blowup = augmentation_comparison(blowup_model(p2_point_blowup()).front_square);
  CHECK(blowup.acyclic);
  CHECK(blowup.global_map_is_qiso);

  /* a square that fails the descent condition */
  HyperresolutionDoc broken = identity_square_doc();
  ZComplex z = point_complex();
  CubicalDiagram aug = *broken.augmented;
  aug.vertices["11"] = ZComplex::single(0, 2);
  aug.edges["10->11"] = ChainMap{z, aug.vertices["11"], {{0, mat({{1}, {0}})}}};
  aug.edges["01->11"] = ChainMap{z, aug.vertices["11"], {{0, mat({{1}, {0}})}}};
  aug.validate();
  broken.augmented = aug;
  broken.diagram.vertices["11"] = aug.vertices["11"];
  broken.diagram.edges["10->11"] = aug.edges["10->11"];
  broken.diagram.edges["01->11"] = aug.edges["01->11"];
  AugmentationComparison bad = augmentation_comparison(broken);
  CHECK(!bad.acyclic);
  CHECK(!bad.global_map_is_qiso);
  CHECK(bad.agree());
}

TEST_CASE("tower criterion agrees on blow-up squares") {
  BlowupReport rep = blowup_model(p2_point_blowup());
  F2Verdict v = f2_tower_criterion(*rep.front_square.augmented);
  CHECK(v.e2_acyclic);
  CHECK(v.rows_exact);
  CHECK(v.agree());
}

TEST_CASE("assembled homology vanishes below minus the cube size") {
  Rng rng(91);
  for (int t = 0; t < 5; ++t) {
    int n = 1 + static_cast<int>(rng.below(2));
    DiagramBounds b;
    b.deg_lo = 0;
    b.deg_hi = 2;
    CubicalDiagram x = random_diagram(rng, CubeIndex{n, false}, b);
    SimpleResult s = simple(x);
    for (Index q = s.total.lo() - 1; q < -n; ++q) CHECK(homology(s.total, q).is_trivial());
    CHECK(s.total.lo() >= -n);
  }
}
