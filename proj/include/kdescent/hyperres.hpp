#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kdescent/filtration.hpp"

/* The application layer: hyperresolution documents whose vertices carry
 * degreewise surrogates for K-groups, assembly of the descent complex and
 * its weight data, blow-up models in the style of the projective-bundle and
 * blow-up decompositions, compactly supported variants, and document
 * comparison. */

namespace kdescent {

struct HyperresolutionDoc {
  std::string name;
  int dimension = 1; /* ambient variety dimension */
  CubicalDiagram diagram;
  std::map<std::string, std::string> labels;
  std::optional<CubicalDiagram> augmented;

  int cube() const { return diagram.index.n; }
  void validate() const;
};

SimpleResult assemble_kd(const HyperresolutionDoc& doc);

struct KdRow {
  Index n;
  FgAbGroup group;
  std::vector<FgAbGroup> graded; /* by weight 0..cube */
};

struct KdReport {
  std::string name;
  std::vector<KdRow> rows;
  bool vanishing_ok = true; /* KD_n = 0 below -dimension */
  std::vector<Index> vanishing_failures;
};

KdReport kd_groups_and_weights(const HyperresolutionDoc& doc, Index lo, Index hi);

/* ---------- blow-up models ---------- */

struct BlowupData {
  std::string name;
  int codim = 1;     /* d */
  int dimension = 1; /* of the blown-up variety, for document metadata */
  std::map<Index, Index> kx_ranks, ky_ranks;
  std::map<Index, MatrixXZ> istar;  /* K_n(X) -> K_n(Y) */
  std::map<Index, MatrixXZ> ell;    /* action of the tautological class on K_n(Ytilde) */
  std::map<Index, MatrixXZ> lambda; /* multiplication by the exceptional conormal class */
  void validate() const;
};

struct BlowupReport {
  std::string name;
  bool square_commutes = false;
  bool cube_acyclic = false;
  bool front_acyclic = false;
  std::map<Index, bool> ses_exact;
  std::map<Index, std::array<Index, 4>> ranks; /* KX, KXt, KY, KYt per degree */
  HyperresolutionDoc front_square;
  bool ok() const {
    if (!square_commutes || !cube_acyclic || !front_acyclic) return false;
    for (const auto& [n, e] : ses_exact)
      if (!e) return false;
    return true;
  }
};

/* Builds the decomposition square from the supplied intersection data and
 * verifies it: the two routes to the pushforward column (via the
 * tautological-class action and via the conormal multiplication) must agree,
 * the augmented three-cube and its front square must be acyclic, and the
 * degreewise sequences 0 -> K(X) -> K(Xt) ⊕ K(Y) -> K(Yt) -> 0 must be
 * exact.  Inconsistent data is rejected. */
BlowupReport blowup_model(const BlowupData& b);

/* ---------- exact sequences ---------- */

struct LesReport {
  std::vector<Index> degrees;
  std::map<Index, FgAbGroup> base, middle, corner;
  std::map<Index, bool> exact_at_base, exact_at_middle, exact_at_corner;
  std::map<Index, bool> connecting_zero;
  bool exact = true;
  std::vector<std::string> failures;
};

/* the long exact sequence tying the assembled group of a square document to
 * its weight-one part and its corner */
LesReport acyclic_square_sequence(const HyperresolutionDoc& doc);

struct RestrictionSpec {
  std::vector<int> positions; /* empty means the identity on the index */
  std::map<std::string, std::map<Index, MatrixXZ>> components;
};

struct CompactSupportResult {
  ZComplex complex;
  std::map<Index, FgAbGroup> groups;
  bool les_exact = true;
  std::vector<std::string> failures;
};

/* fiber of the restriction map between assembled complexes; the boundary
 * long exact sequence is verified node by node */
CompactSupportResult assemble_compact_support(const HyperresolutionDoc& xbar,
                                              const HyperresolutionDoc* y,
                                              const RestrictionSpec& restriction);

struct CompareRow {
  Index n;
  FgAbGroup left, right;
  bool groups_match = false;
  std::vector<std::pair<FgAbGroup, FgAbGroup>> graded;
  bool graded_match = false;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  bool all_match = true;
};

CompareReport compare_hyperresolutions(const HyperresolutionDoc& a, const HyperresolutionDoc& b,
                                       Index lo, Index hi);

struct MvReport {
  std::map<std::string, bool> vertex_acyclic;
  bool total_acyclic = false;
  bool ok() const {
    if (!total_acyclic) return false;
    for (const auto& [k, v] : vertex_acyclic)
      if (!v) return false;
    return true;
  }
};

/* covering square of documents: each vertex square must be homotopy
 * cartesian and then so is the assembled square */
MvReport mayer_vietoris_check(const CubicalDiagram& x, const CubicalDiagram& u,
                              const CubicalDiagram& v, const CubicalDiagram& uv,
                              const std::map<std::string, ChainMap>& x_to_u,
                              const std::map<std::string, ChainMap>& x_to_v,
                              const std::map<std::string, ChainMap>& u_to_uv,
                              const std::map<std::string, ChainMap>& v_to_uv);

struct AugmentationComparison {
  bool acyclic = false;
  bool global_map_is_qiso = false;
  bool agree() const { return acyclic == global_map_is_qiso; }
};

/* for documents carrying a global complex over the augmentation vertex */
AugmentationComparison augmentation_comparison(const HyperresolutionDoc& doc);

/* ---------- built-in documents ---------- */

ZComplex point_complex();
ZComplex projective_space_complex(int n);

HyperresolutionDoc point_doc();
HyperresolutionDoc p1_doc();
HyperresolutionDoc nodal_doc();
HyperresolutionDoc cusp_doc();
HyperresolutionDoc nodal_cube2_doc(); /* the nodal square with a duplicated row */
HyperresolutionDoc identity_square_doc();
BlowupData p2_point_blowup();
BlowupData p3_line_blowup();

/* compact-support input pairs */
struct CompactSupportInput {
  HyperresolutionDoc xbar;
  std::optional<HyperresolutionDoc> y;
  RestrictionSpec restriction;
  std::string name;
};
CompactSupportInput affine_line_pair();    /* projective line minus a point */
CompactSupportInput punctured_line_pair(); /* projective line minus two points */

/* criterion corpus: the blow-up squares, an identity square, a deliberately
 * broken square, and seeded random squares (half of them acyclic by
 * construction) */
std::vector<std::pair<std::string, CubicalDiagram>> f2_standard_corpus(std::uint64_t seed,
                                                                       int count);

}  // namespace kdescent
