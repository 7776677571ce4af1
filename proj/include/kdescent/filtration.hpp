#pragma once

#include <map>
#include <vector>

#include "kdescent/diagram.hpp"
#include "kdescent/tower.hpp"

/* The spectral sequence of a finite decreasing filtration by subcomplexes,
 * computed exactly from lattices: Z_r^{p} = { x in F_p : dx in F_{p+r} },
 * E_r^{p} = Z_r^{p} / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}), with d_r induced
 * by the differential on representatives.  Indexing follows the weight
 * convention E_r^{pq} with chain degree q - p, so d_r : (p,q) ->
 * (p+r, q+r-1).  The weight filtration of a simple places the summands of
 * weight > p in F_p; towers are filtered by the kernels of the projections
 * from the limit. */

namespace kdescent {

struct FilteredComplex {
  ZComplex total;
  int p_max = 0;
  std::map<int, std::map<Index, MatrixXZ>> bases; /* stored for p = 1..p_max */

  MatrixXZ basis(int p, Index m) const;
  void validate() const;
};

struct PageEntry {
  int p;
  Index q;
  FgAbGroup group;
};

struct PageDiff {
  int p;
  Index q; /* source position; target is (p+r, q+r-1) */
  MatrixXZ matrix;
};

struct SSPage {
  int r = 1;
  std::vector<PageEntry> entries;
  std::vector<PageDiff> differentials;
  FgAbGroup group(int p, Index q) const;
};

/* presentation-level page, for oracle checks and induced maps */
struct PageData {
  int r = 1;
  std::map<std::pair<int, Index>, Presentation> pres;        /* key (p, q) */
  std::map<std::pair<int, Index>, MatrixXZ> gen_lattice;     /* Z_r basis, total coords */
  std::map<std::pair<int, Index>, MatrixXZ> d;               /* d_r on presentations */
  SSPage page() const;
};

PageData spectral_page(const FilteredComplex& f, int r);
std::vector<SSPage> spectral_pages(const FilteredComplex& f, int r_max);
int stable_page_index(const FilteredComplex& f);

struct WeightFiltration {
  FgAbGroup abutment;
  std::vector<FgAbGroup> subgroups; /* G_0 ⊇ G_1 ⊇ ... ⊇ G_{p_max+1} = 0 */
  std::vector<FgAbGroup> graded;    /* G_p / G_{p+1} for p = 0..p_max */
};

WeightFiltration abutment_filtration(const FilteredComplex& f, Index n);

/* every E_infinity entry equals the matching graded piece, exactly */
bool convergence_certificate(const FilteredComplex& f, std::string* diagnostic = nullptr);

FilteredComplex weight_filtered(const SimpleResult& s, int cube_dimension);
FilteredComplex tower_filtered(const Tower& t);

/* vertices of weight above p+1 replaced by zero */
CubicalDiagram weight_truncation(const CubicalDiagram& x, int p);

struct FiltrationPieces {
  SimpleResult total;
  FilteredComplex filtered;
  std::vector<CubicalDiagram> truncations; /* F^p X for p = 0..n */
  Tower quotient_tower;                    /* s(F^0 X) <- ... <- s(F^n X) reversed as stages */
};

FiltrationPieces filtration_pieces(const CubicalDiagram& x);

/* first page assembled directly from vertex homology with signed edge maps */
struct DirectE1 {
  std::map<std::pair<int, Index>, Presentation> pres;
  std::map<std::pair<int, Index>, MatrixXZ> d1;
  std::map<std::pair<int, Index>, std::vector<std::pair<std::string, Index>>> blocks;
  FgAbGroup group(int p, Index q) const;
};

DirectE1 e1_page(const CubicalDiagram& x);

}  // namespace kdescent
