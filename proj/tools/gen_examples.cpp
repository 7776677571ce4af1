#include <filesystem>
#include <fstream>
#include <iostream>

#include "kdescent/filtration.hpp"
#include "kdescent/hyperres.hpp"
#include "kdescent/json_io.hpp"

using namespace kdescent;

/* Regenerates the example corpus under data/.  The documents are also
 * available programmatically; this keeps the shipped files in sync with the
 * builders. */

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);

  auto write = [&](const std::string& name, const Json& j) {
    std::ofstream out(dir / name, std::ios::binary);
    out << j.dump(2) << "\n";
    std::cout << (dir / name).string() << "\n";
  };

  write("point.json", doc_to_json(point_doc()));
  write("p1.json", doc_to_json(p1_doc()));
  write("nodal.json", doc_to_json(nodal_doc()));
  write("cusp.json", doc_to_json(cusp_doc()));
  write("nodal_cube2.json", doc_to_json(nodal_cube2_doc()));
  write("identity_square.json", doc_to_json(identity_square_doc()));

  {
    HyperresolutionDoc u = nodal_doc();
    u.name = "nodal-and-cusp";
    u.diagram = product_diagram(nodal_doc().diagram, cusp_doc().diagram);
    u.labels.clear();
    write("union_nodal_cusp.json", doc_to_json(u));
  }

  write("p2_point.json", blowup_to_json(p2_point_blowup()));
  write("p3_line.json", blowup_to_json(p3_line_blowup()));
  write("p2_point_square.json", doc_to_json(blowup_model(p2_point_blowup()).front_square));
  write("p3_line_square.json", doc_to_json(blowup_model(p3_line_blowup()).front_square));

  /* the weight quotient tower of the nodal square, as a tower document */
  write("nodal_tower.json",
        tower_to_json(filtration_pieces(nodal_doc().diagram).quotient_tower));

  write("affine_line.json", pair_to_json(affine_line_pair()));
  write("punctured_line.json", pair_to_json(punctured_line_pair()));
  {
    CompactSupportInput whole;
    whole.name = "no-boundary";
    whole.xbar = p1_doc();
    write("p1_no_boundary.json", pair_to_json(whole));
  }
  return 0;
}
