#include "kdescent/json_io.hpp"

#include <fstream>

namespace kdescent {

namespace {

Json integer_to_json(const Integer& v) {
  if (v.fits_int64()) return Json(v.to_int64());
  return Json(v.to_string());
}

Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(static_cast<long long>(j.get<std::int64_t>()));
  if (j.is_string()) return Integer(j.get<std::string>());
  throw ValidationError(where, "expected an integer or a decimal string");
}

std::map<Index, MatrixXZ> degree_map_from_json(const Json& j, const std::string& where) {
  std::map<Index, MatrixXZ> out;
  if (!j.is_object()) throw ValidationError(where, "expected an object keyed by degree");
  for (const auto& [key, val] : j.items())
    out[static_cast<Index>(std::stoll(key))] = matrix_from_json(val, where + "[" + key + "]");
  return out;
}

Json degree_map_to_json(const std::map<Index, MatrixXZ>& comps) {
  Json j = Json::object();
  for (const auto& [m, mat] : comps) {
    if (mat.rows() == 0 || mat.cols() == 0) continue;
    j[std::to_string(m)] = matrix_to_json(mat);
  }
  return j;
}

}  // namespace

Json matrix_to_json(const MatrixXZ& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(integer_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXZ matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where, "expected an array of rows");
  Index rows = static_cast<Index>(j.size());
  Index cols = rows == 0 ? 0 : static_cast<Index>(j[0].size());
  MatrixXZ m = zeros(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Index>(j[i].size()) != cols)
      throw ValidationError(where, "row " + std::to_string(i) + " has inconsistent length");
    for (Index k = 0; k < cols; ++k)
      m(i, k) = integer_from_json(j[i][k], where + "(" + std::to_string(i) + "," +
                                               std::to_string(k) + ")");
  }
  return m;
}

Json complex_to_json(const ZComplex& c) {
  Json j = Json::object();
  j["lo"] = c.lo();
  j["hi"] = c.hi();
  Json ranks = Json::array();
  for (Index m = c.lo(); m <= c.hi(); ++m) ranks.push_back(c.rank(m));
  j["ranks"] = std::move(ranks);
  Json d = Json::object();
  for (Index m = c.lo() + 1; m <= c.hi(); ++m) {
    MatrixXZ dm = c.diff(m);
    if (dm.rows() == 0 || dm.cols() == 0 || is_zero(dm)) continue;
    d[std::to_string(m)] = matrix_to_json(dm);
  }
  j["d"] = std::move(d);
  return j;
}

ZComplex complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where, "expected a complex object");
  if (!j.contains("lo") || !j.contains("hi") || !j.contains("ranks"))
    throw ValidationError(where, "complex needs lo, hi and ranks");
  Index lo = j["lo"].get<Index>();
  Index hi = j["hi"].get<Index>();
  std::vector<Index> ranks;
  for (const auto& r : j["ranks"]) ranks.push_back(r.get<Index>());
  if (hi - lo + 1 != static_cast<Index>(ranks.size()))
    throw ValidationError(where, "ranks length disagrees with the degree range");
  std::map<Index, MatrixXZ> diffs;
  if (j.contains("d")) diffs = degree_map_from_json(j["d"], where + ".d");
  try {
    return ZComplex(lo, ranks, diffs);
  } catch (const ValidationError& e) {
    throw ValidationError(where, e.what());
  }
}

Json group_to_json(const FgAbGroup& g) {
  Json j = Json::object();
  j["rank"] = g.rank;
  Json t = Json::array();
  for (const Integer& d : g.torsion) t.push_back(integer_to_json(d));
  j["torsion"] = std::move(t);
  j["pretty"] = g.to_string();
  return j;
}

Json doc_to_json(const HyperresolutionDoc& doc) {
  Json j = Json::object();
  j["name"] = doc.name;
  j["dimension"] = doc.dimension;
  j["cube"] = doc.cube();
  Json verts = Json::object();
  for (const auto& v : doc.diagram.index.vertices()) {
    Json vj = Json::object();
    auto lit = doc.labels.find(v.str());
    vj["label"] = lit == doc.labels.end() ? "" : lit->second;
    vj["complex"] = complex_to_json(doc.diagram.vertex(v));
    verts[v.str()] = std::move(vj);
  }
  j["vertices"] = std::move(verts);
  Json edges = Json::object();
  for (const auto& [key, e] : doc.diagram.edges) edges[key] = degree_map_to_json(e.comps);
  j["edges"] = std::move(edges);
  if (doc.augmented) {
    CubeVertex zero{std::vector<std::uint8_t>(doc.augmented->index.tuple_length(), 0)};
    Json aug = Json::object();
    aug["complex"] = complex_to_json(doc.augmented->vertex(zero));
    Json maps = Json::object();
    for (const auto& v : doc.augmented->index.vertices()) {
      if (v.weight() != 1) continue;
      maps[v.str()] = degree_map_to_json(doc.augmented->edge(zero, v).comps);
    }
    aug["maps"] = std::move(maps);
    j["augmentation"] = std::move(aug);
  }
  return j;
}

HyperresolutionDoc doc_from_json(const Json& j) {
  HyperresolutionDoc doc;
  doc.name = j.value("name", "");
  doc.dimension = j.value("dimension", 1);
  if (!j.contains("cube")) throw ValidationError("document", "missing cube dimension");
  int n = j["cube"].get<int>();
  doc.diagram.index = CubeIndex{n, false};
  if (!j.contains("vertices")) throw ValidationError("document", "missing vertices");
  for (const auto& v : doc.diagram.index.vertices()) {
    if (!j["vertices"].contains(v.str()))
      throw ValidationError("vertex " + v.str(), "missing from the document");
    const Json& vj = j["vertices"][v.str()];
    doc.diagram.vertices[v.str()] =
        complex_from_json(vj.contains("complex") ? vj["complex"] : vj, "vertex " + v.str());
    if (vj.is_object() && vj.contains("label")) doc.labels[v.str()] = vj["label"];
  }
  for (const auto& v : doc.diagram.index.vertices())
    for (const auto& cf : cofaces(v)) {
      if (!doc.diagram.index.contains(cf.to)) continue;
      std::string key = edge_key(v, cf.to);
      if (!j.contains("edges") || !j["edges"].contains(key))
        throw ValidationError("edge " + key, "missing from the document");
      ChainMap e{doc.diagram.vertices[v.str()], doc.diagram.vertices[cf.to.str()],
                 degree_map_from_json(j["edges"][key], "edge " + key)};
      doc.diagram.edges[key] = std::move(e);
    }

  if (j.contains("augmentation")) {
    const Json& aug = j["augmentation"];
    CubicalDiagram full;
    full.index = CubeIndex{n, true};
    std::string zero_key(static_cast<size_t>(n + 1), '0');
    full.vertices = doc.diagram.vertices;
    full.vertices[zero_key] = complex_from_json(aug.at("complex"), "augmentation complex");
    full.edges = doc.diagram.edges;
    for (const auto& v : full.index.vertices()) {
      if (v.weight() != 1) continue;
      if (!aug.contains("maps") || !aug["maps"].contains(v.str()))
        throw ValidationError("augmentation", "missing map to vertex " + v.str());
      full.edges[zero_key + "->" + v.str()] =
          ChainMap{full.vertices[zero_key], full.vertices[v.str()],
                   degree_map_from_json(aug["maps"][v.str()], "augmentation map " + v.str())};
    }
    doc.augmented = std::move(full);
  }
  doc.validate();
  return doc;
}

Json tower_to_json(const Tower& t) {
  Json j = Json::object();
  j["length"] = t.length();
  j["stab"] = t.stab;
  Json stages = Json::array();
  for (const auto& s : t.stages) stages.push_back(complex_to_json(s));
  j["stages"] = std::move(stages);
  Json maps = Json::array();
  for (const auto& m : t.maps) maps.push_back(degree_map_to_json(m.comps));
  j["maps"] = std::move(maps);
  return j;
}

Tower tower_from_json(const Json& j) {
  Tower t;
  if (!j.contains("stages")) throw ValidationError("tower", "missing stages");
  for (size_t i = 0; i < j["stages"].size(); ++i)
    t.stages.push_back(complex_from_json(j["stages"][i], "stage " + std::to_string(i)));
  for (size_t i = 0; j.contains("maps") && i < j["maps"].size(); ++i) {
    if (i + 1 >= t.stages.size()) throw ValidationError("tower", "more maps than stages");
    t.maps.push_back(ChainMap{t.stages[i + 1], t.stages[i],
                              degree_map_from_json(j["maps"][i], "map " + std::to_string(i + 1))});
  }
  t.stab = j.value("stab", t.length());
  t.validate();
  return t;
}

Json blowup_to_json(const BlowupData& b) {
  Json j = Json::object();
  j["name"] = b.name;
  j["codim"] = b.codim;
  j["dimension"] = b.dimension;
  auto ranks = [](const std::map<Index, Index>& r) {
    Json out = Json::object();
    for (const auto& [n, v] : r) out[std::to_string(n)] = v;
    return out;
  };
  auto mats = [](const std::map<Index, MatrixXZ>& m) {
    Json out = Json::object();
    for (const auto& [n, v] : m) out[std::to_string(n)] = matrix_to_json(v);
    return out;
  };
  j["kx"] = ranks(b.kx_ranks);
  j["ky"] = ranks(b.ky_ranks);
  j["istar"] = mats(b.istar);
  j["ell"] = mats(b.ell);
  j["lambda"] = mats(b.lambda);
  return j;
}

BlowupData blowup_from_json(const Json& j) {
  BlowupData b;
  b.name = j.value("name", "");
  b.codim = j.value("codim", 1);
  b.dimension = j.value("dimension", 1);
  if (j.contains("kx"))
    for (const auto& [k, v] : j["kx"].items()) b.kx_ranks[std::stoll(k)] = v.get<Index>();
  if (j.contains("ky"))
    for (const auto& [k, v] : j["ky"].items()) b.ky_ranks[std::stoll(k)] = v.get<Index>();
  if (j.contains("istar"))
    for (const auto& [k, v] : j["istar"].items())
      b.istar[std::stoll(k)] = matrix_from_json(v, "istar[" + k + "]");
  if (j.contains("ell"))
    for (const auto& [k, v] : j["ell"].items())
      b.ell[std::stoll(k)] = matrix_from_json(v, "ell[" + k + "]");
  if (j.contains("lambda"))
    for (const auto& [k, v] : j["lambda"].items())
      b.lambda[std::stoll(k)] = matrix_from_json(v, "lambda[" + k + "]");
  b.validate();
  return b;
}

Json pair_to_json(const CompactSupportInput& in) {
  Json j = Json::object();
  j["name"] = in.name;
  j["xbar"] = doc_to_json(in.xbar);
  if (in.y) j["y"] = doc_to_json(*in.y);
  Json restr = Json::object();
  if (!in.restriction.positions.empty()) restr["positions"] = in.restriction.positions;
  Json comps = Json::object();
  for (const auto& [k, m] : in.restriction.components) comps[k] = degree_map_to_json(m);
  restr["components"] = std::move(comps);
  j["restriction"] = std::move(restr);
  return j;
}

CompactSupportInput pair_from_json(const Json& j) {
  CompactSupportInput in;
  in.name = j.value("name", "");
  if (!j.contains("xbar")) throw ValidationError("pair", "missing xbar document");
  in.xbar = doc_from_json(j["xbar"]);
  if (j.contains("y") && !j["y"].is_null()) in.y = doc_from_json(j["y"]);
  if (j.contains("restriction")) {
    const Json& r = j["restriction"];
    if (r.contains("positions"))
      for (const auto& p : r["positions"]) in.restriction.positions.push_back(p.get<int>());
    if (r.contains("components"))
      for (const auto& [k, v] : r["components"].items())
        in.restriction.components[k] = degree_map_from_json(v, "restriction at " + k);
  }
  return in;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path, "cannot open file");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError(path, std::string("malformed JSON: ") + e.what());
  }
  return j;
}

std::string detect_kind(const Json& j) {
  if (j.contains("xbar")) return "pair";
  if (j.contains("stages")) return "tower";
  if (j.contains("codim") || j.contains("kx")) return "blowup";
  if (j.contains("cube") && j.contains("vertices")) return "doc";
  throw ValidationError("document", "unrecognized document shape");
}

}  // namespace kdescent
