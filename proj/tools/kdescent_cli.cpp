#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kdescent/generator.hpp"
#include "kdescent/hyperres.hpp"
#include "kdescent/json_io.hpp"
#include "kdescent/report.hpp"

using namespace kdescent;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void add_input(RunReport& rep, const std::string& path) {
  /* reports carry the file name, not the full path, so identical inputs give
   * identical bytes regardless of the checkout location */
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  rep.inputs.push_back({base, sha256_hex(read_file(path))});
}

std::pair<Index, Index> parse_range(const std::string& spec) {
  auto dots = spec.find("..");
  if (dots == std::string::npos)
    throw ValidationError("--range", "expected a..b");
  Index a = std::stoll(spec.substr(0, dots));
  Index b = std::stoll(spec.substr(dots + 2));
  if (a > b) throw ValidationError("--range", "empty range");
  return {a, b};
}

int finish(RunReport& rep, const std::string& format, const std::string& out_path,
           long long ms, int code) {
  rep.timing_ms = ms;
  std::string bytes = emit(rep, format);
  if (out_path.empty()) {
    std::cout << bytes;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << bytes;
  }
  std::cerr << rep.command << ": " << ms << " ms\n";
  return code;
}

std::string group_str(const FgAbGroup& g) { return g.to_string(); }

Json kd_rows_json(const KdReport& rep) {
  Json rows = Json::array();
  for (const auto& row : rep.rows) {
    Json r = Json::object();
    r["n"] = row.n;
    r["group"] = group_to_json(row.group);
    Json graded = Json::array();
    for (const auto& g : row.graded) graded.push_back(group_to_json(g));
    r["weights"] = std::move(graded);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cubical-descent assembly of K-theory surrogates"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  std::string out_path;
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out_path, "write the report to a file");

  std::string range_spec;
  int pages = 0;
  std::uint64_t seed = 1;
  int max_cube = 2;

  auto* c_validate = app.add_subcommand("validate", "parse and validate a document");
  std::string validate_path;
  c_validate->add_option("path", validate_path)->required();

  auto* c_simple = app.add_subcommand("simple", "assemble the descent complex and its homology");
  std::string simple_path;
  c_simple->add_option("path", simple_path)->required();
  c_simple->add_option("--range", range_spec, "degree range a..b");

  auto* c_ss = app.add_subcommand("ss", "spectral-sequence pages of the weight filtration");
  std::string ss_path;
  c_ss->add_option("path", ss_path)->required();
  c_ss->add_option("--pages", pages, "compute pages 1..r");
  c_ss->add_option("--range", range_spec, "abutment degree range a..b");

  auto* c_kd = app.add_subcommand("kd", "descent K-groups with their weight pieces");
  std::string kd_path;
  c_kd->add_option("path", kd_path)->required();
  c_kd->add_option("--range", range_spec, "degree range a..b");

  auto* c_kdc = app.add_subcommand("kdc", "compactly supported groups of a pair");
  std::string kdc_path;
  c_kdc->add_option("path", kdc_path)->required();
  c_kdc->add_option("--range", range_spec, "degree range a..b");

  auto* c_blowup = app.add_subcommand("blowup", "verify a blow-up decomposition model");
  std::string blowup_path;
  c_blowup->add_option("path", blowup_path)->required();

  auto* c_compare = app.add_subcommand("compare", "compare two documents of one variety");
  std::string cmp_a, cmp_b;
  c_compare->add_option("first", cmp_a)->required();
  c_compare->add_option("second", cmp_b)->required();
  c_compare->add_option("--range", range_spec, "degree range a..b");

  auto* c_axioms = app.add_subcommand("check-axioms", "randomized descent-axiom suite");
  c_axioms->add_option("--seed", seed, "random seed");
  c_axioms->add_option("--max-cube", max_cube, "largest cube dimension");

  auto* c_f2 = app.add_subcommand("f2", "two-sided tower criterion on a corpus of squares");
  std::string f2_path;
  c_f2->add_option("path", f2_path, "optional corpus file");
  c_f2->add_option("--seed", seed, "random seed");

  CLI11_PARSE(app, argc, argv);
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&]() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
  };

  try {
    if (*c_validate) {
      RunReport rep;
      rep.command = "validate";
      add_input(rep, validate_path);
      Json j = load_json_file(validate_path);
      std::string kind = detect_kind(j);
      std::string name;
      if (kind == "doc") name = doc_from_json(j).name;
      else if (kind == "tower") { tower_from_json(j); name = "tower"; }
      else if (kind == "blowup") name = blowup_from_json(j).name;
      else {
        CompactSupportInput in = pair_from_json(j);
        in.xbar.validate();
        if (in.y) in.y->validate();
        name = in.name;
      }
      rep.results["kind"] = kind;
      rep.results["name"] = name;
      rep.results["valid"] = true;
      rep.text = "valid " + kind + " '" + name + "'\n";
      return finish(rep, format, out_path, elapsed(), 0);
    }

    if (*c_simple) {
      RunReport rep;
      rep.command = "simple";
      add_input(rep, simple_path);
      HyperresolutionDoc doc = doc_from_json(load_json_file(simple_path));
      SimpleResult s = assemble_kd(doc);
      Index lo = s.total.lo(), hi = s.total.hi();
      if (!range_spec.empty()) std::tie(lo, hi) = parse_range(range_spec);
      Json groups = Json::array();
      std::vector<std::vector<std::string>> rows;
      for (Index n = lo; n <= hi; ++n) {
        FgAbGroup g = homology(s.total, n);
        Json e = Json::object();
        e["n"] = n;
        e["group"] = group_to_json(g);
        groups.push_back(std::move(e));
        rows.push_back({std::to_string(n), group_str(g)});
      }
      rep.results["name"] = doc.name;
      rep.results["groups"] = std::move(groups);
      rep.text = "assembled complex of '" + doc.name + "'\n" +
                 render_table({"n", "H_n"}, rows);
      return finish(rep, format, out_path, elapsed(), 0);
    }

    if (*c_ss) {
      RunReport rep;
      rep.command = "ss";
      add_input(rep, ss_path);
      HyperresolutionDoc doc = doc_from_json(load_json_file(ss_path));
      FiltrationPieces fp = filtration_pieces(doc.diagram);
      int r_max = pages > 0 ? pages : stable_page_index(fp.filtered);
      bool have_range = !range_spec.empty();
      Index rlo = 0, rhi = 0;
      if (have_range) std::tie(rlo, rhi) = parse_range(range_spec);
      Json pages_json = Json::array();
      std::string text = "weight spectral sequence of '" + doc.name + "'\n";
      for (int r = 1; r <= r_max; ++r) {
        PageData pd = spectral_page(fp.filtered, r);
        Json pj = Json::object();
        pj["r"] = r;
        Json entries = Json::array();
        std::vector<std::vector<std::string>> rows;
        for (const auto& [key, pres] : pd.pres) {
          auto [p, q] = key;
          if (have_range && (q - p < rlo || q - p > rhi)) continue;
          FgAbGroup g = pres.normal_form();
          if (g.is_trivial()) continue;
          Json e = Json::object();
          e["p"] = p;
          e["q"] = q;
          e["rank"] = g.rank;
          Json tor = Json::array();
          for (const Integer& d : g.torsion) tor.push_back(d.to_int64());
          e["torsion"] = std::move(tor);
          entries.push_back(std::move(e));
          rows.push_back({std::to_string(p), std::to_string(q), group_str(g)});
        }
        Json diffs = Json::array();
        for (const auto& [key, mat] : pd.d) {
          auto [p, q] = key;
          if (is_zero(mat)) continue;
          Json e = Json::object();
          e["p"] = p;
          e["q"] = q;
          e["matrix"] = matrix_to_json(mat);
          diffs.push_back(std::move(e));
        }
        pj["entries"] = std::move(entries);
        pj["d"] = std::move(diffs);
        pages_json.push_back(std::move(pj));
        text += "page r=" + std::to_string(r) + "\n" + render_table({"p", "q", "E_r"}, rows);
      }
      rep.results["name"] = doc.name;
      rep.results["pages"] = std::move(pages_json);
      rep.text = text;
      return finish(rep, format, out_path, elapsed(), 0);
    }

    if (*c_kd) {
      RunReport rep;
      rep.command = "kd";
      add_input(rep, kd_path);
      HyperresolutionDoc doc = doc_from_json(load_json_file(kd_path));
      SimpleResult s = assemble_kd(doc);
      Index lo = std::min<Index>(s.total.lo(), -doc.dimension - 1), hi = s.total.hi();
      if (!range_spec.empty()) std::tie(lo, hi) = parse_range(range_spec);
      KdReport kd = kd_groups_and_weights(doc, lo, hi);
      rep.results["name"] = doc.name;
      rep.results["dimension"] = doc.dimension;
      rep.results["rows"] = kd_rows_json(kd);
      rep.results["vanishing_below_negative_dimension"] = kd.vanishing_ok;
      if (!kd.vanishing_ok) {
        Json fails = Json::array();
        for (Index n : kd.vanishing_failures) fails.push_back(n);
        rep.results["vanishing_witness_degrees"] = std::move(fails);
      }
      std::vector<std::vector<std::string>> rows;
      for (const auto& row : kd.rows) {
        std::string weights;
        for (size_t p = 0; p < row.graded.size(); ++p) {
          if (row.graded[p].is_trivial()) continue;
          if (!weights.empty()) weights += ", ";
          weights += "w" + std::to_string(p) + "=" + group_str(row.graded[p]);
        }
        rows.push_back({std::to_string(row.n), group_str(row.group), weights});
      }
      rep.text = "descent K-groups of '" + doc.name + "'\n" +
                 render_table({"n", "KD_n", "weights"}, rows) +
                 (kd.vanishing_ok ? "vanishing below -dimension: ok\n"
                                  : "vanishing below -dimension: VIOLATED\n");
      return finish(rep, format, out_path, elapsed(), kd.vanishing_ok ? 0 : 2);
    }

    if (*c_kdc) {
      RunReport rep;
      rep.command = "kdc";
      add_input(rep, kdc_path);
      CompactSupportInput in = pair_from_json(load_json_file(kdc_path));
      CompactSupportResult r =
          assemble_compact_support(in.xbar, in.y ? &*in.y : nullptr, in.restriction);
      Index lo = r.complex.lo(), hi = r.complex.hi();
      if (!range_spec.empty()) std::tie(lo, hi) = parse_range(range_spec);
      Json groups = Json::array();
      std::vector<std::vector<std::string>> rows;
      for (Index n = lo; n <= hi; ++n) {
        FgAbGroup g = homology(r.complex, n);
        Json e = Json::object();
        e["n"] = n;
        e["group"] = group_to_json(g);
        groups.push_back(std::move(e));
        rows.push_back({std::to_string(n), group_str(g)});
      }
      rep.results["name"] = in.name;
      rep.results["groups"] = std::move(groups);
      rep.results["boundary_sequence_exact"] = r.les_exact;
      Json fails = Json::array();
      for (const auto& f : r.failures) fails.push_back(f);
      rep.results["failures"] = std::move(fails);
      rep.text = "compactly supported groups of '" + in.name + "'\n" +
                 render_table({"n", "Kc_n"}, rows) +
                 (r.les_exact ? "boundary sequence: exact\n" : "boundary sequence: NOT exact\n");
      return finish(rep, format, out_path, elapsed(), r.les_exact ? 0 : 2);
    }

    if (*c_blowup) {
      RunReport rep;
      rep.command = "blowup";
      add_input(rep, blowup_path);
      BlowupData data = blowup_from_json(load_json_file(blowup_path));
      BlowupReport br = blowup_model(data);
      rep.results["name"] = br.name;
      rep.results["square_commutes"] = br.square_commutes;
      rep.results["cube_acyclic"] = br.cube_acyclic;
      rep.results["front_square_acyclic"] = br.front_acyclic;
      Json ses = Json::array();
      std::vector<std::vector<std::string>> rows;
      for (const auto& [n, exact] : br.ses_exact) {
        Json e = Json::object();
        e["degree"] = n;
        e["exact"] = exact;
        const auto& rk = br.ranks.at(n);
        e["ranks"] = Json::array({rk[0], rk[1], rk[2], rk[3]});
        ses.push_back(std::move(e));
        rows.push_back({std::to_string(n),
                        "0 -> Z^" + std::to_string(rk[0]) + " -> Z^" +
                            std::to_string(rk[1] + rk[2]) + " -> Z^" + std::to_string(rk[3]) +
                            " -> 0",
                        exact ? "exact" : "NOT exact"});
      }
      rep.results["sequences"] = std::move(ses);
      rep.text = "blow-up model '" + br.name + "'\n" +
                 std::string("decomposition square: commutes\n") +
                 (br.cube_acyclic ? "augmented cube: acyclic\n" : "augmented cube: NOT acyclic\n") +
                 (br.front_acyclic ? "front square: acyclic\n" : "front square: NOT acyclic\n") +
                 render_table({"degree", "sequence", "verdict"}, rows);
      return finish(rep, format, out_path, elapsed(), br.ok() ? 0 : 2);
    }

    if (*c_compare) {
      RunReport rep;
      rep.command = "compare";
      add_input(rep, cmp_a);
      add_input(rep, cmp_b);
      HyperresolutionDoc a = doc_from_json(load_json_file(cmp_a));
      HyperresolutionDoc b = doc_from_json(load_json_file(cmp_b));
      Index lo = -std::max(a.dimension, b.dimension) - 1, hi = 1;
      if (!range_spec.empty()) std::tie(lo, hi) = parse_range(range_spec);
      CompareReport cr = compare_hyperresolutions(a, b, lo, hi);
      Json rows_json = Json::array();
      std::vector<std::vector<std::string>> rows;
      for (const auto& row : cr.rows) {
        Json e = Json::object();
        e["n"] = row.n;
        e["left"] = group_to_json(row.left);
        e["right"] = group_to_json(row.right);
        e["groups_match"] = row.groups_match;
        e["weights_match"] = row.graded_match;
        rows_json.push_back(std::move(e));
        rows.push_back({std::to_string(row.n), group_str(row.left), group_str(row.right),
                        row.groups_match && row.graded_match ? "match" : "MISMATCH"});
      }
      rep.results["left"] = a.name;
      rep.results["right"] = b.name;
      rep.results["rows"] = std::move(rows_json);
      rep.results["all_isomorphic"] = cr.all_match;
      rep.text = "comparison of '" + a.name + "' and '" + b.name + "'\n" +
                 render_table({"n", a.name, b.name, "verdict"}, rows) +
                 (cr.all_match ? "all groups and weight pieces isomorphic\n"
                               : "documents disagree\n");
      return finish(rep, format, out_path, elapsed(), 0);
    }

    if (*c_axioms) {
      RunReport rep;
      rep.command = "check-axioms";
      AxiomCheckOptions opt;
      opt.seed = seed;
      opt.max_cube = max_cube;
      AxiomReport ar = verify_descent_axioms(opt);
      rep.results["seed"] = seed;
      rep.results["max_cube"] = max_cube;
      rep.results["count"] = opt.count;
      rep.results["product_checked"] = ar.product_checked;
      rep.results["factorization_checked"] = ar.factorization_checked;
      rep.results["exactness_checked"] = ar.exactness_checked;
      rep.results["acyclicity_checked"] = ar.acyclicity_checked;
      rep.results["simples_built"] = ar.simples_built;
      Json fails = Json::array();
      for (const auto& f : ar.failures) fails.push_back(f);
      rep.results["failures"] = std::move(fails);
      rep.text = "descent axiom suite: seed " + std::to_string(seed) + ", " +
                 std::to_string(opt.count) + " diagrams\n" +
                 "product " + std::to_string(ar.product_checked) + ", factorization " +
                 std::to_string(ar.factorization_checked) + ", exactness " +
                 std::to_string(ar.exactness_checked) + ", acyclicity " +
                 std::to_string(ar.acyclicity_checked) + "\n" +
                 (ar.ok() ? "all checks passed\n"
                          : std::to_string(ar.failures.size()) + " failures\n");
      for (const auto& f : ar.failures) rep.text += "  " + f + "\n";
      return finish(rep, format, out_path, elapsed(), ar.ok() ? 0 : 2);
    }

    if (*c_f2) {
      RunReport rep;
      rep.command = "f2";
      std::vector<std::pair<std::string, CubicalDiagram>> corpus;
      if (!f2_path.empty()) {
        add_input(rep, f2_path);
        Json j = load_json_file(f2_path);
        if (j.contains("squares")) {
          int i = 0;
          for (const auto& sq : j["squares"]) {
            HyperresolutionDoc doc = doc_from_json(sq);
            if (!doc.augmented)
              throw ValidationError(doc.name, "criterion squares need an augmentation");
            corpus.push_back({doc.name.empty() ? "square-" + std::to_string(i) : doc.name,
                              *doc.augmented});
            ++i;
          }
        } else {
          HyperresolutionDoc doc = doc_from_json(j);
          if (!doc.augmented)
            throw ValidationError(doc.name, "criterion squares need an augmentation");
          corpus.push_back({doc.name, *doc.augmented});
        }
      } else {
        corpus = f2_standard_corpus(seed, 50);
      }
      Json rows_json = Json::array();
      std::vector<std::vector<std::string>> rows;
      bool all_agree = true;
      std::string witness;
      for (const auto& [name, sq] : corpus) {
        F2Verdict v = f2_tower_criterion(sq);
        Json e = Json::object();
        e["square"] = name;
        e["tower_side"] = v.e2_acyclic;
        e["sequence_side"] = v.rows_exact;
        e["agree"] = v.agree();
        rows_json.push_back(std::move(e));
        rows.push_back({name, v.e2_acyclic ? "acyclic" : "not acyclic",
                        v.rows_exact ? "exact" : "not exact", v.agree() ? "agree" : "DISAGREE"});
        if (!v.agree()) {
          all_agree = false;
          if (witness.empty()) witness = name;
        }
      }
      rep.results["count"] = corpus.size();
      rep.results["rows"] = std::move(rows_json);
      rep.results["all_agree"] = all_agree;
      if (!all_agree) rep.results["witness"] = witness;
      rep.text = "tower criterion corpus (" + std::to_string(corpus.size()) + " squares)\n" +
                 render_table({"square", "tower side", "sequence side", "verdict"}, rows) +
                 (all_agree ? "both sides agree on every square\n"
                            : "DISAGREEMENT at " + witness + "\n");
      return finish(rep, format, out_path, elapsed(), all_agree ? 0 : 2);
    }
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
