// qbmg: command-line front end for the 2-qBMG library.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbmg/qbmg.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace qbmg;

namespace {

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;
constexpr int kCapExceeded = 3;

json labels_json(const std::vector<VertexId>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(v.str());
  return a;
}

json partition_json(const ColoredDigraph& g, const Partition& p) {
  json a = json::array();
  for (const auto& block : partition_labels(g, p)) a.push_back(labels_json(block));
  return a;
}

json graph_json(const ColoredDigraph& g) {
  json edges = json::array();
  for (const auto& [t, h] : g.labeled_edges()) edges.push_back({t.str(), h.str()});
  return {{"U", labels_json(g.color_labels(Color::U))},
          {"W", labels_json(g.color_labels(Color::W))},
          {"edges", edges}};
}

json verdict_json(const Verdict& v) {
  json j = {{"holds", v.holds}};
  if (!v.holds) j["witness"] = labels_json(v.witness);
  return j;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string verdict_text(const Verdict& v) {
  if (v.holds) return "holds";
  std::string s = "fails at";
  for (const auto& x : v.witness) s += " " + x.str();
  return s;
}

/// Writes to `path`, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string path;
  bool json = false;
};

int cmd_check(const CheckArgs& a) {
  ColoredDigraph g = load_qbmg(a.path);
  AxiomReport r = axiom_report(g);
  Verdict star = satisfies_star(g);
  const bool thin = is_thin(g);
  if (a.json) {
    json j = {{"schema", 1},
              {"vertices", g.size()},
              {"edges", g.edge_count()},
              {"axioms",
               {{"N1", verdict_json(r.n1)},
                {"N2", verdict_json(r.n2)},
                {"N3", verdict_json(r.n3)},
                {"N3*", verdict_json(r.n3star)}}},
              {"star", verdict_json(star)},
              {"thin", thin},
              {"trivial",
               {{"N1", r.trivial.n1}, {"N2", r.trivial.n2}, {"N3", r.trivial.n3}, {"N", r.trivial.all()}}},
              {"proper", r.proper},
              {"is_2qbmg", r.is_2qbmg}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "vertices: " << g.size() << " (U: " << g.color_class(Color::U).size()
              << ", W: " << g.color_class(Color::W).size() << "), edges: " << g.edge_count() << '\n'
              << "(N1): " << verdict_text(r.n1) << '\n'
              << "(N2): " << verdict_text(r.n2) << '\n'
              << "(N3): " << verdict_text(r.n3) << '\n'
              << "(N3*): " << verdict_text(r.n3star) << '\n'
              << "(*): " << verdict_text(star) << '\n'
              << "thin: " << yes_no(thin) << '\n'
              << "trivial: N1 " << yes_no(r.trivial.n1) << ", N2 " << yes_no(r.trivial.n2)
              << ", N3 " << yes_no(r.trivial.n3) << '\n';
    if (r.trivial.all()) std::cout << "N-trivial\n";
    std::cout << "2-qBMG: " << yes_no(r.is_2qbmg) << ", proper: " << yes_no(r.proper) << '\n';
  }
  return r.is_2qbmg ? kOk : kFails;
}

// ---------------------------------------------------------------------------

struct AutArgs {
  std::string path;
  bool full = false;
  bool color_preserving = false;
  bool json = false;
  std::string perm;
  std::size_t max_vertices = 64;
};

int cmd_aut(const AutArgs& a) {
  ColoredDigraph g = load_qbmg(a.path);
  const bool preserving = !a.full;
  if (!a.perm.empty()) {
    Permutation p = parse_permutation(g, a.perm);
    const bool ok = is_automorphism(g, p, preserving);
    if (a.json)
      std::cout << json{{"schema", 1}, {"permutation", format_permutation(g, p)}, {"automorphism", ok}}.dump(2)
                << '\n';
    else
      std::cout << format_permutation(g, p) << ": " << (ok ? "automorphism" : "not an automorphism")
                << '\n';
    return ok ? kOk : kFails;
  }
  AutOptions opts;
  opts.max_vertices = a.max_vertices;
  PermGroup grp = preserving ? aut_color_preserving(g, opts) : aut_full(g, opts);
  const Partition orb = orbits(grp);
  if (a.json) {
    json gens = json::array();
    for (const auto& s : grp.generators()) gens.push_back(format_permutation(g, s));
    std::cout << json{{"schema", 1},
                      {"group", preserving ? "color-preserving" : "full"},
                      {"order", grp.order()},
                      {"generators", gens},
                      {"orbits", partition_json(g, orb)}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "group: " << (preserving ? "color-preserving" : "full") << '\n'
              << "order: " << grp.order() << '\n'
              << "generators: " << grp.generators().size() << '\n';
    for (const auto& s : grp.generators()) std::cout << "  " << format_permutation(g, s) << '\n';
    std::cout << "orbits: " << orb.size() << '\n';
    for (const auto& block : partition_labels(g, orb)) {
      std::cout << " ";
      for (const auto& v : block) std::cout << ' ' << v;
      std::cout << '\n';
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct QuotientArgs {
  std::string path;
  std::string partition;
  bool classical = false;
  bool canonical_gamma = false;
  bool json = false;
  std::string map;
  std::string out;
};

int cmd_quotient(const QuotientArgs& a) {
  ColoredDigraph g = load_qbmg(a.path);
  const int modes = !a.partition.empty() + a.classical + a.canonical_gamma;
  if (modes != 1) throw InputError("choose exactly one of --partition, --classical, --canonical-gamma");
  QuotientResult q = [&] {
    if (a.classical) return classical_quotient(g);
    if (a.canonical_gamma) return gamma_quotient(g, canonical_gamma(g));
    Partition p = read_file(a.partition, [&](std::istream& in) { return read_partition(in, g); });
    return partition_quotient(g, p);
  }();
  json projection = json::object();
  for (Index v = 0; v < g.size(); ++v)
    projection[g.label(v).str()] = q.quotient.label(q.projection[v]).str();
  if (!a.map.empty()) emit(a.map, json{{"schema", 1}, {"projection", projection}}.dump(2) + "\n");
  if (a.json)
    emit(a.out, json{{"schema", 1},
                     {"blocks", partition_json(g, q.partition)},
                     {"projection", projection},
                     {"quotient", graph_json(q.quotient)}}
                        .dump(2) +
                    "\n");
  else
    emit(a.out, format_qbmg(q.quotient));
  return kOk;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string kind;
  int m = 1;
  int s = 2;
  std::optional<std::uint64_t> seed;
  std::string spec;
  std::string in, at, fresh;
  std::string out;
  bool dot = false;
};

int cmd_generate(const GenerateArgs& a) {
  std::vector<std::string> comments;
  ColoredDigraph g = [&]() -> ColoredDigraph {
    if (a.kind == "blowup") return blow_up(load_qbmg(a.in), VertexId(a.at), VertexId(a.fresh));
    if (!a.spec.empty()) {
      ConstructionSpec spec = load_spec(a.spec);
      const bool matches =
          (a.kind == "layered" && spec.kind != ConstructionSpec::Kind::N2Trivial) ||
          (a.kind == "two-layer" && spec.kind != ConstructionSpec::Kind::N2Trivial && spec.layered.s == 2) ||
          (a.kind == "n2-trivial" && spec.kind == ConstructionSpec::Kind::N2Trivial);
      if (!matches) throw InputError("spec file does not describe a " + a.kind + " construction");
      return spec.build();
    }
    if (a.seed) comments.push_back("seed " + std::to_string(*a.seed));
    if (a.kind == "two-layer")
      return layered(a.seed ? random_layered_spec(2, a.m, *a.seed) : default_layered_spec(2, a.m));
    if (a.kind == "layered")
      return layered(a.seed ? random_layered_spec(a.s, a.m, *a.seed) : default_layered_spec(a.s, a.m));
    if (a.kind == "n2-trivial")
      return n2_trivial_layer(a.seed ? random_n2_trivial_spec(a.m, *a.seed) : default_n2_trivial_spec(a.m));
    // random
    const std::uint64_t seed = a.seed.value_or(1);
    if (!a.seed) comments.push_back("seed " + std::to_string(seed));
    LayeredSpec spec = random_layered_spec(a.s, a.m, seed);
    std::ostringstream os;
    write_spec(os, spec);
    std::istringstream lines(os.str());
    for (std::string line; std::getline(lines, line);) comments.push_back(line);
    return layered(spec);
  }();
  std::ostringstream os;
  if (a.dot) {
    for (const auto& c : comments) os << "// " << c << '\n';
    write_dot(os, g);
  } else {
    write_qbmg(os, g, comments);
  }
  emit(a.out, os.str());
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> files;
  std::string corpus;
  std::string theorems;
  bool json = false;
};

ColoredDigraph load_any(const fs::path& p) {
  if (p.extension() == ".spec") return load_spec(p.string()).build();
  return load_qbmg(p.string());
}

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions opts;
  std::stringstream list(a.theorems);
  for (std::string id; std::getline(list, id, ',');) {
    if (id.empty()) continue;
    if (std::ranges::find(theorem_ids(), id) == theorem_ids().end())
      throw InputError("unknown theorem '" + id + "'");
    opts.theorems.insert(id);
  }
  std::vector<fs::path> paths(a.files.begin(), a.files.end());
  if (!a.corpus.empty()) {
    if (!fs::is_directory(a.corpus)) throw InputError("'" + a.corpus + "' is not a directory");
    for (const auto& entry : fs::directory_iterator(a.corpus))
      if (entry.is_regular_file() &&
          (entry.path().extension() == ".qbmg" || entry.path().extension() == ".spec"))
        paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) std::cerr << "warning: no graphs to verify\n";

  // Load everything first so input errors surface before any report.
  std::vector<std::pair<std::string, ColoredDigraph>> graphs;
  for (const auto& p : paths) graphs.emplace_back(p.string(), load_any(p));

  bool all_ok = true;
  std::size_t checks = 0, failures = 0;
  json reports = json::array();
  for (const auto& [name, g] : graphs) {
    GraphReport r = verify_graph(g, name, opts);
    all_ok = all_ok && r.ok();
    json results = json::array();
    for (const auto& t : r.results) {
      const char* status = t.status == TheoremResult::Status::Pass   ? "pass"
                           : t.status == TheoremResult::Status::Fail ? "fail"
                                                                     : "skip";
      if (t.status != TheoremResult::Status::Skip) ++checks;
      if (t.status == TheoremResult::Status::Fail) ++failures;
      if (a.json) {
        json jt = {{"theorem", t.theorem}, {"status", status}};
        if (!t.detail.empty()) jt["detail"] = t.detail;
        results.push_back(jt);
      } else {
        std::cout << name << ": " << t.theorem << ": " << status;
        if (!t.detail.empty()) std::cout << " (" << t.detail << ")";
        std::cout << '\n';
      }
    }
    if (a.json) reports.push_back({{"graph", name}, {"ok", r.ok()}, {"results", results}});
  }
  if (a.json)
    std::cout << json{{"schema", 1},
                      {"graphs", graphs.size()},
                      {"checks", checks},
                      {"failures", failures},
                      {"ok", all_ok},
                      {"reports", reports}}
                     .dump(2)
              << '\n';
  else
    std::cout << "graphs: " << graphs.size() << ", checks: " << checks << ", failures: " << failures
              << '\n';
  return all_ok ? kOk : kFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recognize, quotient, orient and analyze 2-colored quasi best match graphs"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Evaluate the axioms, triviality flags, thinness and (*)");
  c->add_option("graph", check.path, "qbmg file")->required();
  c->add_flag("--json", check.json, "Machine-readable report");

  AutArgs aut;
  auto* au = app.add_subcommand("aut", "Automorphism group: order, generators, orbits");
  au->add_option("graph", aut.path, "qbmg file")->required();
  auto* full = au->add_flag("--full", aut.full, "All automorphisms, including color-switching ones");
  au->add_flag("--color-preserving", aut.color_preserving, "Only automorphisms fixing U and W (default)")
      ->excludes(full);
  au->add_flag("--json", aut.json, "Machine-readable report");
  au->add_option("--perm", aut.perm, "Test one permutation, e.g. \"p: 1->2 2->1\"");
  au->add_option("--max-vertices", aut.max_vertices, "Vertex cap for the search")->capture_default_str();

  QuotientArgs quo;
  auto* q = app.add_subcommand("quotient", "Quotient by a partition, the classes, or the product group");
  q->add_option("graph", quo.path, "qbmg file")->required();
  q->add_option("--partition", quo.partition, "Partition file, one block per line");
  q->add_flag("--classical", quo.classical, "Quotient by the equivalence classes");
  q->add_flag("--canonical-gamma", quo.canonical_gamma, "Quotient by the canonical product group");
  q->add_flag("--json", quo.json, "Emit blocks, projection and quotient as JSON");
  q->add_option("--map", quo.map, "Write the projection map as JSON to this file");
  q->add_option("--out", quo.out, "Output file (default stdout)");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Emit a construction in the qbmg format");
  g->require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", gen.out, "Output file (default stdout)");
    sub->add_flag("--dot", gen.dot, "Emit DOT instead of qbmg");
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", gen.seed, "Draw random tables from this seed");
  };
  for (const char* name : {"two-layer", "n2-trivial", "layered"}) {
    auto* sub = g->add_subcommand(name, std::string("The ") + name + " construction");
    sub->add_option("--m", gen.m, "Class size")->check(CLI::PositiveNumber);
    if (std::string(name) == "layered") sub->add_option("--s", gen.s, "Layer count")->check(CLI::PositiveNumber);
    sub->add_option("--spec", gen.spec, "Spec file with explicit tables");
    add_seed(sub);
    add_common(sub);
    sub->final_callback([&gen, name] { gen.kind = name; });
  }
  auto* blow = g->add_subcommand("blowup", "Duplicate one vertex");
  blow->add_option("--in", gen.in, "qbmg file")->required();
  blow->add_option("--at", gen.at, "Vertex to duplicate")->required();
  blow->add_option("--new", gen.fresh, "Name of the new vertex")->required();
  add_common(blow);
  blow->final_callback([&gen] { gen.kind = "blowup"; });
  auto* rnd = g->add_subcommand("random", "Layered construction with seeded random tables");
  rnd->add_option("--s", gen.s, "Layer count")->check(CLI::PositiveNumber);
  rnd->add_option("--m", gen.m, "Class size")->check(CLI::PositiveNumber);
  add_seed(rnd);
  add_common(rnd);
  rnd->final_callback([&gen] { gen.kind = "random"; });

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run the theorem checks on graphs");
  v->add_option("files", ver.files, "qbmg or spec files");
  v->add_option("--corpus", ver.corpus, "Directory of .qbmg and .spec files (not recursive)");
  v->add_option("--theorems", ver.theorems, "Comma-separated subset of theorem ids");
  v->add_flag("--json", ver.json, "Machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*c) return cmd_check(check);
    if (*au) return cmd_aut(aut);
    if (*q) return cmd_quotient(quo);
    if (*g) return cmd_generate(gen);
    if (*v) return cmd_verify(ver);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kFails;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
