// Acceptance criteria. Prints one line per check and one PASS/FAIL line per
// criterion. Usage: acceptance [--criterion N]

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "support.hpp"

using namespace qbmg;
using namespace qbmg::testing;

namespace {

class Criterion {
 public:
  Criterion(int id, std::string title, double limit_seconds)
      : id_(id), title_(std::move(title)), limit_(limit_seconds),
        start_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& what) {
    std::cout << "  [" << (ok ? "ok" : "FAIL") << "] " << what << '\n';
    ok_ = ok_ && ok;
  }

  bool finish() {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    check(secs < limit_, "runtime " + std::to_string(secs) + " s < " + std::to_string(limit_) + " s");
    std::cout << "criterion " << id_ << ": " << (ok_ ? "PASS" : "FAIL") << " - " << title_ << '\n';
    return ok_;
  }

 private:
  int id_;
  std::string title_;
  double limit_;
  std::chrono::steady_clock::time_point start_;
  bool ok_ = true;
};

std::string str(std::uint64_t x) { return std::to_string(x); }

Partition label_partition(const ColoredDigraph& g, const std::vector<std::vector<VertexId>>& blocks) {
  return partition_from_labels(g, blocks);
}

std::vector<VertexId> range_ids(int first, int last) {
  std::vector<VertexId> out;
  for (int k = first; k <= last; ++k) out.emplace_back(std::int64_t{k});
  return out;
}

// ---------------------------------------------------------------------------

bool criterion1() {
  Criterion c(1, "blow-up fixtures are 2-qBMGs, simultaneous duplication is not", 1.0);
  c.check(is_2qbmg(load_fixture("blowup_base.qbmg")), "blowup_base is a 2-qBMG");
  c.check(is_2qbmg(load_fixture("blowup_g1.qbmg")), "first blow-up is a 2-qBMG");
  c.check(is_2qbmg(load_fixture("blowup_g12.qbmg")), "second blow-up is a 2-qBMG");
  c.check(!is_2qbmg(load_fixture("negative/simultaneous_blowup.qbmg")),
          "simultaneous duplication is not a 2-qBMG");
  return c.finish();
}

bool criterion2() {
  Criterion c(2, "Aut_I(K_{r,s}) = Sym_r x Sym_s for 1 <= r,s <= 4", 5.0);
  for (int r = 1; r <= 4; ++r)
    for (int s = 1; s <= 4; ++s) {
      ColoredDigraph g = complete_symmetric(r, s);
      PermGroup aut = aut_color_preserving(g);
      std::uint64_t expected = 1;
      for (int k = 2; k <= r; ++k) expected *= k;
      for (int k = 2; k <= s; ++k) expected *= k;
      std::vector<Permutation> transpositions;
      for (Color col : {Color::U, Color::W}) {
        auto cls = g.color_class(col);
        for (std::size_t i = 0; i < cls.size(); ++i)
          for (std::size_t j = i + 1; j < cls.size(); ++j)
            transpositions.push_back(Permutation::transposition(g.size(), cls[i], cls[j]));
      }
      PermGroup product = PermGroup::generated_by(g.size(), transpositions);
      c.check(aut.order() == expected && aut == product,
              "K_{" + str(r) + "," + str(s) + "}: order " + str(aut.order()) + " = " + str(expected) +
                  ", generated by within-class transpositions");
    }
  return c.finish();
}

bool criterion3() {
  Criterion c(3, "two-layer construction, m = 4", 5.0);
  ConstructionSpec spec = load_spec(fixture_path("two_layer_m4.spec"));
  ColoredDigraph g = spec.build();
  AxiomReport r = axiom_report(g);
  c.check(is_thin(g), "thin");
  c.check(r.is_2qbmg && r.proper, "proper 2-qBMG");
  PermGroup lifted = lifted_group(spec.layered);
  c.check(lifted.order() == 24, "lifted group order " + str(lifted.order()) + " = 24");
  PermGroup aut = aut_color_preserving(g);
  c.check(aut == lifted, "Aut_I (order " + str(aut.order()) + ") equals the lifted group");
  Partition expected = label_partition(g, {range_ids(1, 4), range_ids(5, 8), range_ids(9, 12), range_ids(13, 16)});
  c.check(orbits(aut) == expected, "orbits are U1, U2, W1, W2");
  return c.finish();
}

bool criterion4() {
  Criterion c(4, "layered construction, s = 3, m = 3", 10.0);
  ConstructionSpec spec = load_spec(fixture_path("layered_s3_m3.spec"));
  const LayeredSpec& ls = spec.layered;
  auto table = [](std::vector<std::pair<int, int>> pairs) {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (auto [a, b] : pairs) out.emplace_back(VertexId(std::int64_t{a}), VertexId(std::int64_t{b}));
    return BijectionTable::from_pairs(out);
  };
  c.check(composite_f(ls, 1, 2) == table({{1, 14}, {2, 15}, {3, 13}}), "f12 = printed table");
  c.check(composite_f(ls, 2, 3) == table({{4, 18}, {5, 16}, {6, 17}}), "f23 = printed table");
  c.check(composite_f(ls, 1, 3) == table({{1, 17}, {2, 16}, {3, 18}}), "f13 = printed table");
  c.check(composite_g(ls, 1, 3) == table({{10, 8}, {11, 9}, {12, 7}}), "g13 = printed table");
  ColoredDigraph g = layered(ls);
  AxiomReport r = axiom_report(g);
  c.check(g.size() == 18 && g.edge_count() == 27, "18 vertices, 27 edges");
  c.check(is_thin(g) && r.is_2qbmg && r.proper, "thin proper 2-qBMG");
  PermGroup lifted = lifted_group(ls);
  bool all_aut = true;
  for (const auto& p : lifted.elements()) all_aut = all_aut && is_automorphism(g, p, true);
  c.check(lifted.order() == 6 && all_aut, "lifted Sym_3 has order 6 and consists of automorphisms");
  PermGroup aut = aut_color_preserving(g);
  c.check(lifted.is_subgroup_of(aut) && aut.order() > 6,
          "lifted group is a proper subgroup of Aut_I (|Aut_I| = " + str(aut.order()) + ")");
  return c.finish();
}

bool criterion5() {
  Criterion c(5, "(N2)-trivial construction, m = 4", 10.0);
  ConstructionSpec spec = load_spec(fixture_path("n2_trivial_m4.spec"));
  ColoredDigraph g = spec.build();
  AxiomReport r = axiom_report(g);
  c.check(r.is_2qbmg, "2-qBMG");
  c.check(r.trivial.n2 && !r.trivial.n1 && !r.trivial.n3, "(N2)-trivial, not (N1)- or (N3)-trivial");
  c.check(is_thin(g), "thin");
  PermGroup aut = aut_color_preserving(g);
  c.check(aut.order() == 384, "|Aut_I| = " + str(aut.order()) + " (target 384)");
  std::vector<VertexId> w = range_ids(5, 12);
  Partition expected = label_partition(g, {range_ids(1, 4), range_ids(13, 16), w});
  c.check(orbits(aut) == expected, "orbits are U1, U2, W1 u W2");
  PermGroup lifted = lifted_group(spec.n2);
  c.check(lifted.order() == 24 && lifted.is_subgroup_of(aut), "lifted Sym_4 lies in Aut_I");
  return c.finish();
}

bool criterion6() {
  Criterion c(6, "theorem suite over the corpus", 300.0);
  std::vector<CorpusEntry> corpus = theorem_corpus();
  c.check(corpus.size() >= 200, str(corpus.size()) + " graphs (at least 200)");
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // pass, fail
  std::size_t failures = 0, members = 0;
  for (const auto& e : corpus) {
    GraphReport rep = verify_graph(e.g, e.name);
    for (const auto& t : rep.results) {
      if (t.status == TheoremResult::Status::Pass) ++tally[t.theorem].first;
      if (t.status == TheoremResult::Status::Fail) {
        ++tally[t.theorem].second;
        if (++failures <= 10)
          std::cout << "  failure: " << e.name << ": " << t.theorem << " " << t.detail << '\n';
      }
      if (t.theorem == "membership" && t.status == TheoremResult::Status::Pass) ++members;
    }
  }
  c.check(members == corpus.size(), str(members) + " of " + str(corpus.size()) + " are 2-qBMGs");
  for (const auto& id : theorem_ids()) {
    auto [pass, fail] = tally[id];
    c.check(fail == 0 && pass > 0, id + ": " + str(pass) + " passed, " + str(fail) + " failed");
  }
  return c.finish();
}

bool criterion7() {
  Criterion c(7, "automorphism search matches brute force", 120.0);
  std::size_t graphs = 0, mismatches = 0;
  auto compare = [&](const ColoredDigraph& g) {
    ++graphs;
    if (aut_color_preserving(g).elements() != brute_force_aut(g, true)) {
      if (++mismatches <= 5) std::cout << "  mismatch:\n" << format_qbmg(g);
    }
  };
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) for_each_bipartite(a, b, compare);
  c.check(mismatches == 0, "all bipartite digraphs with |U|,|W| <= 3: " + str(graphs) + " graphs, " +
                               str(mismatches) + " mismatches");
  std::mt19937_64 rng(77);
  std::size_t random_graphs = 0;
  const std::size_t before = mismatches;
  for (int k = 0; k < 2000; ++k, ++random_graphs) compare(random_bipartite(4, 4, rng));
  c.check(mismatches == before, "random |U| = |W| = 4: " + str(random_graphs) + " graphs, " +
                                    str(mismatches - before) + " mismatches");
  return c.finish();
}

bool criterion8() {
  Criterion c(8, "proper thin 2-qBMG on 2ms vertices with Sym_m in Aut_I, m,s in {2,3,4}", 60.0);
  for (int m = 2; m <= 4; ++m)
    for (int s = 2; s <= 4; ++s)
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        LayeredSpec spec = random_layered_spec(s, m, seed);
        ColoredDigraph g = layered(spec);
        AxiomReport r = axiom_report(g);
        PermGroup lifted = lifted_group(spec);
        std::uint64_t fact = 1;
        for (int k = 2; k <= m; ++k) fact *= k;
        bool ok = r.is_2qbmg && r.proper && is_thin(g) && g.size() == std::size_t(2 * m * s) &&
                  lifted.order() == fact && lifted.is_subgroup_of(aut_color_preserving(g));
        c.check(ok, "m=" + str(m) + " s=" + str(s) + " seed=" + str(seed));
      }
  return c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<bool()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                        criterion5, criterion6, criterion7, criterion8};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  bool ok = true;
  for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) {
    if (only && k != only) continue;
    try {
      ok = criteria[k - 1]() && ok;
    } catch (const std::exception& e) {
      std::cout << "criterion " << k << ": FAIL - exception: " << e.what() << '\n';
      ok = false;
    }
  }
  return ok ? 0 : 1;
}
