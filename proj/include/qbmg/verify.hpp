#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qbmg/autgroup.hpp"
#include "qbmg/axioms.hpp"
#include "qbmg/orientations.hpp"
#include "qbmg/partition.hpp"
#include "qbmg/quotients.hpp"
#include "qbmg/undirected.hpp"

namespace qbmg {

/// Identifiers accepted by --theorems, in report order.
inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {
      "membership",
      "route-equivalence",
      "gamma-quotient-hereditary",
      "canonical-gamma-normal",
      "classical-quotient-identity",
      "classical-quotient-idempotent",
      "thin-orbit-structure",
      "orbit-common-out-neighbor",
      "fixes-in-neighborhood",
      "inherited-group-order",
      "orientation-star",
      "orientation-uw-aut",
      "orientation-acyclic",
      "underlying-p6-c6-free",
      "hereditary-induced",
  };
  return ids;
}

struct TheoremResult {
  std::string theorem;
  enum class Status { Pass, Fail, Skip } status = Status::Pass;
  std::string detail;
};

struct GraphReport {
  std::string name;
  std::vector<TheoremResult> results;

  bool ok() const {
    return std::ranges::none_of(
        results, [](const TheoremResult& r) { return r.status == TheoremResult::Status::Fail; });
  }
};

struct VerifyOptions {
  std::set<std::string> theorems;  // empty: all
  AutOptions aut;
};

namespace detail {

inline std::set<std::vector<std::vector<Index>>> orbit_partitions_closure(
    std::size_t n, const std::vector<Partition>& seeds) {
  using Blocks = std::vector<std::vector<Index>>;
  auto join = [n](const Partition& a, const Partition& b) {
    std::vector<Index> parent(n);
    for (Index x = 0; x < n; ++x) parent[x] = x;
    auto root = [&](Index x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto unite = [&](const Partition& p) {
      for (const auto& blk : p.blocks())
        for (Index v : blk) {
          Index r1 = root(blk.front()), r2 = root(v);
          if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
        }
    };
    unite(a);
    unite(b);
    Blocks blocks(n);
    for (Index x = 0; x < n; ++x) blocks[root(x)].push_back(x);
    std::erase_if(blocks, [](const auto& b) { return b.empty(); });
    return Partition(n, std::move(blocks));
  };
  std::set<Blocks> seen;
  std::vector<Partition> all;
  for (const auto& p : seeds)
    if (seen.insert(p.blocks()).second) all.push_back(p);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < seeds.size(); ++j) {
      Partition q = join(all[i], seeds[j]);
      if (seen.insert(q.blocks()).second) all.push_back(std::move(q));
    }
  return seen;
}

}  // namespace detail

/// Runs the selected theorem checks on one graph. Checks that do not apply
/// (non-2-qBMG input, graph not thin, no property (*)) are reported as
/// skipped. Inputs that are not 2-qBMGs fail "membership".
inline GraphReport verify_graph(const ColoredDigraph& g, const std::string& name,
                                const VerifyOptions& opts = {}) {
  GraphReport report{name, {}};
  using S = TheoremResult::Status;
  auto wanted = [&](const std::string& id) { return opts.theorems.empty() || opts.theorems.count(id); };
  auto record = [&](const std::string& id, S status, std::string detail = {}) {
    if (wanted(id)) report.results.push_back({id, status, std::move(detail)});
  };
  // Runs `body` for a wanted theorem; library errors become failures.
  auto run = [&](const std::string& id, const std::function<void()>& body) {
    if (!wanted(id)) return;
    try {
      body();
    } catch (const Error& e) {
      record(id, S::Fail, e.what());
    }
  };

  bool member = false;
  try {
    AxiomReport ax = axiom_report(g);
    member = ax.is_2qbmg;
    record("route-equivalence", S::Pass);
    std::string why;
    if (!member) {
      const Verdict* bad = !ax.n1.holds ? &ax.n1 : !ax.n2.holds ? &ax.n2 : &ax.n3;
      why = !ax.n1.holds ? "(N1)" : !ax.n2.holds ? "(N2)" : "(N3)";
      why += " fails at";
      for (const auto& v : bad->witness) why += " " + v.str();
    }
    record("membership", member ? S::Pass : S::Fail, why);
  } catch (const InternalInconsistency& e) {
    record("route-equivalence", S::Fail, e.what());
    record("membership", S::Fail, "membership undecided");
  }
  std::ranges::stable_sort(report.results, [](const auto& a, const auto& b) {
    const auto& ids = theorem_ids();
    return std::ranges::find(ids, a.theorem) < std::ranges::find(ids, b.theorem);
  });

  const std::vector<std::string> rest(theorem_ids().begin() + 2, theorem_ids().end());
  if (!member) {
    for (const auto& id : rest) record(id, S::Skip, "not a 2-qBMG");
    return report;
  }

  const bool thin = is_thin(g);
  PermGroup aut = aut_color_preserving(g, opts.aut);
  const Partition classes = equivalence_classes(g);

  run("gamma-quotient-hereditary", [&] {
    std::vector<Partition> seeds;
    for (const auto& x : aut.elements()) seeds.push_back(orbits_of(g.size(), {x}));
    auto all = detail::orbit_partitions_closure(g.size(), seeds);
    for (const auto& blocks : all) {
      Partition p(g.size(), blocks);
      QuotientResult q = partition_quotient(g, p);
      if (!is_2qbmg(q.quotient)) {
        record("gamma-quotient-hereditary", S::Fail,
               "quotient by an orbit partition with " + std::to_string(p.size()) +
                   " blocks is not a 2-qBMG");
        return;
      }
    }
    QuotientResult q = gamma_quotient(g, canonical_gamma(g, opts.aut.max_order));
    if (!is_2qbmg(q.quotient)) {
      record("gamma-quotient-hereditary", S::Fail, "canonical product quotient is not a 2-qBMG");
      return;
    }
    record("gamma-quotient-hereditary", S::Pass,
           std::to_string(all.size()) + " orbit partitions");
  });

  run("canonical-gamma-normal", [&] {
    PermGroup gamma = canonical_gamma(g, opts.aut.max_order);
    PermGroup full = aut_full(g, opts.aut);
    if (!gamma.is_subgroup_of(full))
      return record("canonical-gamma-normal", S::Fail, "product group is not inside Aut");
    if (!is_normal(gamma, full))
      return record("canonical-gamma-normal", S::Fail, "product group is not normal in Aut");
    if (!(orbits(gamma) == classes))
      return record("canonical-gamma-normal", S::Fail, "orbits differ from equivalence classes");
    record("canonical-gamma-normal", S::Pass);
  });

  run("classical-quotient-identity", [&] {
    QuotientResult a = classical_quotient(g);
    QuotientResult b = gamma_quotient(g, canonical_gamma(g, opts.aut.max_order));
    record("classical-quotient-identity", a.quotient == b.quotient ? S::Pass : S::Fail);
  });

  run("classical-quotient-idempotent", [&] {
    QuotientResult once = classical_quotient(g);
    if (!is_thin(once.quotient))
      return record("classical-quotient-idempotent", S::Fail, "classical quotient is not thin");
    QuotientResult twice = classical_quotient(once.quotient);
    // Only the names change: the projection must be an isomorphism.
    bool iso = twice.quotient.size() == once.quotient.size() &&
               twice.quotient.edge_count() == once.quotient.edge_count();
    for (const Arc& a : once.quotient.arcs())
      iso = iso && twice.quotient.has_edge(twice.projection[a.tail], twice.projection[a.head]);
    for (Index v = 0; iso && v < once.quotient.size(); ++v)
      iso = twice.quotient.color(twice.projection[v]) == once.quotient.color(v);
    record("classical-quotient-idempotent", iso ? S::Pass : S::Fail);
  });

  if (thin) {
    run("thin-orbit-structure", [&] {
      auto pairs = verify_thin_orbit_structure(g, aut, true);
      auto full_pairs = verify_thin_orbit_structure(g, aut_full(g, opts.aut), false);
      record("thin-orbit-structure", S::Pass,
             std::to_string(pairs.size() + full_pairs.size()) + " orbit pairs");
    });
    run("fixes-in-neighborhood", [&] {
      for (const auto* grp : {&aut}) {
        for (const auto& p : grp->elements())
          if (!fixes_in_neighborhood_check(g, p))
            return record("fixes-in-neighborhood", S::Fail, format_permutation(g, p));
      }
      PermGroup full = aut_full(g, opts.aut);
      for (const auto& p : full.elements())
        if (!fixes_in_neighborhood_check(g, p))
          return record("fixes-in-neighborhood", S::Fail, format_permutation(g, p));
      record("fixes-in-neighborhood", S::Pass);
    });
  } else {
    record("thin-orbit-structure", S::Skip, "not thin");
    record("fixes-in-neighborhood", S::Skip, "not thin");
  }

  run("orbit-common-out-neighbor", [&] {
    const Partition orb = orbits(aut);
    for (const auto& blk : orb.blocks())
      for (std::size_t i = 0; i < blk.size(); ++i)
        for (std::size_t j = i + 1; j < blk.size(); ++j)
          if (detail::intersects(g.out(blk[i]), g.out(blk[j])) && !equivalent(g, blk[i], blk[j]))
            return record("orbit-common-out-neighbor", S::Fail,
                          g.label(blk[i]).str() + " and " + g.label(blk[j]).str());
    record("orbit-common-out-neighbor", S::Pass);
  });

  run("inherited-group-order", [&] {
    std::vector<std::pair<std::string, PermGroup>> norms = {{"trivial", PermGroup::trivial(g.size())},
                                                            {"Aut_I", aut}};
    PermGroup gamma = canonical_gamma(g, opts.aut.max_order);
    if (gamma.is_subgroup_of(aut)) norms.emplace_back("canonical product", gamma);
    for (const auto& [label, norm] : norms) {
      InheritedGroup ih = inherited_group(g, norm, opts.aut);
      if (ih.group.order() * norm.order() != aut.order() || ih.kernel_order != norm.order())
        return record("inherited-group-order", S::Fail,
                      label + ": " + std::to_string(ih.group.order()) + " * " +
                          std::to_string(norm.order()) + " != " + std::to_string(aut.order()));
    }
    record("inherited-group-order", S::Pass);
  });

  if (wanted("orientation-star") || wanted("orientation-uw-aut") || wanted("orientation-acyclic")) {
    try {
      OrientationReport o = check_orientation_theorems(g, opts.aut);
      if (o.star)
        record("orientation-star", o.all_orientations_qbmg ? S::Pass : S::Fail,
               std::to_string(o.orientation_count) + " orientations");
      else
        record("orientation-star", S::Skip, "no property (*)");
      record("orientation-uw-aut", o.uw_aut_equal ? S::Pass : S::Fail,
             o.uw_aut_equal ? "" : o.diagnostics.back());
      if (o.star || o.thin)
        record("orientation-acyclic", o.all_orientations_acyclic ? S::Pass : S::Fail);
      else
        record("orientation-acyclic", S::Skip, "neither thin nor (*)");
    } catch (const Error& e) {
      for (const char* id : {"orientation-star", "orientation-uw-aut", "orientation-acyclic"})
        record(id, S::Fail, e.what());
    }
  }

  run("underlying-p6-c6-free", [&] {
    auto w = long_induced_path_or_cycle(underlying_undirected(g));
    if (!w) return record("underlying-p6-c6-free", S::Pass);
    std::string s = w->kind == LongInducedWitness::Kind::Path ? "induced path" : "induced cycle";
    for (const auto& v : w->vertices) s += " " + v.str();
    record("underlying-p6-c6-free", S::Fail, s);
  });

  run("hereditary-induced", [&] {
    for (Index drop = 0; drop < g.size(); ++drop) {
      std::vector<Index> keep;
      for (Index v = 0; v < g.size(); ++v)
        if (v != drop) keep.push_back(v);
      if (!is_2qbmg(induced_subgraph_indices(g, keep)))
        return record("hereditary-induced", S::Fail, "without " + g.label(drop).str());
    }
    record("hereditary-induced", S::Pass);
  });

  std::ranges::stable_sort(report.results, [](const auto& a, const auto& b) {
    const auto& ids = theorem_ids();
    return std::ranges::find(ids, a.theorem) < std::ranges::find(ids, b.theorem);
  });
  return report;
}

}  // namespace qbmg
