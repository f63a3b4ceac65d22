// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run with no arguments for all criteria, or pass criterion numbers.
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "curv/curvature.hpp"
#include "curv/families.hpp"
#include "curv/graph.hpp"
#include "curv/rational.hpp"
#include "curv/sharpness.hpp"
#include "curv/transport.hpp"
#include "oracles.hpp"

using curv::Graph;
using curv::Rational;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool check(std::ostream& log, bool cond, const std::string& what) {
  if (!cond) log << "    failed: " << what << "\n";
  return cond;
}

std::vector<corpus::NamedGraph> criterion2_corpus() {
  auto graphs = corpus::oracle_corpus();
  for (auto& g : corpus::random_corpus(100)) graphs.push_back(std::move(g));
  return graphs;
}

// ---------------------------------------------------------------------------
// 1. Reconstructed running example: kappa(x,y) = 1/12, transport cost 14,
//    under 1 ms.
bool criterion1(std::ostream& log) {
  auto g = curv::demo_graph();
  int x = *g.index_of("x"), y = *g.index_of("y");
  auto t0 = Clock::now();
  auto rep = curv::edge_curvature(g, x, y);
  double dt = seconds_since(t0);
  bool ok = check(log, rep.kappa == Rational(1, 12), "kappa(x,y) == 1/12");
  ok &= check(log, rep.coupling.cost == 14, "optimal transport cost == 14");
  ok &= check(log, dt < 0.001,
              "runtime < 1 ms (got " + std::to_string(dt * 1000) + " ms)");
  return ok;
}

// ---------------------------------------------------------------------------
// 2. Oracle triple-agreement over the named corpus plus 100 seeded random
//    connected graphs, with the non-lazy lower bound, under 60 s.
bool criterion2(std::ostream& log) {
  auto t0 = Clock::now();
  bool ok = true;
  long edges = 0;
  for (const auto& [name, g] : criterion2_corpus()) {
    for (auto [u, v] : g.edges()) {
      ++edges;
      auto rep = curv::edge_curvature(g, u, v);
      auto lp =
          curv::lazy_lp_curvature(g, u, v, curv::default_lazy_alpha(g, u, v));
      auto [lip, witness] = curv::lipschitz_curvature(g, u, v);
      auto ollivier = curv::lazy_lp_curvature(g, u, v, Rational(0));
      std::string at = name + " edge (" + g.label(u) + "," + g.label(v) + ")";
      ok &= check(log, rep.kappa == lp, at + ": formula == lazy LP");
      ok &= check(log, rep.kappa == lip, at + ": formula == lipschitz");
      ok &= check(log, rep.kappa >= ollivier, at + ": kappa >= kappa_0");
    }
  }
  double dt = seconds_since(t0);
  log << "    " << edges << " edges in " << dt << " s\n";
  ok &= check(log, dt < 60.0, "runtime < 60 s");
  return ok;
}

// ---------------------------------------------------------------------------
// 3. Classification regression: the self-centered families are sharp with
//    kappa_min = 2/L; a ratio-violating product is not. Gosset under 5 min,
//    the rest under 30 s each.
bool criterion3(std::ostream& log) {
  bool ok = true;
  struct Row {
    std::string name;
    Graph g;
    Rational kappa;
    int diameter;
  };
  std::vector<Row> rows;
  for (int n = 2; n <= 6; ++n) {
    rows.push_back({"Q" + std::to_string(n), curv::hypercube(n),
                    Rational(2, n), n});
  }
  for (int n = 3; n <= 5; ++n) {
    rows.push_back({"CP" + std::to_string(n), curv::cocktail_party(n),
                    Rational(1), 2});
  }
  rows.push_back({"J(6,3)", curv::johnson(6, 3), Rational(2, 3), 3});
  rows.push_back({"demicube(6)", curv::demicube(6), Rational(2, 3), 3});
  rows.push_back({"gosset", curv::gosset(), Rational(2, 3), 3});

  for (const auto& row : rows) {
    auto t0 = Clock::now();
    auto rep = curv::analyze_sharpness(row.g);
    double dt = seconds_since(t0);
    ok &= check(log, rep.sharp, row.name + " is sharp");
    ok &= check(log, rep.kappa_min == row.kappa,
                row.name + " kappa_min == " + curv::to_fraction_string(row.kappa));
    ok &= check(log, rep.diameter == row.diameter,
                row.name + " diameter == " + std::to_string(row.diameter));
    double budget = (row.name == "gosset") ? 300.0 : 30.0;
    ok &= check(log, dt < budget,
                row.name + " full analysis in " + std::to_string(dt) + " s");
  }

  auto prod = curv::cartesian_product(curv::hypercube(2),
                                      curv::cocktail_party(3));
  ok &= check(log, !curv::sharpness_verdict(prod).sharp,
              "Q2 x CP(3) is not sharp");
  return ok;
}

// ---------------------------------------------------------------------------
// 4. Diameter-2 classification: complete graphs minus matchings are sharp
//    with L=2 and kappa_min = 1; minus a 2-edge path they are not. Under 10s.
bool criterion4(std::ostream& log) {
  auto t0 = Clock::now();
  bool ok = true;
  for (int m : {4, 6, 8}) {
    for (int k = 1; 2 * k <= m; ++k) {
      auto g = curv::complete_minus_matching(m, k);
      auto rep = curv::sharpness_verdict(g);
      std::string name =
          "K" + std::to_string(m) + " minus " + std::to_string(k) + "-matching";
      ok &= check(log, rep.sharp, name + " sharp");
      ok &= check(log, rep.diameter == 2, name + " diameter 2");
      ok &= check(log, rep.kappa_min == 1, name + " kappa_min == 1");
    }
    // same vertex set, but remove the path 0-1, 1-2 instead
    std::vector<std::string> labels;
    std::vector<curv::Edge> edges;
    for (int i = 0; i < m; ++i) labels.push_back(std::to_string(i));
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        bool removed = (i == 0 && j == 1) || (i == 1 && j == 2);
        if (!removed) edges.emplace_back(i, j);
      }
    }
    auto path_removed = Graph::build(std::move(labels), edges);
    ok &= check(log, !curv::sharpness_verdict(path_removed).sharp,
                "K" + std::to_string(m) + " minus a 2-edge path is not sharp");
  }
  double dt = seconds_since(t0);
  ok &= check(log, dt < 10.0, "runtime < 10 s");
  return ok;
}

// ---------------------------------------------------------------------------
// 5. Irregular diameter-3 suite: generator output is sharp with a unique
//    pole pair, and the structure verifier recovers (r, t). Under 60 s.
bool criterion5(std::ostream& log) {
  auto t0 = Clock::now();
  bool ok = true;
  for (int r = 1; r <= 4; ++r) {
    for (int t = 1; t <= 2; ++t) {
      auto g = curv::irregular_sharp(r, t);
      std::string name = "irregular(" + std::to_string(r) + "," +
                         std::to_string(t) + ")";
      auto rep = curv::sharpness_verdict(g);
      ok &= check(log, rep.diameter == 3, name + " diameter 3");
      ok &= check(log, rep.kappa_min == Rational(2, 3),
                  name + " kappa_min == 2/3");
      ok &= check(log, rep.sharp, name + " sharp");
      ok &= check(log, rep.pole_pairs.size() == 1, name + " unique pole pair");
      auto structure = curv::verify_diameter3_structure(g);
      for (const auto& [clause, result] : structure.clauses) {
        ok &= check(log, result.pass, name + " clause " + clause);
      }
      ok &= check(log, structure.rt == std::pair<int, int>{r, t},
                  name + " recovered (r,t)");
    }
  }
  double dt = seconds_since(t0);
  ok &= check(log, dt < 60.0, "runtime < 60 s");
  return ok;
}

// ---------------------------------------------------------------------------
// 6. Full structural check suite on every sharp graph from criteria 3-5. Under 5 min.
bool criterion6(std::ostream& log) {
  auto t0 = Clock::now();
  bool ok = true;
  std::vector<corpus::NamedGraph> graphs;
  for (int n = 2; n <= 6; ++n) {
    graphs.push_back({"Q" + std::to_string(n), curv::hypercube(n)});
  }
  for (int n = 3; n <= 5; ++n) {
    graphs.push_back({"CP" + std::to_string(n), curv::cocktail_party(n)});
  }
  graphs.push_back({"J(6,3)", curv::johnson(6, 3)});
  graphs.push_back({"demicube(6)", curv::demicube(6)});
  graphs.push_back({"gosset", curv::gosset()});
  for (int m : {4, 6, 8}) {
    for (int k = 1; 2 * k <= m; ++k) {
      graphs.push_back({"K" + std::to_string(m) + "-" + std::to_string(k) +
                            "M",
                        curv::complete_minus_matching(m, k)});
    }
  }
  for (int r = 1; r <= 4; ++r) {
    for (int t = 1; t <= 2; ++t) {
      graphs.push_back({"irregular(" + std::to_string(r) + "," +
                            std::to_string(t) + ")",
                        curv::irregular_sharp(r, t)});
    }
  }

  const std::vector<std::string> required = {
      "level_identity",     "ratio",
      "interval_fullness",  "pole_degree",
      "degree_bound",       "pole_matching",
      "private_neighbors",  "transport_direction",
      "lichnerowicz"};
  for (const auto& [name, g] : graphs) {
    auto rep = curv::analyze_sharpness(g);
    ok &= check(log, rep.sharp, name + " sharp");
    if (!rep.sharp) continue;
    for (const auto& key : required) {
      auto it = rep.checks.find(key);
      bool present = it != rep.checks.end();
      ok &= check(log, present && it->second.pass, name + " check " + key);
    }
  }
  double dt = seconds_since(t0);
  log << "    " << graphs.size() << " graphs in " << dt << " s\n";
  ok &= check(log, dt < 300.0, "runtime < 5 min");
  return ok;
}

// ---------------------------------------------------------------------------
// 7. Hypercube rigidity: permuted Q3/Q4/Q5 are recovered from every pole;
//    C6 is rejected on the pole-degree precondition. Under 10 s.
bool criterion7(std::ostream& log) {
  auto t0 = Clock::now();
  bool ok = true;
  for (int n : {3, 4, 5}) {
    auto g = corpus::permuted(curv::hypercube(n), 1000 + n);
    std::string name = "permuted Q" + std::to_string(n);
    for (int pole = 0; pole < g.vertex_count(); ++pole) {
      auto lab = curv::hypercube_label(g, pole);
      if (!check(log, lab.ok && lab.dimension == n,
                 name + " from pole " + g.label(pole) +
                     (lab.ok ? "" : " (" + lab.refutation + ")"))) {
        ok = false;
        continue;
      }
      std::set<std::uint32_t> seen;
      bool iso = true;
      for (const auto& [v, bits] : lab.labels) seen.insert(bits);
      iso &= seen.size() == static_cast<size_t>(g.vertex_count());
      for (auto [u, v] : g.edges()) {
        iso &= std::popcount(lab.labels.at(u) ^ lab.labels.at(v)) == 1;
      }
      iso &= g.edge_count() == n * (1 << (n - 1));
      ok &= check(log, iso, name + " labeling is an isomorphism");
    }
  }
  bool rejected = false;
  try {
    curv::hypercube_label(curv::cycle_graph(6), 0);
  } catch (const std::invalid_argument& e) {
    rejected = std::string(e.what()).find("2L/3") != std::string::npos;
  }
  ok &= check(log, rejected, "C6 rejected on the d_x > 2L/3 precondition");
  double dt = seconds_since(t0);
  ok &= check(log, dt < 10.0, "runtime < 10 s");
  return ok;
}

// ---------------------------------------------------------------------------
// 8. Certificate closure on the criterion-2 corpus: complementary slackness
//    holds for (optimal coupling, optimal witness), and the star coupling
//    of the optimal coupling is valid with value exactly kappa. Under 60 s.
bool criterion8(std::ostream& log) {
  auto t0 = Clock::now();
  bool ok = true;
  for (const auto& [name, g] : criterion2_corpus()) {
    for (auto [u, v] : g.edges()) {
      auto rep = curv::edge_curvature(g, u, v);
      std::string at = name + " edge (" + g.label(u) + "," + g.label(v) + ")";
      auto [lip, witness] =
          curv::lipschitz_curvature(g, rep.inst.x, rep.inst.y);
      ok &= check(log, curv::slackness_check(rep.inst, rep.coupling, witness),
                  at + ": slackness");
      try {
        auto sc = curv::star_coupling_of(rep.inst, rep.coupling);
        ok &= check(log, sc.value == rep.kappa, at + ": star value == kappa");
      } catch (const std::exception& e) {
        ok &= check(log, false, at + ": star coupling conditions (" +
                                    e.what() + ")");
      }
    }
  }
  double dt = seconds_since(t0);
  ok &= check(log, dt < 60.0, "runtime < 60 s");
  return ok;
}

// ---------------------------------------------------------------------------
// 9. Solver soundness: 200 random instances against exhaustive enumeration,
//    and matching/Hall agreement on all criterion-2 edges. Under 30 s.
bool criterion9(std::ostream& log) {
  auto t0 = Clock::now();
  bool ok = true;
  std::mt19937 rng(777);
  for (int it = 0; it < 200; ++it) {
    auto inst = oracles::random_instance(rng);
    auto coupling = curv::min_cost_transport(inst);
    std::string at = "instance " + std::to_string(it);
    ok &= check(log, curv::coupling_is_feasible(inst, coupling),
                at + ": margins");
    ok &= check(log, coupling.cost == oracles::brute_force_min_cost(inst),
                at + ": cost matches enumeration");
    ok &= check(log, curv::coupling_is_optimal(inst, coupling),
                at + ": no negative residual cycle");
  }
  for (const auto& [name, g] : criterion2_corpus()) {
    for (auto [u, v] : g.edges()) {
      auto inst = curv::blowup_instance(g, u, v);
      bool pm =
          curv::has_perfect_matching(inst.mu_x, inst.mu_y, inst.unit_pairs)
              .perfect;
      bool violated =
          curv::hall_witness_search(inst.mu_x, inst.mu_y, inst.unit_pairs)
              .has_value();
      ok &= check(log, pm == !violated,
                  name + " edge (" + g.label(u) + "," + g.label(v) +
                      "): matching iff no Hall violator");
    }
  }
  double dt = seconds_since(t0);
  ok &= check(log, dt < 30.0, "runtime < 30 s");
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::ostream&)> run;
  };
  std::vector<Criterion> criteria = {
      {1, "running-example reproduction", criterion1},
      {2, "oracle triple-agreement", criterion2},
      {3, "classification regression", criterion3},
      {4, "diameter-2 classification", criterion4},
      {5, "irregular diameter-3 suite", criterion5},
      {6, "check suite on sharp graphs", criterion6},
      {7, "hypercube rigidity", criterion7},
      {8, "certificate closure", criterion8},
      {9, "solver soundness", criterion9},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    std::ostringstream log;
    auto t0 = Clock::now();
    bool pass = false;
    try {
      pass = c.run(log);
    } catch (const std::exception& e) {
      log << "    exception: " << e.what() << "\n";
    }
    double dt = seconds_since(t0);
    std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL")
              << "  " << c.name << " (" << dt << " s)\n";
    std::cout << log.str();
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
