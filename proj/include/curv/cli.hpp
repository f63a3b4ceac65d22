#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curv/curvature.hpp"
#include "curv/edgelist.hpp"
#include "curv/families.hpp"
#include "curv/graph.hpp"
#include "curv/json_report.hpp"
#include "curv/rational.hpp"
#include "curv/sharpness.hpp"

namespace curv::cli {

namespace detail {

inline Graph load_graph(const std::string& path, std::istream& in) {
  std::ostringstream text;
  if (path == "-") {
    text << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw std::invalid_argument("cannot open '" + path + "'");
    text << file.rdbuf();
  }
  return parse_edge_list(text.str());
}

inline int vertex_by_label(const Graph& g, const std::string& label) {
  auto idx = g.index_of(label);
  if (!idx) throw std::invalid_argument("no vertex labeled '" + label + "'");
  return *idx;
}

inline void print_sharpness_text(const Graph& g, const SharpnessReport& rep,
                                 std::ostream& out) {
  out << "vertices: " << g.vertex_count() << "\n";
  out << "edges: " << g.edge_count() << "\n";
  out << "diameter: " << rep.diameter << "\n";
  out << "kappa_min: " << to_fraction_string(rep.kappa_min) << "  (edge "
      << g.label(rep.kappa_witness.first) << " "
      << g.label(rep.kappa_witness.second) << ")\n";
  out << "sharp: " << (rep.sharp ? "yes" : "no") << "\n";
  out << "poles:";
  for (auto [u, v] : rep.pole_pairs) {
    out << " (" << g.label(u) << "," << g.label(v) << ")";
  }
  out << "\n";
  for (const auto& [name, result] : rep.checks) {
    out << "check " << name << ": " << (result.pass ? "pass" : "FAIL") << "\n";
    for (const auto& w : result.witnesses) out << "  " << w << "\n";
  }
  if (rep.structure) {
    out << "structure: r=" << rep.structure->first
        << " t=" << rep.structure->second << "\n";
  }
}

}  // namespace detail

// Exit codes: 0 success, 1 negative verdict (verify-sharp / crosscheck),
// 2 input or usage errors.
inline int run(const std::vector<std::string>& args, std::istream& in,
               std::ostream& out, std::ostream& err) {
  CLI::App app{"exact Lin-Lu-Yau edge curvature and Bonnet-Myers sharpness "
               "analysis on graphs"};
  app.name("curv");
  app.require_subcommand(1);

  std::string file, format = "text", oracle = "both", output_path;
  std::vector<std::string> edge_labels, spec_tokens;
  bool all_edges = false, strict = false;
  auto format_check = CLI::IsMember({"text", "json"});

  auto* cmd_curv = app.add_subcommand(
      "curvature", "per-edge curvature as exact fractions");
  cmd_curv->add_option("file", file, "edge-list file, or - for stdin")
      ->required();
  auto* opt_edge =
      cmd_curv->add_option("--edge", edge_labels, "single edge U V")
          ->expected(2);
  cmd_curv->add_flag("--all", all_edges, "every edge (default)")
      ->excludes(opt_edge);
  cmd_curv->add_option("--format", format)->check(format_check);

  auto* cmd_analyze =
      app.add_subcommand("analyze", "full sharpness report");
  cmd_analyze->add_option("file", file, "edge-list file, or - for stdin")
      ->required();
  cmd_analyze->add_option("--format", format)->check(format_check);

  auto* cmd_gen = app.add_subcommand(
      "generate", "write an edge list for a named family");
  cmd_gen
      ->add_option("spec", spec_tokens,
                   "family name and integer params; `cartesian` takes two "
                   "nested specs")
      ->required()
      ->expected(-1);
  cmd_gen->add_option("-o,--output", output_path, "output file");

  auto* cmd_verify = app.add_subcommand(
      "verify-sharp", "exit 0 iff the graph is Bonnet-Myers sharp");
  cmd_verify->add_option("file", file, "edge-list file, or - for stdin")
      ->required();
  cmd_verify->add_flag("--strict", strict,
                       "also require every structural check to pass");
  cmd_verify->add_option("--format", format)->check(format_check);

  auto* cmd_cross = app.add_subcommand(
      "crosscheck", "audit curvature against independent oracles");
  cmd_cross->add_option("file", file, "edge-list file, or - for stdin")
      ->required();
  cmd_cross->add_option("--oracle", oracle)
      ->check(CLI::IsMember({"lp", "lipschitz", "both"}));
  cmd_cross->add_option("--format", format)->check(format_check);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_curv->parsed()) {
      Graph g = detail::load_graph(file, in);
      if (!edge_labels.empty()) {
        int u = detail::vertex_by_label(g, edge_labels[0]);
        int v = detail::vertex_by_label(g, edge_labels[1]);
        auto rep = edge_curvature(g, u, v);
        if (format == "json") {
          out << curvature_report_json(g, rep).dump(2) << "\n";
        } else {
          out << to_fraction_string(rep.kappa) << "\n";
        }
      } else {
        auto kappas = all_edge_curvatures(g);
        if (format == "json") {
          out << all_curvatures_json(g, kappas).dump(2) << "\n";
        } else {
          for (const auto& [e, kappa] : kappas) {
            out << g.label(e.first) << " " << g.label(e.second) << " "
                << to_fraction_string(kappa) << "\n";
          }
        }
      }
      return 0;
    }

    if (cmd_analyze->parsed()) {
      Graph g = detail::load_graph(file, in);
      auto rep = analyze_sharpness(g);
      if (format == "json") {
        out << sharpness_json(g, rep).dump(2) << "\n";
      } else {
        detail::print_sharpness_text(g, rep, out);
      }
      return 0;
    }

    if (cmd_gen->parsed()) {
      Graph g = parse_family_spec(spec_tokens);
      std::string header;
      for (const auto& tok : spec_tokens) {
        header += (header.empty() ? "" : " ") + tok;
      }
      std::string text = format_edge_list(g, header);
      if (output_path.empty()) {
        out << text;
      } else {
        std::ofstream f(output_path);
        if (!f) {
          throw std::invalid_argument("cannot write '" + output_path + "'");
        }
        f << text;
      }
      return 0;
    }

    if (cmd_verify->parsed()) {
      Graph g = detail::load_graph(file, in);
      auto rep = strict ? analyze_sharpness(g) : sharpness_verdict(g);
      bool ok = rep.sharp;
      if (strict) {
        for (const auto& [_, result] : rep.checks) ok = ok && result.pass;
      }
      if (format == "json") {
        out << sharpness_json(g, rep).dump(2) << "\n";
      } else {
        detail::print_sharpness_text(g, rep, out);
        out << (ok ? "verdict: sharp" : "verdict: not sharp") << "\n";
      }
      return ok ? 0 : 1;
    }

    if (cmd_cross->parsed()) {
      Graph g = detail::load_graph(file, in);
      bool use_lp = (oracle == "lp" || oracle == "both");
      bool use_lipschitz = (oracle == "lipschitz" || oracle == "both");
      bool all_agree = true;
      json edges_json = json::array();
      for (auto [u, v] : g.edges()) {
        auto rep = edge_curvature(g, u, v);
        bool agree = true;
        json je{{"u", g.label(u)},
                {"v", g.label(v)},
                {"kappa", rational_json(rep.kappa)}};
        std::ostringstream line;
        line << g.label(u) << " " << g.label(v)
             << " kappa=" << to_fraction_string(rep.kappa);
        if (use_lp) {
          Rational lp = lazy_lp_curvature(g, u, v, default_lazy_alpha(g, u, v));
          Rational ollivier = lazy_lp_curvature(g, u, v, Rational(0));
          agree = agree && lp == rep.kappa && rep.kappa >= ollivier;
          line << " lp=" << to_fraction_string(lp)
               << " ollivier=" << to_fraction_string(ollivier);
          je["lp"] = rational_json(lp);
          je["ollivier"] = rational_json(ollivier);
        }
        if (use_lipschitz) {
          auto [lip, witness] = lipschitz_curvature(g, u, v);
          agree = agree && lip == rep.kappa;
          line << " lipschitz=" << to_fraction_string(lip);
          je["lipschitz"] = rational_json(lip);
        }
        je["agree"] = agree;
        edges_json.push_back(je);
        all_agree = all_agree && agree;
        if (format != "json") {
          out << line.str() << (agree ? " ok" : " MISMATCH") << "\n";
        }
      }
      if (format == "json") {
        out << json{{"edges", edges_json}, {"agree", all_agree}}.dump(2)
            << "\n";
      } else {
        out << (all_agree ? "all edges agree" : "disagreement found") << "\n";
      }
      return all_agree ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace curv::cli
