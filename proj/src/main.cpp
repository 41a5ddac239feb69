// Command-line front end: parse / validate / normalize / graph / check /
// compare / eval over .proof files.
//
// Exit codes: 0 success (check: SOUND), 1 check/compare UNSOUND or eval found
// a false instance, 2 structural failure (parse, validation, normalization,
// graph or discharge machinery), 64 usage errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cyclo/checker.hpp"
#include "cyclo/cycles.hpp"
#include "cyclo/digraph.hpp"
#include "cyclo/format.hpp"
#include "cyclo/normalize.hpp"
#include "cyclo/ordering.hpp"
#include "cyclo/semantics.hpp"

namespace {

using namespace cyclo;

// ------------------------------------------------------------------- output

struct Style {
  bool on = false;
  std::string good(const std::string& s) const {
    return on ? "\x1b[32m" + s + "\x1b[0m" : s;
  }
  std::string bad(const std::string& s) const {
    return on ? "\x1b[31m" + s + "\x1b[0m" : s;
  }
  std::string warn(const std::string& s) const {
    return on ? "\x1b[33m" + s + "\x1b[0m" : s;
  }
};

Style style_from_env() {
  const char* v = std::getenv("CYCLO_COLOR");
  Style st;
  st.on = v != nullptr && *v != '\0' && std::string(v) != "0";
  return st;
}

std::string join_path(const std::vector<NodeId>& nodes) {
  std::string out;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += " -> ";
    out += nodes[i].str();
  }
  return out;
}

std::string atom_multiset(const std::vector<Atom>& atoms) {
  std::string out = "{";
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ", ";
    out += atoms[i].str();
  }
  return out + "}";
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string subst_sexp(const Subst& s) {
  std::string out = "(";
  bool first = true;
  for (const auto& [v, t] : s.bindings()) {
    if (!first) out += " ";
    first = false;
    out += "(" + v + " " + print_term(t) + ")";
  }
  return out + ")";
}

// The per-constraint block of the human-readable check report. Notation
// follows the path labels N^1..N^p: theta_c is the cumulative substitution of
// the path and A_S the measure of a sequent instance.
void print_constraint(std::ostream& os, const Style& st, size_t index,
                      const Constraint& c, size_t scc_size) {
  os << "constraint " << index << ": bud " << c.bud.str() << ", companion "
     << c.companion.str() << ", scc size " << scc_size << "\n";
  os << "  path: " << join_path(c.path) << "\n";
  os << "  theta_c = " << c.theta_c.str() << "\n";
  size_t p = c.path.size();
  os << "  A_S(N^1)[theta_c] = " << atom_multiset(c.deriv.measure_from) << "\n";
  os << "  A_S(N^" << (p - 1) << ") = " << atom_multiset(c.deriv.measure_to)
     << "\n";
  for (const MatchedPair& mp : c.deriv.pairs) {
    os << "  " << mp.to.atom.str() << " derives from " << mp.from.atom.str()
       << " [" << (mp.cancelled ? "equal" : "residual") << ", "
       << mp.trace.progress << " progress point"
       << (mp.trace.progress == 1 ? "" : "s") << "]:";
    for (size_t i = 0; i < mp.trace.atoms.size(); ++i)
      os << (i ? " -> " : " ") << mp.trace.atoms[i].str();
    os << "\n";
  }
  if (c.discharged) {
    os << "  discharged: " << st.good("yes") << "\n";
  } else {
    os << "  discharged: " << st.bad("NO") << " — " << c.deriv.failure << "\n";
  }
}

std::string verdict_line(bool sound, size_t constraints, size_t discharged) {
  std::ostringstream os;
  os << (sound ? "SOUND" : "UNSOUND") << " (" << constraints << " constraint"
     << (constraints == 1 ? "" : "s") << ", " << discharged << " discharged)";
  return os.str();
}

void write_report_file(const std::string& path, const SoundnessReport& rep) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "(report\n";
  out << "  (verdict " << (rep.sound ? "sound" : "unsound") << ")\n";
  out << "  (constraints " << rep.constraints.size() << ")\n";
  out << "  (discharged " << rep.discharged_count << ")\n";
  for (const std::string& w : rep.warnings)
    out << "  (warning " << quote(w) << ")\n";
  for (const AuditEntry& e : rep.normalize_log)
    out << "  (normalize-op " << quote(e.str()) << ")\n";
  for (const Constraint& c : rep.constraints) {
    out << "  (constraint\n";
    out << "    (bud " << c.bud.str() << ")\n";
    out << "    (companion " << c.companion.str() << ")\n";
    out << "    (path";
    for (const NodeId& n : c.path) out << " " << n.str();
    out << ")\n";
    out << "    (theta " << subst_sexp(c.theta_c) << ")\n";
    out << "    (measure-from";
    for (const Atom& a : c.deriv.measure_from) out << " " << print_atom(a);
    out << ")\n";
    out << "    (measure-to";
    for (const Atom& a : c.deriv.measure_to) out << " " << print_atom(a);
    out << ")\n";
    out << "    (discharged " << (c.discharged ? "yes" : "no") << ")";
    if (!c.discharged) out << "\n    (failure " << quote(c.deriv.failure) << ")";
    out << ")\n";
  }
  out << ")\n";
}

// --------------------------------------------------------------- subcommands

int run_parse(const std::string& path) {
  ProofFile pf = load_proof_file(path);
  std::string text = serialize_proof_file(pf);
  parse_proof_file(text);  // round-trip guard
  std::cout << text;
  return 0;
}

int run_validate(const std::string& path, const Style& st) {
  ProofFile pf = load_proof_file(path);
  std::vector<std::string> warnings =
      validate_tree_set(pf.defs, pf.trees, CheckMode::Strict);
  for (const std::string& w : warnings)
    std::cout << st.warn("warning: ") << w << "\n";
  size_t buds = pf.trees.buds().size();
  std::cout << "ok: " << pf.trees.nodes.size() << " nodes in "
            << pf.trees.trees.size() << " tree"
            << (pf.trees.trees.size() == 1 ? "" : "s") << ", " << buds
            << " bud" << (buds == 1 ? "" : "s") << ", " << warnings.size()
            << " warning" << (warnings.size() == 1 ? "" : "s") << "\n";
  return 0;
}

int run_normalize(const std::string& path, const Style& st) {
  ProofFile pf = load_proof_file(path);
  std::vector<std::string> warnings =
      validate_tree_set(pf.defs, pf.trees, CheckMode::Strict);
  for (const std::string& w : warnings)
    std::cerr << st.warn("warning: ") << w << "\n";
  NormalizeResult res = normalize(pf.trees);
  for (const AuditEntry& e : res.log) std::cout << "; " << e.str() << "\n";
  if (res.log.empty()) std::cout << "; already in normal form\n";
  pf.trees = std::move(res.trees);
  std::cout << serialize_proof_file(pf);
  return 0;
}

int run_graph(const std::string& path, bool dot, const Style& st) {
  ProofFile pf = load_proof_file(path);
  std::vector<std::string> warnings =
      validate_tree_set(pf.defs, pf.trees, CheckMode::Strict);
  Digraph g = build_digraph(pf.trees, DigraphMode::Render);
  if (dot) {
    for (const std::string& w : warnings)
      std::cerr << st.warn("warning: ") << w << "\n";
    std::cout << to_dot(g);
    return 0;
  }
  for (const std::string& w : warnings)
    std::cout << st.warn("warning: ") << w << "\n";
  size_t backlinks = 0;
  for (const Arrow& a : g.arrows)
    if (a.kind == ArrowKind::Backlink) ++backlinks;
  std::cout << "graph: " << pf.trees.nodes.size() << " nodes, "
            << g.arrows.size() << " arrows (" << backlinks << " backlink"
            << (backlinks == 1 ? "" : "s") << ")\n";
  std::vector<size_t> big = g.non_singleton_sccs();
  std::cout << "sccs: " << g.sccs.size() << " total, " << big.size()
            << " non-singleton\n";
  for (size_t idx : big) {
    std::cout << "  scc size " << g.sccs[idx].size() << ": {";
    for (size_t i = 0; i < g.sccs[idx].size(); ++i) {
      if (i) std::cout << ", ";
      std::cout << g.sccs[idx][i].str();
    }
    std::cout << "}\n";
  }
  return 0;
}

int run_check(const std::string& path, unsigned jobs, bool quiet,
              const std::string& report_path, const Style& st) {
  ProofFile pf = load_proof_file(path);
  SoundnessReport rep = check_soundness(pf, jobs);
  if (!quiet) {
    for (const std::string& w : rep.warnings)
      std::cerr << st.warn("warning: ") << w << "\n";
    for (const AuditEntry& e : rep.normalize_log)
      std::cout << "normalize: " << e.str() << "\n";
    size_t i = 1;
    for (const Constraint& c : rep.constraints) {
      print_constraint(std::cout, st, i++, c, rep.graph.sccs[c.scc].size());
    }
  }
  std::string line =
      verdict_line(rep.sound, rep.constraints.size(), rep.discharged_count);
  std::cout << (rep.sound ? st.good(line) : st.bad(line)) << "\n";
  if (!report_path.empty()) write_report_file(report_path, rep);
  return rep.sound ? 0 : 1;
}

int run_compare(const std::string& path, unsigned jobs, const Style& st) {
  ProofFile pf = load_proof_file(path);
  SoundnessReport rep = check_soundness(pf, jobs);
  OrderingContext ord = OrderingContext::from_pairs(pf.precedence.less);
  PriorCriterionReport prior =
      check_prior_criterion(ord, pf.measures, pf.defs, rep.graph);
  Redundancy red = redundancy_report(rep.graph);

  std::cout << "per-scc discharge: "
            << verdict_line(rep.sound, rep.constraints.size(),
                            rep.discharged_count)
            << "\n";
  size_t cycle_constraints = 0, cycle_discharged = 0;
  for (const CycleEntry& e : prior.cycles) {
    cycle_constraints += e.constraints.size();
    for (const CycleConstraint& c : e.constraints)
      if (c.discharged) ++cycle_discharged;
  }
  std::cout << "minimal-cycle criterion: "
            << (prior.sound ? "SOUND" : "UNSOUND") << " (" << prior.cycles.size()
            << " cycle" << (prior.cycles.size() == 1 ? "" : "s") << ", "
            << cycle_constraints << " path constraint"
            << (cycle_constraints == 1 ? "" : "s") << ", " << cycle_discharged
            << " discharged)\n";
  std::cout << "redundancy: " << red.distinct << " distinct, " << red.total
            << " total\n";
  if (rep.sound != prior.sound) {
    std::cout << st.bad("verdicts disagree") << "\n";
    return 2;
  }
  std::cout << "verdicts agree\n";
  return rep.sound ? 0 : 1;
}

int run_eval(const std::string& path, unsigned depth, unsigned universe_depth,
             const Style& st) {
  ProofFile pf = load_proof_file(path);
  Universe U = ground_universe(pf.defs.sig, universe_depth);
  OrdinaryExtensions ords;
  for (const auto& [pred, atoms] : pf.ord_ext.extensions)
    ords[pred] = std::set<Atom>(atoms.begin(), atoms.end());
  Approximant A = approximant(pf.defs, ords, depth, U);

  std::cout << "universe: " << U.terms.size() << " ground term"
            << (U.terms.size() == 1 ? "" : "s") << " (depth " << universe_depth
            << "); approximant depth " << depth << "\n";

  bool any_false = false;
  for (const Tree& tree : pf.trees.trees) {
    const Sequent& s = pf.trees.node(tree.root).sequent;
    std::set<std::string> fv = free_vars(s);
    std::vector<std::string> vars(fv.begin(), fv.end());
    std::cout << "root " << tree.root.str() << ": " << s.str() << "\n";
    if (!vars.empty() && U.terms.empty()) {
      std::cout << "  no ground instances over the empty universe\n";
      continue;
    }

    size_t n_true = 0, n_unknown = 0, n_false = 0;
    std::vector<std::string> shown;
    const size_t cap = 20;
    size_t suppressed = 0;
    std::vector<size_t> idx(vars.size(), 0);
    bool more = true;
    while (more) {
      std::map<std::string, Term> binding;
      for (size_t i = 0; i < vars.size(); ++i)
        binding.emplace(vars[i], U.terms[idx[i]]);
      Subst inst{std::move(binding)};
      Truth t = eval_ground_sequent(pf.defs, ords, A, U, inst(s));
      if (t == Truth::True) {
        ++n_true;
      } else {
        if (t == Truth::False) {
          ++n_false;
          any_false = true;
        } else {
          ++n_unknown;
        }
        if (shown.size() < cap)
          shown.push_back("  " + std::string(truth_name(t)) + ": " +
                          inst(s).str());
        else
          ++suppressed;
      }
      more = false;
      for (size_t p = 0; p < idx.size(); ++p) {
        if (++idx[p] < U.terms.size()) {
          more = true;
          break;
        }
        idx[p] = 0;
      }
      if (vars.empty()) more = false;
    }
    size_t total = n_true + n_unknown + n_false;
    std::cout << "  instances: " << total << " = " << n_true << " true / "
              << n_unknown << " unknown / "
              << (n_false ? st.bad(std::to_string(n_false))
                          : std::to_string(n_false))
              << " false\n";
    for (const std::string& line : shown) std::cout << line << "\n";
    if (suppressed)
      std::cout << "  ... and " << suppressed << " more non-true instance"
                << (suppressed == 1 ? "" : "s") << "\n";
  }
  return any_false ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  Style st = style_from_env();

  CLI::App app{"cyclic pre-proof soundness checker"};
  app.require_subcommand(1);

  std::string in_path, report_path;
  unsigned jobs = 1;
  bool dot = false, quiet = false;
  unsigned depth = 8, universe_depth = 4;

  CLI::App* c_parse = app.add_subcommand("parse", "parse and reprint a file");
  c_parse->add_option("file", in_path, "input .proof file")->required();

  CLI::App* c_validate =
      app.add_subcommand("validate", "validate every rule application");
  c_validate->add_option("file", in_path, "input .proof file")->required();

  CLI::App* c_normalize = app.add_subcommand(
      "normalize", "rewrite into normal form and reprint");
  c_normalize->add_option("file", in_path, "input .proof file")->required();

  CLI::App* c_graph =
      app.add_subcommand("graph", "digraph summary of the validated input");
  c_graph->add_option("file", in_path, "input .proof file")->required();
  c_graph->add_flag("--dot", dot, "emit Graphviz DOT");

  CLI::App* c_check =
      app.add_subcommand("check", "full soundness check (normalizes first)");
  c_check->add_option("file", in_path, "input .proof file")->required();
  c_check->add_option("--report", report_path, "write machine report here");
  c_check->add_option("--jobs", jobs, "parallel constraint checks")
      ->check(CLI::Range(1u, 256u));
  c_check->add_flag("--quiet", quiet, "verdict line only");

  CLI::App* c_compare = app.add_subcommand(
      "compare", "run both soundness criteria and compare verdicts");
  c_compare->add_option("file", in_path, "input .proof file")->required();
  c_compare->add_option("--jobs", jobs, "parallel constraint checks")
      ->check(CLI::Range(1u, 256u));

  CLI::App* c_eval = app.add_subcommand(
      "eval", "evaluate ground instances of the root sequents");
  c_eval->add_option("file", in_path, "input .proof file")->required();
  c_eval->add_option("--depth", depth, "approximant iteration count");
  c_eval->add_option("--universe", universe_depth, "ground term nesting depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (c_parse->parsed()) return run_parse(in_path);
    if (c_validate->parsed()) return run_validate(in_path, st);
    if (c_normalize->parsed()) return run_normalize(in_path, st);
    if (c_graph->parsed()) return run_graph(in_path, dot, st);
    if (c_check->parsed())
      return run_check(in_path, jobs, quiet, report_path, st);
    if (c_compare->parsed()) return run_compare(in_path, jobs, st);
    if (c_eval->parsed()) return run_eval(in_path, depth, universe_depth, st);
  } catch (const ParseError& e) {
    std::cerr << st.bad("parse error: ") << e.what() << "\n";
    return 2;
  } catch (const StageError& e) {
    std::cerr << st.bad(std::string(stage_name(e.stage)) + " error: ")
              << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << st.bad("error: ") << e.what() << "\n";
    return 2;
  }
  return 64;
}
