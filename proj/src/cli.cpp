#include "fibers/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "fibers/akfamily.hpp"
#include "fibers/chain.hpp"
#include "fibers/fibergraph.hpp"
#include "fibers/io.hpp"

namespace fibers::cli {

namespace {

using io::json;

struct Problem {
  std::string matrix_path;
  int ak = 0;
  std::string rhs;
  std::string moves;
};

struct Output {
  bool json = false;
  std::string out_path;
};

std::size_t vertex_cap(std::size_t fallback) {
  if (const char* env = std::getenv("FIBERS_MAX_VERTICES")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::Parse, "FIBERS_MAX_VERTICES must be a positive integer");
  }
  return fallback;
}

IntMatrix load_matrix(const Problem& p) {
  if (!p.matrix_path.empty() && p.ak > 0) throw Error(ErrorCode::InvalidArgument, "give either --matrix or --ak");
  if (p.ak > 0) return ak_matrix(p.ak);
  if (p.matrix_path.empty()) throw Error(ErrorCode::InvalidArgument, "--matrix or --ak is required");
  return io::read_matrix(p.matrix_path);
}

IntVec load_rhs(const Problem& p, const IntMatrix& a) {
  if (p.rhs.empty()) {
    if (p.ak > 0) return ak_unit_rhs(p.ak);
    throw Error(ErrorCode::InvalidArgument, "--rhs is required");
  }
  IntVec b = io::parse_vector(p.rhs);
  if (b.size() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "rhs has length " + std::to_string(b.size()) + ", matrix has " +
                                                  std::to_string(a.rows()) + " rows");
  }
  return b;
}

MoveSet load_moves(const std::string& spec, const IntMatrix& a, std::ostream& err) {
  if (spec.empty()) throw Error(ErrorCode::InvalidArgument, "--moves is required");
  auto require_ak = [&]() {
    for (int k = 1; 4 * k + 2 <= static_cast<int>(a.cols()); ++k) {
      if (a == ak_matrix(k)) return k;
    }
    throw Error(ErrorCode::InvalidArgument, "move set '" + spec + "' needs an A_k matrix");
  };
  if (spec == "graver-ak") return graver_Ak(require_ak());
  if (spec == "groebner-lex-ak") return groebner_lex_Ak(require_ak());
  if (spec.rfind("graver-oracle", 0) == 0) {
    if (spec.size() > 13 && spec[13] == ':') {
      const Int bound = io::parse_vector(spec.substr(14)).at(0);
      auto r = graver_oracle(a, bound);
      if (!r.complete) err << "warning: Graver oracle not certified complete at B = " << bound << '\n';
      return r.moves;
    }
    if (spec.size() != 13) throw Error(ErrorCode::Parse, "bad move set '" + spec + "'");
    for (Int bound = 1; bound <= 8; bound *= 2) {
      auto r = graver_oracle(a, bound);
      if (r.complete) return r.moves;
    }
    throw Error(ErrorCode::BoxTooLarge, "Graver oracle not certified complete up to B = 8");
  }
  if (spec.rfind("custom:", 0) == 0) return io::read_moves_csv(spec.substr(7), a);
  throw Error(ErrorCode::Parse, "unknown move set '" + spec + "'");
}

// "3" or "2..4".
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "bad range '" + text + "'");
  }
}

void emit(const Output& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) out << text;
  else io::write_file(o.out_path, text);
}

std::string human(const json& j, const std::string& indent = "") {
  std::ostringstream os;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      os << indent << it.key() << ":\n" << human(*it, indent + "  ");
    } else {
      os << indent << it.key() << ": " << it->dump() << '\n';
    }
  }
  return os.str();
}

void emit_report(const Output& o, std::ostream& out, const json& j) {
  emit(o, out, o.json ? j.dump(2) + "\n" : human(j));
}

void add_problem(CLI::App* app, Problem& p, bool with_moves) {
  app->add_option("--matrix", p.matrix_path, "matrix file (JSON or 'rows cols' text)");
  app->add_option("--ak", p.ak, "use A_k instead of a matrix file")->check(CLI::Range(1, 30));
  app->add_option("--rhs", p.rhs, "right-hand side, e.g. 3 or 0,0,1")->allow_extra_args(false);
  if (with_moves) {
    app->add_option("--moves", p.moves, "graver-ak | groebner-lex-ak | graver-oracle[:B] | custom:file.csv");
  }
}

void add_output(CLI::App* app, Output& o) {
  app->add_flag("--json", o.json, "machine-readable output");
  app->add_option("--out", o.out_path, "write the main output to a file");
}

Fiber load_fiber(const IntMatrix& a, const IntVec& b) {
  EnumerationOptions opts;
  opts.max_points = vertex_cap(opts.max_points);
  return enumerate_fiber(a, b, opts);
}

int cmd_fiber(const Problem& p, const Output& o, std::ostream& out) {
  const IntMatrix a = load_matrix(p);
  const IntVec b = load_rhs(p, a);
  const Fiber f = load_fiber(a, b);
  if (o.json) emit(o, out, io::fiber_json(f).dump(2) + "\n");
  else emit(o, out, io::fiber_csv(f));
  return f.empty() ? Exit::empty : Exit::ok;
}

int cmd_connectivity(const Problem& p, const Output& o, const std::string& dot_path, const std::string& edges_path,
                     std::ostream& out, std::ostream& err) {
  const IntMatrix a = load_matrix(p);
  const IntVec b = load_rhs(p, a);
  const MoveSet moves = load_moves(p.moves, a, err);
  const Fiber f = load_fiber(a, b);
  if (f.empty()) {
    err << "fiber is empty\n";
    return Exit::empty;
  }
  const FiberGraph g = build_graph(f, moves);
  json j = io::connectivity_json(analyze_connectivity(g.graph));
  j["moves"] = moves.size();
  j["move_kind"] = std::string(to_string(moves.kind()));
  if (!dot_path.empty()) io::write_file(dot_path, io::dot(g));
  if (!edges_path.empty()) io::write_file(edges_path, io::edge_list_csv(g.graph));
  emit_report(o, out, j);
  return Exit::ok;
}

std::vector<double> default_eps() { return {0.25}; }

int cmd_chain(const Problem& p, const Output& o, const std::vector<double>& eps, std::ostream& out,
              std::ostream& err) {
  const IntMatrix a = load_matrix(p);
  const IntVec b = load_rhs(p, a);
  const MoveSet moves = load_moves(p.moves, a, err);
  const Fiber f = load_fiber(a, b);
  if (f.empty()) {
    err << "fiber is empty\n";
    return Exit::empty;
  }
  const FiberGraph g = build_graph(f, moves);
  if (!is_connected(g.graph)) err << "warning: fiber graph is disconnected\n";
  const SpectralReport r = mixing_times(metropolis_matrix(g.graph), eps);
  json j = io::spectral_json(r);
  j["edges"] = g.graph.num_edges();
  emit_report(o, out, j);
  return Exit::ok;
}

int cmd_experiment(const std::string& which, int limit, std::size_t jobs, const Output& o, std::ostream& out) {
  SweepOptions opts;
  opts.jobs = jobs;
  opts.max_vertices = vertex_cap(opts.max_vertices);
  const bool fig4 = which == "fig4";
  const auto rows = fig4 ? sweep_fig4(limit, opts) : sweep_fig5(limit, opts);
  if (o.json) {
    json list = json::array();
    for (const auto& r : rows) {
      list.push_back({{fig4 ? "k" : "lambda", r.param},
                      {"vertices", r.vertices},
                      {"slem_graver", r.slem_graver},
                      {"slem_groebner", r.slem_groebner},
                      {"time_graver", r.time_graver},
                      {"time_groebner", r.time_groebner}});
    }
    emit(o, out, json{{"experiment", which}, {"definition_used", kMixingDefinition}, {"rows", list}}.dump(2) + "\n");
  } else {
    emit(o, out, sweep_csv(rows, fig4 ? "k" : "lambda"));
  }
  return Exit::ok;
}

int cmd_verify(const std::string& suite, const std::string& krange, std::size_t samples, std::uint64_t seed,
               Int bound, const Output& o, std::ostream& out) {
  const auto [k0, k1] = parse_range(krange);
  if (k0 < 1 || k1 < k0) throw Error(ErrorCode::InvalidArgument, "bad k range '" + krange + "'");
  json checks = json::array();
  bool all = true;
  for (int k = k0; k <= k1; ++k) {
    if (suite == "conj1") {
      const auto r = verify_counterexample_conj1(k);
      checks.push_back(io::conj1_json(r));
      all = all && r.passed;
    } else if (suite == "graver-theorem") {
      AkOptions opts;
      opts.max_vertices = vertex_cap(opts.max_vertices);
      std::vector<IntVec> rhs{ak_unit_rhs(k)};
      for (auto& b : sample_ak_rhs(k, samples, seed, opts)) {
        if (b != rhs.front()) rhs.push_back(std::move(b));
      }
      for (const auto& b : rhs) {
        const auto r = verify_graver_theorem(k, b, opts);
        checks.push_back(io::graver_theorem_json(r));
        all = all && r.passed;
      }
    } else if (suite == "graver-basis") {
      const MoveSet explicit_basis = graver_Ak(k);
      json row{{"k", k}, {"explicit", explicit_basis.size_with_signs()}};
      bool passed = false;
      for (Int b = 1; b <= 4; ++b) {
        const auto oracle = graver_oracle(ak_matrix(k), b);
        if (!oracle.complete) continue;
        passed = oracle.moves.signed_vectors() == explicit_basis.signed_vectors();
        row["bound"] = b;
        row["oracle"] = oracle.moves.size_with_signs();
        row["complete"] = true;
        break;
      }
      row["passed"] = passed;
      checks.push_back(row);
      all = all && passed;
    } else if (suite == "universality") {
      const auto r = verify_universality(k, bound);
      json j = io::universality_json(r);
      const IntMatrix bk = build_Bk(k);
      j["Bk_rows"] = bk.rows();
      j["Bk_cols"] = bk.cols();
      checks.push_back(j);
      all = all && r.passed;
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown suite '" + suite + "'");
    }
  }
  const json report{{"suite", suite}, {"passed", all}, {"checks", checks}};
  if (o.json) {
    emit(o, out, report.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "suite " << suite << ": " << (all ? "PASS" : "FAIL") << '\n';
    for (const auto& c : checks) os << "  " << c.dump() << '\n';
    emit(o, out, os.str());
  }
  return all ? Exit::ok : Exit::failed;
}

int cmd_ak(const std::string& what, int k, const std::string& rhs_text, const Output& o, std::ostream& out) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "--k is required");
  const IntVec b = rhs_text.empty() ? ak_unit_rhs(k) : io::parse_vector(rhs_text);
  const RhsDecomp d = decompose_rhs(b);
  if (d.k != k) throw Error(ErrorCode::DimensionMismatch, "rhs length must be 2k+1");
  if (what == "boxes") {
    emit(o, out, io::box_csv(d));
    return d.empty ? Exit::empty : Exit::ok;
  }
  if (what == "matrix") {
    const IntMatrix m = ak_matrix(k);
    emit_report(o, out, io::matrix_json(m));
    return Exit::ok;
  }
  json j{{"k", k}, {"w1", d.w1}, {"w2", d.w2}, {"c", d.c}, {"lower", d.lower}, {"upper", d.upper}, {"empty", d.empty}};
  if (!d.empty) {
    j["fiber_size"] = ak_fiber_size(d);
    j["min_degree_formula"] = min_degree_formula(d);
  }
  emit_report(o, out, j);
  return d.empty ? Exit::empty : Exit::ok;
}

int cmd_moves(const Problem& p, const Output& o, std::ostream& out, std::ostream& err) {
  const IntMatrix a = load_matrix(p);
  const MoveSet m = load_moves(p.moves, a, err);
  if (o.json) emit(o, out, io::moveset_json(m).dump(2) + "\n");
  else emit(o, out, io::moves_csv(m));
  return Exit::ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fiber graphs, connectivity and Metropolis chains", "fibers"};
  app.require_subcommand(1);

  Problem prob;
  Output outp;

  auto* fiber = app.add_subcommand("fiber", "enumerate a fiber");
  add_problem(fiber, prob, false);
  add_output(fiber, outp);

  std::string dot_path, edges_path;
  auto* conn = app.add_subcommand("connectivity", "connectivity report of a fiber graph");
  add_problem(conn, prob, true);
  add_output(conn, outp);
  conn->add_option("--dot", dot_path, "write the graph as DOT");
  conn->add_option("--edges", edges_path, "write the edge list as CSV");

  std::string suite, krange = "1..2";
  std::size_t samples = 5;
  std::uint64_t seed = 1;
  Int bound = 100;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "conj1 | graver-theorem | graver-basis | universality")->required();
  verify->add_option("--k", krange, "k or k0..k1");
  verify->add_option("--samples", samples, "sampled rhs per k (graver-theorem)");
  verify->add_option("--seed", seed, "sampler seed");
  verify->add_option("--bound", bound, "rhs lower bound N (universality)");
  add_output(verify, outp);

  std::vector<double> eps;
  auto* chain = app.add_subcommand("chain", "Metropolis chain on a fiber graph");
  add_problem(chain, prob, true);
  add_output(chain, outp);
  chain->add_option("--eps", eps, "TV thresholds")->delimiter(',');
  std::string which;
  int limit = 0;
  std::size_t jobs = 1;
  auto* experiment = chain->add_subcommand("experiment", "parameter sweeps");
  experiment->add_option("which", which, "fig4 | fig5")->required()->check(CLI::IsMember({"fig4", "fig5"}));
  experiment->add_option("--kmax", limit, "largest k (fig4)");
  experiment->add_option("--lmax", limit, "largest lambda (fig5)");
  experiment->add_option("--jobs", jobs, "worker threads");
  add_output(experiment, outp);

  std::string ak_what;
  int ak_k = 0;
  std::string ak_rhs;
  auto* ak = app.add_subcommand("ak", "A_k family helpers");
  ak->add_option("what", ak_what, "boxes | decompose | matrix")
      ->required()
      ->check(CLI::IsMember({"boxes", "decompose", "matrix"}));
  ak->add_option("--k", ak_k, "k")->required();
  ak->add_option("--rhs", ak_rhs, "rhs (default e_{2k+1})");
  add_output(ak, outp);

  auto* moves = app.add_subcommand("moves", "print a move set");
  add_problem(moves, prob, true);
  add_output(moves, outp);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Exit::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Exit::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return Exit::error;
  }

  try {
    if (*fiber) return cmd_fiber(prob, outp, out);
    if (*conn) return cmd_connectivity(prob, outp, dot_path, edges_path, out, err);
    if (*verify) return cmd_verify(suite, krange, samples, seed, bound, outp, out);
    if (*chain) {
      if (*experiment) {
        if (limit < 1) throw Error(ErrorCode::InvalidArgument, which == "fig4" ? "--kmax is required" : "--lmax is required");
        return cmd_experiment(which, limit, jobs, outp, out);
      }
      return cmd_chain(prob, outp, eps.empty() ? default_eps() : eps, out, err);
    }
    if (*ak) return cmd_ak(ak_what, ak_k, ak_rhs, outp, out);
    if (*moves) return cmd_moves(prob, outp, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::EmptyFiber ? Exit::empty : Exit::error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return Exit::error;
  }
  return Exit::error;
}

}  // namespace fibers::cli
