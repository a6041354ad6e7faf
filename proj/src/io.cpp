#include "fibers/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fibers::io {

namespace {

Int parse_int(std::string_view tok) {
  if (tok.empty()) throw Error(ErrorCode::Parse, "empty integer token");
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(std::string(tok), &pos);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "not an integer: '" + std::string(tok) + "'");
  }
  if (pos != tok.size()) throw Error(ErrorCode::Parse, "not an integer: '" + std::string(tok) + "'");
  return static_cast<Int>(v);
}

json double_json(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? json("inf") : json("-inf");
}

}  // namespace

IntVec parse_vector(std::string_view text) {
  IntVec out;
  std::string tok;
  auto flush = [&] {
    if (!tok.empty()) out.push_back(parse_int(tok));
    tok.clear();
  };
  for (char ch : text) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) flush();
    else tok.push_back(ch);
  }
  flush();
  return out;
}

IntMatrix parse_matrix(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorCode::Parse, "empty matrix input");
  if (text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Parse, std::string("matrix JSON: ") + e.what());
    }
    try {
      const auto rows = j.at("rows").get<std::size_t>();
      const auto cols = j.at("cols").get<std::size_t>();
      const json& raw = j.at("entries");
      if (!raw.is_array() || !std::all_of(raw.begin(), raw.end(), [](const json& x) { return x.is_number_integer(); })) {
        throw Error(ErrorCode::Parse, "matrix JSON: entries must be an array of integers");
      }
      auto entries = raw.get<std::vector<Int>>();
      return IntMatrix(rows, cols, std::move(entries));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Parse, std::string("matrix JSON: ") + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, e.what());
    }
  }
  const IntVec all = parse_vector(text);
  if (all.size() < 2 || all[0] <= 0 || all[1] <= 0) throw Error(ErrorCode::Parse, "matrix text needs a 'rows cols' header");
  const auto rows = static_cast<std::size_t>(all[0]);
  const auto cols = static_cast<std::size_t>(all[1]);
  if (all.size() != 2 + rows * cols) {
    throw Error(ErrorCode::Parse, "expected " + std::to_string(rows * cols) + " entries, got " +
                                      std::to_string(all.size() - 2));
  }
  return IntMatrix(rows, cols, std::vector<Int>(all.begin() + 2, all.end()));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << content;
}

IntMatrix read_matrix(const std::string& path) { return parse_matrix(read_file(path)); }

json matrix_json(const IntMatrix& a) {
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", a.entries()}};
}

std::string fiber_csv(const Fiber& fiber) {
  std::ostringstream os;
  for (const auto& p : fiber.points()) {
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << '\n';
  }
  return os.str();
}

json fiber_json(const Fiber& fiber) {
  return {{"matrix", matrix_json(fiber.matrix())}, {"rhs", fiber.rhs()}, {"size", fiber.size()},
          {"points", fiber.points()}};
}

json moveset_json(const MoveSet& moves) {
  json list = json::array();
  for (const auto& m : moves.moves()) list.push_back(m.vec);
  return {{"kind", std::string(to_string(moves.kind()))}, {"moves", list}};
}

MoveSet parse_moves_csv(std::string_view text, const IntMatrix& a, MoveKind kind) {
  MoveSet ms(a, kind);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const IntVec v = parse_vector(line);
    if (v.empty()) continue;
    if (v.size() != a.cols()) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected " + std::to_string(a.cols()) +
                                        " entries, got " + std::to_string(v.size()));
    }
    try {
      ms.add(v);
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return ms;
}

MoveSet read_moves_csv(const std::string& path, const IntMatrix& a, MoveKind kind) {
  return parse_moves_csv(read_file(path), a, kind);
}

std::string moves_csv(const MoveSet& moves) {
  std::ostringstream os;
  for (const auto& m : moves.moves()) {
    for (std::size_t i = 0; i < m.vec.size(); ++i) os << (i ? "," : "") << m.vec[i];
    os << '\n';
  }
  return os.str();
}

std::string dot(const std::vector<IntVec>& points, const Graph& g, const std::vector<EdgeLabel>& labels) {
  std::ostringstream os;
  os << "graph fiber {\n";
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    os << "  " << v << " [label=\"" << (v < points.size() ? to_string(points[v]) : std::to_string(v)) << "\"];\n";
  }
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const auto& e = g.edges()[i];
    os << "  " << e.u << " -- " << e.v;
    if (i < labels.size()) os << " [label=\"" << (labels[i].sign < 0 ? "-" : "") << labels[i].move << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string dot(const FiberGraph& g) { return dot(g.fiber.points(), g.graph, g.labels); }

std::string edge_list_csv(const Graph& g) {
  std::ostringstream os;
  os << "u,v\n";
  for (const auto& e : g.edges()) os << e.u << ',' << e.v << '\n';
  return os.str();
}

json connectivity_json(const ConnectivityReport& r) {
  json cut = json::array();
  for (const auto& e : r.min_cut_witness) cut.push_back({e.u, e.v});
  return {{"vertices", r.vertices},
          {"edges", r.edges},
          {"min_degree", r.min_degree},
          {"edge_connectivity", r.edge_connectivity},
          {"vertex_connectivity", r.vertex_connectivity},
          {"components", r.components},
          {"min_cut_witness", cut},
          {"separator_witness", r.separator_witness}};
}

json spectral_json(const SpectralReport& r) {
  json tv = json::object();
  for (const auto& [eps, steps] : r.tv_mixing) {
    std::ostringstream key;
    key << eps;
    tv[key.str()] = steps ? json(*steps) : json(nullptr);
  }
  return {{"states", r.states},
          {"slem", r.slem},
          {"relaxation_time", double_json(r.relaxation_time)},
          {"alt_time", double_json(r.alt_time)},
          {"mixing_time", double_json(r.mixing_time)},
          {"definition_used", r.definition_used},
          {"tv_mixing", tv},
          {"tv_truncated", r.tv_truncated}};
}

json conj1_json(const Conj1Report& r) {
  return {{"k", r.k},
          {"vertices", r.vertices},
          {"edges", r.edges},
          {"min_degree", r.min_degree},
          {"edge_connectivity", r.edge_connectivity},
          {"vertex_connectivity", r.vertex_connectivity},
          {"cross_box_edges", r.cross_box_edges},
          {"bridge", {r.bridge_from, r.bridge_to}},
          {"bridge_matches", r.bridge_matches},
          {"counterexample", r.counterexample},
          {"passed", r.passed}};
}

json graver_theorem_json(const GraverTheoremReport& r) {
  return {{"k", r.k},
          {"rhs", r.rhs},
          {"vertices", r.vertices},
          {"edges", r.edges},
          {"lower", r.lower},
          {"upper", r.upper},
          {"min_degree", r.min_degree},
          {"formula", r.formula},
          {"edge_connectivity", r.edge_connectivity},
          {"vertex_connectivity", r.vertex_connectivity},
          {"partition_ok", r.partition_ok},
          {"neighbor_boxes_ok", r.neighbor_boxes_ok},
          {"box_edges_identical", r.box_edges_identical},
          {"box_connectivity_ok", r.box_connectivity_ok},
          {"short_jumps_ok", r.short_jumps_ok},
          {"applicability_ok", r.applicability_ok ? json(*r.applicability_ok) : json(nullptr)},
          {"passed", r.passed}};
}

json universality_json(const UniversalityReport& r) {
  return {{"k", r.k},
          {"bound", r.bound},
          {"ntilde", r.ntilde},
          {"min_rhs", r.min_rhs},
          {"rows", r.rows},
          {"cols", r.cols},
          {"vertices", r.vertices},
          {"base", {{"min_degree", r.base[0]}, {"edge_connectivity", r.base[1]}, {"vertex_connectivity", r.base[2]}}},
          {"lifted",
           {{"min_degree", r.lifted[0]}, {"edge_connectivity", r.lifted[1]}, {"vertex_connectivity", r.lifted[2]}}},
          {"isomorphic", r.isomorphic},
          {"degrees_equal", r.degrees_equal},
          {"passed", r.passed}};
}

std::string box_csv(const RhsDecomp& d) {
  std::ostringstream os;
  const std::size_t n = 4 * static_cast<std::size_t>(d.k) + 2;
  os << 's';
  for (std::size_t i = 0; i < n; ++i) os << ",u" << i + 1;
  os << '\n';
  if (d.empty) return os.str();
  for (Int s = d.lower; s <= d.upper; ++s) {
    for (const auto& p : box_vertices(s, d)) {
      os << s;
      for (Int x : p) os << ',' << x;
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace fibers::io
