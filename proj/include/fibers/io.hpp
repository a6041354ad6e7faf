#pragma once

// File formats: matrices (JSON or 4ti2-style text), fibers, move sets,
// graphs (DOT, CSV edge list) and report JSON.

#include <json.hpp>
#include <string>
#include <string_view>

#include "fibers/akfamily.hpp"
#include "fibers/chain.hpp"
#include "fibers/fibergraph.hpp"
#include "fibers/graph.hpp"
#include "fibers/lattice.hpp"
#include "fibers/moves.hpp"

namespace fibers::io {

using json = nlohmann::json;

// {"rows": d, "cols": n, "entries": [row-major]} or text "d n" followed by
// d rows of n integers. Throws Parse on malformed input.
IntMatrix parse_matrix(std::string_view text);
IntMatrix read_matrix(const std::string& path);
json matrix_json(const IntMatrix& a);

// Integers separated by commas and/or whitespace.
IntVec parse_vector(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::string fiber_csv(const Fiber& fiber);
json fiber_json(const Fiber& fiber);

json moveset_json(const MoveSet& moves);
// One move per line, entries separated by commas; '#' starts a comment.
MoveSet parse_moves_csv(std::string_view text, const IntMatrix& a, MoveKind kind = MoveKind::custom);
MoveSet read_moves_csv(const std::string& path, const IntMatrix& a, MoveKind kind = MoveKind::custom);
std::string moves_csv(const MoveSet& moves);

// Vertex label = point, edge label = move index (negative sign marked with '-').
std::string dot(const std::vector<IntVec>& points, const Graph& g, const std::vector<EdgeLabel>& labels);
std::string dot(const FiberGraph& g);
std::string edge_list_csv(const Graph& g);

json connectivity_json(const ConnectivityReport& r);
json spectral_json(const SpectralReport& r);
json conj1_json(const Conj1Report& r);
json graver_theorem_json(const GraverTheoremReport& r);
json universality_json(const UniversalityReport& r);

// Rows "s,point..." for every box C_s(b).
std::string box_csv(const RhsDecomp& d);

}  // namespace fibers::io
