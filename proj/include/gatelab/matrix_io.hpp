#pragma once

#include "gatelab/types.hpp"

#include <string>
#include <vector>

namespace gatelab {

/// Shared matrix file format:
/// { "dims": [n, m], "re": [[...]], "im": [[...]] }, row-major under the
/// composite index i*m + alpha.
BipartiteOperator load_matrix_json(const std::string& path);
void save_matrix_json(const std::string& path, const BipartiteOperator& op);

/// Raw variant for inner gates that are not themselves bipartite
/// ("dims" may be absent or [d, 1]).
Mat load_square_matrix_json(const std::string& path);

/// Format a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

/// Run provenance sidecar emitted next to every command's outputs.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::vector<std::string> outputs;
    double duration_seconds = 0.0;
};

void write_manifest(const std::string& path, const RunManifest& manifest);

inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace gatelab
