#pragma once

#include <filesystem>

#include "cellforge/cells.hpp"
#include "cellforge/relations.hpp"

namespace cellforge {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Data directory: $CELLFORGE_DATA when set, else the bundled data/ tree.
std::filesystem::path default_data_dir();

/// "src>dst" or "src>dst:label"
std::string edge_ref(const OrientedGraph& g, EdgeId e);
EdgeId parse_edge_ref(const OrientedGraph& g, const std::string& ref);

std::string graph_to_json(const OrientedGraph& g);
OrientedGraph graph_from_json(const std::string& text);
OrientedGraph load_graph(const std::filesystem::path& file);

std::string cells_to_json(const CellSystem& c);
/// Reads generators (with optional rotational closure) over the given graph.
CellSystem cells_from_json(const std::string& text, const OrientedGraph& g);
CellSystem load_cells(const std::filesystem::path& file, const OrientedGraph& g);

std::string morphism_to_json(const Morphism& m, long prec = 256);
Morphism morphism_from_json(const std::string& text, const OrientedGraph& g);

std::string block_to_json(const BoltzmannBlock& b, const OrientedGraph& g, long prec = 256);
std::string report_to_json(const std::vector<CheckReport>& reports, bool verbose = false);

void write_file(const std::filesystem::path& file, const std::string& text);
std::string read_file(const std::filesystem::path& file);

}  // namespace cellforge
