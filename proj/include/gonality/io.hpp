#pragma once

#include "gonality/graph.hpp"
#include "gonality/morphism.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gonality {

// Graph text format: one edge "u v" per line (a loop when u == v), optional
// "v <name>" declarations, "#" starts a comment. Vertices are ordered by
// first occurrence and edges are named e1, e2, ... in file order. The name
// "v" is reserved. Disconnected input is rejected.
MultiGraph parse_graph(const std::string& text);
MultiGraph read_graph(const std::filesystem::path& path);
// Canonical form: every vertex declared, then the edges. Edge ids are not
// written; they are e1.. on reading back.
std::string format_graph(const MultiGraph& g);
// Same graph with edges renamed e1, e2, ... in index order.
MultiGraph with_canonical_edge_ids(const MultiGraph& g);

struct LoadedMorphism {
    IndexedMorphism morphism;
    std::optional<std::vector<std::size_t>> origin;
    std::filesystem::path domain_path;
    std::filesystem::path codomain_path;

    // Declared origin, or every domain vertex.
    std::vector<std::size_t> origin_or_all() const;
};

// Morphism text format, sections:
//   [domain] <path>  [codomain] <path>  (relative to the morphism file)
//   [variant] finite|caporaso  (optional, default finite)
//   [origin] vertex names of the unrefined graph  (optional)
//   [vmap] lines "u -> x"
//   [emap] lines "eK -> eJ : r", or "eK -> x : 0" for a collapsed edge
LoadedMorphism parse_morphism(const std::string& text, const std::filesystem::path& base_dir);
LoadedMorphism read_morphism(const std::filesystem::path& path);

std::string format_morphism(const IndexedMorphism& phi, const std::string& domain_path,
                            const std::string& codomain_path,
                            const std::optional<std::vector<std::size_t>>& origin = std::nullopt);

struct WrittenMorphism {
    std::filesystem::path morphism, domain, codomain;
};
// Writes <prefix>.morphism, <prefix>.domain.graph and <prefix>.codomain.graph.
// Edge ids in the files are the canonical e1.. of each graph.
WrittenMorphism write_morphism(const std::filesystem::path& prefix, const IndexedMorphism& phi,
                               const std::optional<std::vector<std::size_t>>& origin = std::nullopt);

// Graphviz rendering.
std::string to_dot(const MultiGraph& g);

}  // namespace gonality
