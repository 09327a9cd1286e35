#pragma once

#include "gonality/graph.hpp"
#include "gonality/morphism.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace gonality {

// Vertices are named 0..n-1 unless stated otherwise.
MultiGraph complete_graph(int n);
MultiGraph cycle_graph(int n);
MultiGraph complete_bipartite(int n);  // K_{n,n}: a0.. and b0..
MultiGraph banana_graph(int n);        // two vertices, n parallel edges
MultiGraph path_graph(int n);          // n vertices

// Built-in graph by name: "k4", "kn 4", "c5", "cn 5", "k33", "knn 3", "b3",
// "bn 3", "path 4", "ppchange-example" (the unrefined G). Throws ParseError.
MultiGraph builtin_graph(const std::string& spec);
bool is_builtin_spec(const std::string& spec);

// Ten-vertex example for the rebuild construction: G, a refinement G' and a
// degree-8 harmonic morphism G' -> T to a tree with ten vertices.
struct RebuildExample {
    MultiGraph graph;
    MultiGraph refined;
    MultiGraph tree;
    IndexedMorphism morphism;
    std::vector<std::size_t> origin;  // V(G) inside G'
};
RebuildExample rebuild_example();

// The invariants-table corpus: K_3..K_6, C_3..C_8, K_{3,3}, B_2..B_5.
std::vector<std::pair<std::string, MultiGraph>> table_corpus();

// Connected multigraph with n vertices and m >= n-1 edges; a spanning tree
// plus uniformly random extra edges (parallel edges allowed, loops if asked).
MultiGraph random_connected_multigraph(std::mt19937_64& rng, int n, int m, bool loops = false);

}  // namespace gonality
