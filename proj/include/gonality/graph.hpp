#pragma once

#include "gonality/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace gonality {

using VertexId = std::string;
using EdgeId = std::string;

struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    EdgeId id;

    bool is_loop() const { return u == v; }
    std::size_t other(std::size_t x) const { return x == u ? v : u; }
};

// Finite multigraph with parallel edges and loops. Vertices and edges are
// addressed by dense indices; ids are kept for I/O and tracing. Immutable
// once built.
class MultiGraph {
public:
    std::size_t num_vertices() const { return vertex_ids_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    const VertexId& vertex_id(std::size_t v) const { return vertex_ids_.at(v); }
    const std::vector<VertexId>& vertex_ids() const { return vertex_ids_; }
    const Edge& edge(std::size_t e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::optional<std::size_t> find_vertex(const VertexId& id) const;
    std::optional<std::size_t> find_edge(const EdgeId& id) const;
    std::size_t vertex_index(const VertexId& id) const;  // throws on unknown id
    std::size_t edge_index(const EdgeId& id) const;

    // Incident edge indices; a loop is listed twice.
    const std::vector<std::size_t>& incident(std::size_t v) const { return incidence_.at(v); }
    int degree(std::size_t v) const { return static_cast<int>(incidence_.at(v).size()); }
    // Distinct neighbours other than v itself, in index order.
    std::vector<std::size_t> neighbours(std::size_t v) const;
    // Number of edges joining u and v (for u == v, the number of loops).
    int multiplicity(std::size_t u, std::size_t v) const;

    int min_degree() const;
    int max_degree() const;
    long long genus() const;
    bool is_connected() const;
    bool has_loops() const;
    bool has_parallel_edges() const;
    bool is_simple() const { return !has_loops() && !has_parallel_edges(); }
    bool is_complete() const;

    friend bool operator==(const MultiGraph& a, const MultiGraph& b);

private:
    friend class GraphBuilder;
    std::vector<VertexId> vertex_ids_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> incidence_;
    std::unordered_map<VertexId, std::size_t> vertex_lookup_;
    std::unordered_map<EdgeId, std::size_t> edge_lookup_;
};

class GraphBuilder {
public:
    GraphBuilder() = default;
    explicit GraphBuilder(const MultiGraph& start);

    std::size_t add_vertex(const VertexId& id);  // throws on duplicate
    std::size_t ensure_vertex(const VertexId& id);
    // Empty id picks a fresh "e<k>".
    std::size_t add_edge(std::size_t u, std::size_t v, const EdgeId& id = "");
    std::size_t add_edge(const VertexId& u, const VertexId& v, const EdgeId& id = "");

    std::size_t num_vertices() const { return g_.vertex_ids_.size(); }
    std::size_t num_edges() const { return g_.edges_.size(); }
    const VertexId& vertex_id(std::size_t v) const { return g_.vertex_ids_.at(v); }
    bool has_vertex(const VertexId& id) const { return g_.vertex_lookup_.count(id) != 0; }
    bool has_edge(const EdgeId& id) const { return g_.edge_lookup_.count(id) != 0; }
    VertexId fresh_vertex_id(const std::string& base) const;
    EdgeId fresh_edge_id(const std::string& base) const;

    MultiGraph build() const { return g_; }

private:
    MultiGraph g_;
};

// ---- classical invariants ----

int degree(const MultiGraph& g, const VertexId& v);
long long genus(const MultiGraph& g);
long long volume(const MultiGraph& g, const std::vector<VertexId>& subset);
long long volume(const MultiGraph& g);

using IntMatrix = std::vector<std::vector<long long>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

// L = D - A. A loop contributes 2 to D and 2 to A_vv, so L 1 = 0.
IntMatrix laplacian(const MultiGraph& g);
// The similar matrix D^{-1} L of the normalized Laplacian.
RationalMatrix normalized_laplacian(const MultiGraph& g);

bool is_stable(const MultiGraph& g);
MultiGraph stable_model(const MultiGraph& g);

int edge_connectivity(const MultiGraph& g);

// Treewidth of a multigraph, read as the treewidth of the graph obtained by
// subdividing every parallel edge; loops are ignored. This equals
// max(simple_treewidth, 2) once a parallel edge is present.
int treewidth(const MultiGraph& g, std::size_t cap = 16);
int simple_treewidth(const MultiGraph& g, std::size_t cap = 16);

// Canonical adjacency form under vertex relabeling (|V| <= 10 in practice).
std::vector<int> canonical_form(const MultiGraph& g);
bool isomorphic(const MultiGraph& a, const MultiGraph& b);

// Same vertex ids and same multiset of endpoint pairs; edge ids ignored.
bool same_up_to_edge_ids(const MultiGraph& a, const MultiGraph& b);

// Connected components, each a sorted list of vertex indices.
std::vector<std::vector<std::size_t>> connected_components(const MultiGraph& g);

// Subgraph on the given edges (plus extra vertices), keeping ids.
MultiGraph edge_subgraph(const MultiGraph& g, const std::vector<std::size_t>& edges,
                         const std::vector<std::size_t>& extra_vertices = {});

// ---- refinements ----

struct VertexOrigin {
    enum class Kind { vertex, edge, leaf };
    Kind kind = Kind::leaf;
    std::size_t index = 0;  // parent vertex or parent edge index

    static VertexOrigin of_vertex(std::size_t v) { return {Kind::vertex, v}; }
    static VertexOrigin of_edge(std::size_t e) { return {Kind::edge, e}; }
    static VertexOrigin leaf() { return {Kind::leaf, 0}; }
    friend bool operator==(const VertexOrigin&, const VertexOrigin&) = default;
};

struct RefinementTrace {
    MultiGraph parent;
    MultiGraph child;
    std::vector<VertexOrigin> vertex_origin;               // per child vertex
    std::vector<std::optional<std::size_t>> edge_origin;  // per child edge; nullopt = leaf

    // Child vertex standing for each parent vertex.
    std::vector<std::size_t> vertex_image() const;
    // Child vertices of V(parent), in parent order.
    std::vector<std::size_t> origin_vertices() const { return vertex_image(); }
    // The path RG'[e]: child vertices from image(u) to image(v) and the
    // child edges between them.
    struct Path {
        std::vector<std::size_t> vertices;
        std::vector<std::size_t> edges;
    };
    Path restricted_path(std::size_t parent_edge) const;
};

struct Refinement {
    MultiGraph graph;
    RefinementTrace trace;
};

RefinementTrace identity_trace(const MultiGraph& g);
// a: G0 -> G1, b: G1 -> G2 gives G0 -> G2.
RefinementTrace compose(const RefinementTrace& a, const RefinementTrace& b);

Refinement subdivide_edge(const MultiGraph& g, const EdgeId& e);
Refinement subdivide_edge(const MultiGraph& g, std::size_t e);
Refinement add_leaf(const MultiGraph& g, const VertexId& v);
Refinement add_leaf(const MultiGraph& g, std::size_t v);
// Subdivide edge i counts[i] times (fresh ids only).
Refinement subdivide_edges(const MultiGraph& g, const std::vector<int>& counts);

// Empty when the trace satisfies its invariants, else a reason.
std::optional<std::string> check_trace(const RefinementTrace& t);

// Recovers the unrefined graph from a refinement and the set of its original
// vertices: prune leaf material, then smooth non-origin degree-2 vertices.
RefinementTrace trace_from_origin(const MultiGraph& refined, const std::vector<std::size_t>& origin);

}  // namespace gonality
