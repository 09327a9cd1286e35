#pragma once

#include "gonality/graph.hpp"
#include "gonality/morphism.hpp"
#include "gonality/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gonality {

struct MeasuredTree {
    MultiGraph tree;
    std::vector<Rational> measure;  // per vertex, sums to 1

    MeasuredTree(MultiGraph t, std::vector<Rational> nu);  // validates
};

// Smaller of the two component measures of T - e.
Rational edge_size(const MeasuredTree& t, std::size_t edge);

struct Thickness {
    bool thick = true;
    std::optional<std::size_t> witness;  // a vertex whose complement has only light components
};

Thickness is_c_thick(const MeasuredTree& t, const Rational& c);
// All vertices x such that every component of T - x has measure < c.
std::vector<std::size_t> thin_vertices(const MeasuredTree& t, const Rational& c);

// An edge of size >= c by the orientation argument. Throws unless c-thick.
std::size_t find_large_edge(const MeasuredTree& t, const Rational& c);

struct RebuildParams {
    Rational A, B, C;
    // Optional forced left side, as ids of the tree vertices next to x0.
    std::optional<std::vector<VertexId>> left;
};

struct RebuildResult {
    MultiGraph original;  // G, recovered from the origin set
    IndexedMorphism morphism;  // phi# : G# -> T#
    std::vector<std::size_t> origin{};  // V(G) inside G#
    std::size_t x0 = 0;  // in T
    std::size_t X0 = 0;  // in T#
    std::size_t left_edge = 0, right_edge = 0;  // edges of T# at X0
    Rational left_size{}, right_size{};
    std::vector<VertexId> left_roots{}, right_roots{};  // y_i of each side
    std::string partition_method{};  // forced, greedy or exhaustive
    std::map<VertexId, long long> dsharp{};  // over all glued edges at v
    std::map<VertexId, long long> dsharp_core{};  // over core edges only
    std::map<VertexId, std::pair<long long, long long>> side_sums{};  // (left, right) index sums before copies
    long long degree_before = 0;
    long long degree_after = 0;
    int max_degree = 0;  // Delta_G
    bool harmonic = false;
    bool degree_ok = false;  // deg# <= Delta_G deg
    bool sizes_strict = false;  // both sizes > A/2
    bool sizes_weak = false;  // both sizes >= A/2
    bool refines_original = false;

    bool ok() const { return harmonic && degree_ok && sizes_strict && refines_original; }
};

// phi : G' -> T finite harmonic to a tree; origin lists V(G) inside G'.
RebuildResult rebuild(const IndexedMorphism& phi, const std::vector<std::size_t>& origin, const RebuildParams& params);

struct PipelineBound {
    std::string branch;  // thick, heavy-vertex or rebuild
    Rational value;
};

PipelineBound pipeline_bound(const IndexedMorphism& phi, const std::vector<std::size_t>& origin, const Rational& A,
                             const Rational& B, const Rational& C);

}  // namespace gonality
