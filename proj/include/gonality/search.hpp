#pragma once

#include "gonality/graph.hpp"
#include "gonality/morphism.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gonality {

enum class CellRule {
    independent,  // finite morphisms: no edge inside a cell
    collapsible,  // Caporaso morphisms: edges inside a cell are collapsed
};

struct SearchBudget {
    int max_subdivisions_per_edge = 2;
    std::optional<int> max_leaf_paths;  // default |V|
    int max_leaf_length = 2;
    std::optional<int> max_degree;  // default Brill-Noether for genus >= 2, else |V|
    std::uint64_t max_nodes = 20'000'000;
    std::uint64_t max_refinements = 1'000'000;
    bool use_caporaso_conversion = true;
    std::function<void(const std::string&)> progress;  // optional status lines
};

struct Witness {
    IndexedMorphism morphism;
    RefinementTrace trace;  // searched graph -> domain of the morphism
    long long degree = 0;
};

struct PartitionOptions {
    CellRule rule = CellRule::independent;
    int leaf_budget = 0;  // leaf paths allowed (independent rule only)
    int leaf_length = 0;
    int min_cells = 1;  // 2 excludes the constant map to a point
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t node_limit = 200'000'000;
    bool exhausted = false;
};

// Least-degree harmonic morphism to a tree among partitions whose degree is
// at most max_degree, trying degrees in increasing order from min_degree.
std::optional<Witness> find_tree_morphism(const MultiGraph& g, const PartitionOptions& options, long long min_degree,
                                          long long max_degree, SearchStats& stats);

struct MinDegreeResult {
    std::optional<long long> degree;
    std::optional<IndexedMorphism> witness;
    std::string reason;  // set when no morphism was found
};

MinDegreeResult min_finite_harmonic_degree(const MultiGraph& g, std::optional<int> max_degree = std::nullopt);

// Minimum of min_finite_harmonic_degree over all subdivisions of g with at
// most max_per_edge new vertices per edge (no leaves).
struct SubdivisionMinimum {
    std::optional<long long> degree;
    std::vector<int> counts;  // subdivision vector attaining it
    std::optional<Witness> witness;
    std::size_t refinements_tried = 0;
};
SubdivisionMinimum min_finite_over_subdivisions(const MultiGraph& g, int max_per_edge);

struct GonResult {
    long long degree = 0;
    IndexedMorphism witness;
};

GonResult gon(const MultiGraph& g);

// Turns a non-degenerate Caporaso morphism into a finite one of the same
// degree: every collapsed edge is subdivided and its midpoint sent to a new
// leaf of the tree, with leaves added at the other vertices of that fiber.
Witness caporaso_to_finite(const IndexedMorphism& phi);

struct SgonResult {
    long long lo = 1;
    std::optional<long long> hi;  // nullopt: no witness found
    std::optional<Witness> witness;  // trace from the input graph
    bool exact = false;
    bool budget_exhausted = false;
    bool witness_within_budget = false;
    std::string witness_source;
    std::vector<std::pair<std::string, long long>> lower_bounds;
};

SgonResult sgon(const MultiGraph& g, const SearchBudget& budget = {});

// Refinement size of a witness relative to its trace parent.
struct RefinementSize {
    int max_subdivisions_per_edge = 0;
    int leaf_paths = 0;
    int max_leaf_length = 0;
    bool paths_only = true;  // leaf material consists of simple paths
};
RefinementSize refinement_size(const RefinementTrace& trace);

}  // namespace gonality
