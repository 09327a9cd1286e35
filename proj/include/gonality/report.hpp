#pragma once

#include "gonality/graph.hpp"
#include "gonality/rational.hpp"
#include "gonality/spectral.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gonality {

struct BoundEntry {
    std::string name;
    std::string kind;  // lower or upper
    Rational value;
};

struct BoundReport {
    std::vector<BoundEntry> bounds;
    std::optional<std::string> witness_path;
    Integer best_lower() const;
};

// Spectral lower bounds on sgon, optionally the normalized one and the
// maximum over subdivisions with at most class_budget per edge, plus the
// Brill-Noether upper bound for genus >= 2.
BoundReport bound_report(const MultiGraph& g, bool normalized = false, int class_budget = 0);

struct Invariants {
    std::size_t vertices = 0, edges = 0;
    long long genus = 0;
    int max_degree = 0;
    long long volume = 0;
    int eta = 0;
    int treewidth = 0;
    EigenvalueEnclosure lambda, lambda_normalized;
};
Invariants compute_invariants(const MultiGraph& g);

struct TableRow {
    std::string name;
    long long sgon = 0;
    bool sgon_exact = false;
    long long gon = 0;
    int dgon = 0;
    Invariants inv;
};
TableRow table_row(const std::string& name, const MultiGraph& g);
std::vector<TableRow> invariants_table();
// Fixed-width text, eigenvalues rounded to 6 decimals (interval midpoints).
std::string render_table(const std::vector<TableRow>& rows);

nlohmann::json exact_json(const std::string& name, const std::string& kind, const Rational& value);
nlohmann::json graph_json(const MultiGraph& g, const Invariants& inv);
nlohmann::json to_json(const MultiGraph& g, const BoundReport& r);

}  // namespace gonality
