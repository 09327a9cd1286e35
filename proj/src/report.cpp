#include "gonality/report.hpp"

#include "gonality/chipfire.hpp"
#include "gonality/corpus.hpp"
#include "gonality/errors.hpp"
#include "gonality/search.hpp"

#include <cstdio>
#include <sstream>

namespace gonality {

Integer BoundReport::best_lower() const {
    Integer best = 1;
    for (const auto& b : bounds)
        if (b.kind == "lower") best = std::max(best, ceil(b.value));
    return best;
}

BoundReport bound_report(const MultiGraph& g, bool normalized, int class_budget) {
    BoundReport r;
    r.bounds.push_back({"spectral", "lower", Rational(sgon_lower_bound(g))});
    if (normalized) r.bounds.push_back({"spectral-normalized", "lower", Rational(sgon_lower_bound_normalized(g))});
    if (class_budget > 0) {
        ClassBudget budget;
        budget.max_subdivisions_per_edge = class_budget;
        r.bounds.push_back({"spectral-class", "lower", Rational(bound_over_class(g, budget))});
    }
    if (g.genus() >= 2) r.bounds.push_back({"brill-noether", "upper", Rational(brill_noether_upper(g))});
    return r;
}

Invariants compute_invariants(const MultiGraph& g) {
    Invariants inv;
    inv.vertices = g.num_vertices();
    inv.edges = g.num_edges();
    inv.genus = g.genus();
    inv.max_degree = g.max_degree();
    inv.volume = volume(g);
    inv.eta = edge_connectivity(g);
    inv.treewidth = treewidth(g);
    inv.lambda = lambda1(g);
    inv.lambda_normalized = lambda1(g, default_tolerance(), Operator::normalized);
    return inv;
}

TableRow table_row(const std::string& name, const MultiGraph& g) {
    TableRow row;
    row.name = name;
    auto s = sgon(g);
    if (!s.hi) throw VerificationError("no stable gonality witness for " + name);
    row.sgon = *s.hi;
    row.sgon_exact = s.exact;
    row.gon = gon(g).degree;
    auto d = divisorial_gonality(g);
    if (!d.value) throw VerificationError("divisorial gonality search failed for " + name);
    row.dgon = *d.value;
    row.inv = compute_invariants(g);
    return row;
}

std::vector<TableRow> invariants_table() {
    std::vector<TableRow> rows;
    for (const auto& [name, g] : table_corpus()) rows.push_back(table_row(name, g));
    return rows;
}

namespace {

std::string midpoint(const EigenvalueEnclosure& e) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", to_double((e.lower + e.upper) / 2));
    return buf;
}

}  // namespace

std::string render_table(const std::vector<TableRow>& rows) {
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-6s %5s %4s %5s %4s %3s %3s %10s %4s %10s %4s\n", "graph", "sgon", "gon", "dgon",
                  "eta", "tw", "Delta", "lambda", "|G|", "lambda~", "vol");
    out << buf;
    for (const auto& r : rows) {
        std::string s = std::to_string(r.sgon) + (r.sgon_exact ? "" : "?");
        std::snprintf(buf, sizeof buf, "%-6s %5s %4lld %5d %4d %3d %5d %10s %4zu %10s %4lld\n", r.name.c_str(),
                      s.c_str(), r.gon, r.dgon, r.inv.eta, r.inv.treewidth, r.inv.max_degree,
                      midpoint(r.inv.lambda).c_str(), r.inv.vertices, midpoint(r.inv.lambda_normalized).c_str(),
                      r.inv.volume);
        out << buf;
    }
    return out.str();
}

nlohmann::json exact_json(const std::string& name, const std::string& kind, const Rational& value) {
    return {{"name", name}, {"kind", kind}, {"value_exact", to_string(value)}, {"value_float", to_double(value)}};
}

nlohmann::json graph_json(const MultiGraph& g, const Invariants& inv) {
    auto enclosure = [](const EigenvalueEnclosure& e) {
        return nlohmann::json{{"lower", to_string(e.lower)},
                              {"upper", to_string(e.upper)},
                              {"lower_float", to_double(e.lower)},
                              {"upper_float", to_double(e.upper)}};
    };
    return {{"vertices", inv.vertices},
            {"edges", inv.edges},
            {"genus", inv.genus},
            {"max_degree", inv.max_degree},
            {"volume", inv.volume},
            {"edge_connectivity", inv.eta},
            {"treewidth", inv.treewidth},
            {"simple", g.is_simple()},
            {"lambda", enclosure(inv.lambda)},
            {"lambda_normalized", enclosure(inv.lambda_normalized)}};
}

nlohmann::json to_json(const MultiGraph& g, const BoundReport& r) {
    nlohmann::json bounds = nlohmann::json::array();
    for (const auto& b : r.bounds) bounds.push_back(exact_json(b.name, b.kind, b.value));
    nlohmann::json out{{"graph", graph_json(g, compute_invariants(g))}, {"bounds", bounds}};
    out["witness_path"] = r.witness_path ? nlohmann::json(*r.witness_path) : nlohmann::json(nullptr);
    return out;
}

}  // namespace gonality
