#include "gonality/chipfire.hpp"
#include "gonality/corpus.hpp"
#include "gonality/drinfeld.hpp"
#include "gonality/errors.hpp"
#include "gonality/io.hpp"
#include "gonality/rebuild.hpp"
#include "gonality/report.hpp"
#include "gonality/search.hpp"
#include "gonality/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace gonality;
using nlohmann::json;

namespace {

enum Exit { ok = 0, failed = 1, parse = 2, budget = 3, precondition = 4 };

std::string join(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
    return out;
}

// A file path, or a built-in name such as "k4" or "kn 4".
MultiGraph load_graph(const std::vector<std::string>& words) {
    auto spec = join(words);
    if (words.size() == 1 && std::filesystem::exists(words[0])) return read_graph(words[0]);
    if (is_builtin_spec(spec)) return builtin_graph(spec);
    throw ParseError("'" + spec + "' is neither a readable graph file nor a built-in graph");
}

LoadedMorphism load_morphism(const std::string& arg) {
    if (arg == "ppchange-example" && !std::filesystem::exists(arg)) {
        auto ex = rebuild_example();
        return {ex.morphism, ex.origin, {}, {}};
    }
    return read_morphism(arg);
}

IdealFactorization parse_ideal(const std::string& text) {
    IdealFactorization out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (part.empty()) continue;
        auto colon = part.find(':');
        try {
            long long deg = std::stoll(part.substr(0, colon));
            long long mult = colon == std::string::npos ? 1 : std::stoll(part.substr(colon + 1));
            out.emplace_back(deg, mult);
        } catch (const std::exception&) {
            throw ParseError("bad ideal factor '" + part + "', expected deg[:mult]");
        }
    }
    return out;
}

std::string interval(const EigenvalueEnclosure& e) {
    std::ostringstream s;
    s.precision(12);
    s << "[" << to_double(e.lower) << ", " << to_double(e.upper) << "]";
    return s.str();
}

void print_witness(const std::string& out_prefix, const IndexedMorphism& phi,
                   const std::optional<std::vector<std::size_t>>& origin, json& report) {
    if (out_prefix.empty()) return;
    auto w = write_morphism(out_prefix, phi, origin);
    report["witness_path"] = w.morphism.string();
    std::cerr << "witness written to " << w.morphism.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph gonality invariants, bounds and harmonic morphisms"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Print JSON instead of text");
    std::vector<std::string> words;
    std::string out_prefix;
    std::function<int()> action;

    auto* inv = app.add_subcommand("invariants", "Classical and spectral invariants of a graph");
    inv->add_option("graph", words, "Graph file or built-in name")->required();
    inv->callback([&] {
        action = [&] {
            auto g = load_graph(words);
            auto i = compute_invariants(g);
            if (as_json) {
                std::cout << graph_json(g, i).dump(2) << '\n';
                return ok;
            }
            std::cout << "|V| " << i.vertices << "\n|E| " << i.edges << "\ngenus " << i.genus << "\nDelta "
                      << i.max_degree << "\nvol " << i.volume << "\neta " << i.eta << "\ntw " << i.treewidth
                      << "\nlambda " << interval(i.lambda) << "\nlambda~ " << interval(i.lambda_normalized) << '\n';
            return ok;
        };
    });

    bool normalized = false;
    int class_budget = 0;
    auto* bnd = app.add_subcommand("bound", "Spectral lower bounds on stable gonality");
    bnd->add_option("graph", words)->required();
    bnd->add_flag("--normalized", normalized, "Include the normalized-Laplacian bound");
    bnd->add_option("--class-budget", class_budget, "Also maximize over subdivisions with this many per edge");
    bnd->callback([&] {
        action = [&] {
            auto g = load_graph(words);
            auto r = bound_report(g, normalized, class_budget);
            if (as_json) {
                std::cout << to_json(g, r).dump(2) << '\n';
                return ok;
            }
            for (const auto& b : r.bounds) std::cout << b.name << " (" << b.kind << ") " << to_string(b.value) << '\n';
            std::cout << "sgon >= " << to_string(r.best_lower()) << '\n';
            return ok;
        };
    });

    SearchBudget sb;
    int leaves = -1;
    long long max_deg = 0;
    auto* sg = app.add_subcommand("sgon", "Stable gonality by budgeted search");
    sg->add_option("graph", words)->required();
    sg->add_option("--subdiv", sb.max_subdivisions_per_edge, "Subdivisions per edge")->capture_default_str();
    sg->add_option("--leaves", leaves, "Leaf paths (default |V|)");
    sg->add_option("--leaf-len", sb.max_leaf_length, "Leaf path length")->capture_default_str();
    sg->add_option("--max-degree", max_deg, "Largest degree searched");
    sg->add_option("--max-nodes", sb.max_nodes, "Search node budget")->capture_default_str();
    sg->add_option("--max-refinements", sb.max_refinements, "Refinement budget")->capture_default_str();
    sg->add_option("--out", out_prefix, "Write the witness as <prefix>.morphism");
    bool quiet = false;
    sg->add_flag("--quiet", quiet, "Do not stream search progress to standard error");
    sg->callback([&] {
        action = [&] {
            auto g = load_graph(words);
            if (!quiet) sb.progress = [](const std::string& line) { std::cerr << "sgon: " << line << std::endl; };
            if (leaves >= 0) sb.max_leaf_paths = leaves;
            if (max_deg > 0) sb.max_degree = static_cast<int>(max_deg);
            auto r = sgon(g, sb);
            json j{{"lower", r.lo}, {"exact", r.exact}, {"budget_exhausted", r.budget_exhausted}};
            j["upper"] = r.hi ? json(*r.hi) : json(nullptr);
            json lbs = json::array();
            for (const auto& [name, value] : r.lower_bounds) lbs.push_back(exact_json(name, "lower", Rational(value)));
            j["bounds"] = lbs;
            if (r.witness) {
                j["witness_source"] = r.witness_source;
                j["witness_within_budget"] = r.witness_within_budget;
                print_witness(out_prefix, r.witness->morphism, r.witness->trace.origin_vertices(), j);
            }
            if (as_json) {
                std::cout << j.dump(2) << '\n';
            } else if (r.exact) {
                std::cout << "sgon = " << *r.hi << " (witness: " << r.witness_source
                          << (r.witness_within_budget ? ", within budget" : ", outside budget") << ")\n";
            } else {
                std::cout << "sgon in [" << r.lo << ", " << (r.hi ? std::to_string(*r.hi) : "?") << "]"
                          << (r.budget_exhausted ? " (budget exhausted)" : "") << '\n';
            }
            return r.exact ? ok : budget;
        };
    });

    auto* gn = app.add_subcommand("gon", "Gonality: least degree of a non-degenerate harmonic morphism to a tree");
    gn->add_option("graph", words)->required();
    gn->add_option("--out", out_prefix, "Write the witness as <prefix>.morphism");
    gn->callback([&] {
        action = [&] {
            auto g = load_graph(words);
            auto r = gon(g);
            json j{{"gon", r.degree}};
            print_witness(out_prefix, r.witness, std::nullopt, j);
            if (as_json) std::cout << j.dump(2) << '\n';
            else std::cout << "gon = " << r.degree << '\n';
            return ok;
        };
    });

    auto* dg = app.add_subcommand("dgon", "Divisorial gonality by chip-firing");
    dg->add_option("graph", words)->required();
    dg->callback([&] {
        action = [&] {
            auto g = load_graph(words);
            auto r = divisorial_gonality(g);
            if (!r.value) throw Error("divisorial gonality exceeds the search limit");
            json wit = json::object();
            for (std::size_t v = 0; v < g.num_vertices(); ++v)
                if (r.witness->chips[v] != 0) wit[g.vertex_id(v)] = r.witness->chips[v];
            if (as_json) std::cout << json{{"dgon", *r.value}, {"witness", wit}}.dump(2) << '\n';
            else std::cout << "dgon = " << *r.value << " (divisor " << wit.dump() << ")\n";
            return ok;
        };
    });

    std::string morphism_path;
    auto* vf = app.add_subcommand("verify", "Check that a morphism file is harmonic");
    vf->add_option("morphism", morphism_path)->required();
    vf->callback([&] {
        action = [&] {
            auto m = load_morphism(morphism_path);
            auto r = verify(m.morphism);
            bool good = r.harmonic && (m.morphism.variant() == Variant::finite || r.non_degenerate);
            json j{{"harmonic", r.harmonic}, {"degree", r.degree}, {"non_degenerate", r.non_degenerate},
                   {"problems", r.problems}};
            json viol = json::array();
            const auto& D = m.morphism.domain();
            const auto& C = m.morphism.codomain();
            for (const auto& v : r.violations)
                viol.push_back({{"vertex", D.vertex_id(v.vertex)},
                                {"edges", {C.edge(v.edge_a).id, C.edge(v.edge_b).id}},
                                {"sums", {v.sum_a, v.sum_b}}});
            j["violations"] = viol;
            if (as_json) {
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << (good ? "harmonic" : "NOT harmonic") << ", degree " << r.degree << '\n';
                for (const auto& p : r.problems) std::cout << "  " << p << '\n';
                for (const auto& v : viol) std::cout << "  violation " << v.dump() << '\n';
            }
            return good ? ok : failed;
        };
    });

    std::string a_text = "1/5", b_text = "3/10", c_text = "1/2";
    std::vector<std::string> left;
    auto* rb = app.add_subcommand("rebuild", "Rebuild a harmonic morphism around a thin vertex");
    rb->add_option("morphism", morphism_path, "Morphism file or ppchange-example")->required();
    rb->add_option("--A", a_text)->capture_default_str();
    rb->add_option("--B", b_text)->capture_default_str();
    rb->add_option("--C", c_text)->capture_default_str();
    rb->add_option("--left", left, "Force the left side by tree vertices next to x0")->delimiter(',');
    rb->add_option("--out", out_prefix, "Write G#, T# and the morphism under this prefix");
    rb->callback([&] {
        action = [&] {
            auto m = load_morphism(morphism_path);
            RebuildParams p{parse_rational(a_text), parse_rational(b_text), parse_rational(c_text), std::nullopt};
            if (!left.empty()) p.left = left;
            auto r = rebuild(m.morphism, m.origin_or_all(), p);
            const auto& T = r.morphism.codomain();
            json j{{"harmonic", r.harmonic},
                   {"degree_before", r.degree_before},
                   {"degree_after", r.degree_after},
                   {"degree_limit", static_cast<long long>(r.max_degree) * r.degree_before},
                   {"degree_ok", r.degree_ok},
                   {"x0", m.morphism.codomain().vertex_id(r.x0)},
                   {"central_edges", {T.edge(r.left_edge).id, T.edge(r.right_edge).id}},
                   {"sizes", {to_string(r.left_size), to_string(r.right_size)}},
                   {"sizes_strict", r.sizes_strict},
                   {"sizes_weak", r.sizes_weak},
                   {"refines_original", r.refines_original},
                   {"partition", r.partition_method},
                   {"left", r.left_roots},
                   {"right", r.right_roots},
                   {"dsharp", r.dsharp},
                   {"dsharp_core", r.dsharp_core},
                   {"domain_vertices", r.morphism.domain().num_vertices()},
                   {"tree_vertices", T.num_vertices()}};
            print_witness(out_prefix, r.morphism, r.origin, j);
            if (as_json) {
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << "x0 = " << j["x0"].get<std::string>() << ", partition " << r.partition_method << "\n"
                          << "degree " << r.degree_before << " -> " << r.degree_after << " (limit "
                          << j["degree_limit"] << ")\n"
                          << "central edge sizes " << to_string(r.left_size) << ", " << to_string(r.right_size)
                          << " (need > " << to_string(p.A / 2) << ")\n"
                          << "harmonic " << r.harmonic << ", refines G " << r.refines_original << '\n'
                          << (r.ok() ? "postconditions hold\n" : "POSTCONDITION FAILURE\n");
            }
            return r.ok() ? ok : failed;
        };
    });

    auto* pb = app.add_subcommand("points-bound", "Degree below which a graph has few points of that degree");
    pb->add_option("graph", words)->required();
    pb->callback([&] {
        action = [&] {
            auto g = load_graph(words);
            auto v = points_degree_bound(g);
            if (as_json) std::cout << exact_json("points-degree", "lower", v).dump(2) << '\n';
            else std::cout << to_string(v) << " (~" << to_double(v) << ")\n";
            return ok;
        };
    });

    long long q = 2, delta = 1, d = 1;
    std::string ideal, index_text;
    std::string what;
    auto* dr = app.add_subcommand("drinfeld", "Closed-form constants for Drinfeld modular curves");
    dr->add_option("what", what, "c | index | moddeg | gonbound | rc | graphsize | vertexbound")
        ->required()
        ->check(CLI::IsMember({"c", "index", "moddeg", "gonbound", "rc", "graphsize", "vertexbound"}));
    dr->add_option("--q", q)->capture_default_str();
    dr->add_option("--delta", delta)->capture_default_str();
    dr->add_option("--d", d, "Degree for rc and graphsize")->capture_default_str();
    dr->add_option("--ideal", ideal, "Prime factors as deg[:mult],...");
    dr->add_option("--index", index_text, "Subgroup index");
    dr->callback([&] {
        action = [&] {
            PlaceData place{q, delta};
            auto idx = [&] {
                if (index_text.empty()) throw ParseError("--index is required");
                try {
                    return Integer(index_text);
                } catch (const std::exception&) {
                    throw ParseError("bad --index '" + index_text + "'");
                }
            };
            json j{{"what", what}};
            std::string text;
            auto surd = [&](const SurdBound& s) {
                j["value_exact"] = s.value.to_string();
                j["value_float"] = s.value.to_double();
                j["vacuous"] = s.vacuous;
                std::ostringstream o;
                o << s.value.to_string() << " ~ " << s.value.to_double() << (s.vacuous ? " (vacuous)" : "");
                text = o.str();
            };
            auto rational = [&](const Rational& r) {
                j["value_exact"] = to_string(r);
                j["value_float"] = to_double(r);
                text = to_string(r) + " ~ " + std::to_string(to_double(r));
            };
            if (what == "c") {
                validate(place);
                auto c = c_q_delta(place);
                surd({c, c.sign() <= 0});
                j["sign"] = c.sign();
            } else if (what == "index") {
                validate(place);
                auto v = gamma0_index(place, parse_ideal(ideal));
                j["value_exact"] = to_string(v);
                text = to_string(v);
            } else if (what == "moddeg") {
                surd(modular_degree_lower_bound(place, parse_ideal(ideal)));
            } else if (what == "gonbound") {
                surd(gonality_lower_bound_index(place, idx()));
            } else if (what == "rc") {
                rational(cusp_ramification(q, d));
            } else if (what == "graphsize") {
                rational(principal_graph_size(q, d, idx()));
            } else {
                rational(vertex_count_lower_bound(q, idx()));
            }
            if (as_json) std::cout << j.dump(2) << '\n';
            else std::cout << text << '\n';
            return ok;
        };
    });

    auto* tb = app.add_subcommand("table", "Invariants table for the built-in corpus");
    tb->callback([&] {
        action = [&] {
            auto rows = invariants_table();
            if (!as_json) {
                std::cout << render_table(rows);
            } else {
                json arr = json::array();
                for (const auto& r : rows) {
                    auto g = json{{"name", r.name}, {"sgon", r.sgon}, {"sgon_exact", r.sgon_exact},
                                  {"gon", r.gon}, {"dgon", r.dgon}};
                    g["graph"] = graph_json(MultiGraph{}, r.inv);
                    g["graph"].erase("simple");
                    arr.push_back(g);
                }
                std::cout << arr.dump(2) << '\n';
            }
            for (const auto& r : rows)
                if (!r.sgon_exact) return budget;
            return ok;
        };
    });

    auto* gen = app.add_subcommand("generate", "Print a built-in graph in the graph file format");
    gen->add_option("spec", words, "kn N, cn N, knn N, bn N, path N or ppchange-example")->required();
    gen->add_option("--out", out_prefix, "For ppchange-example: write G, G', T and the morphism under this prefix");
    gen->callback([&] {
        action = [&] {
            auto spec = join(words);
            if (spec == "ppchange-example" && !out_prefix.empty()) {
                auto ex = rebuild_example();
                std::ofstream(out_prefix + ".graph") << format_graph(ex.graph);
                auto w = write_morphism(out_prefix, ex.morphism, ex.origin);
                std::cout << out_prefix << ".graph\n" << w.domain.string() << '\n' << w.codomain.string() << '\n'
                          << w.morphism.string() << '\n';
                return ok;
            }
            if (!is_builtin_spec(spec)) throw ParseError("unknown built-in graph '" + spec + "'");
            auto text = format_graph(builtin_graph(spec));
            if (out_prefix.empty()) std::cout << text;
            else std::ofstream(out_prefix) << text;
            return ok;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : parse;
    }
    try {
        return action();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return parse;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return precondition;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return precondition;
    } catch (const VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failed;
    }
}
