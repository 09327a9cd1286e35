#include "gonality/corpus.hpp"

#include "gonality/errors.hpp"

#include <cctype>
#include <sstream>

namespace gonality {

namespace {

GraphBuilder named_vertices(int n) {
    GraphBuilder b;
    for (int i = 0; i < n; ++i) b.add_vertex(std::to_string(i));
    return b;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

}  // namespace

MultiGraph complete_graph(int n) {
    require(n >= 1, "complete graph needs n >= 1");
    auto b = named_vertices(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) b.add_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return b.build();
}

MultiGraph cycle_graph(int n) {
    require(n >= 3, "cycle needs n >= 3");
    auto b = named_vertices(n);
    for (int i = 0; i < n; ++i) b.add_edge(static_cast<std::size_t>(i), static_cast<std::size_t>((i + 1) % n));
    return b.build();
}

MultiGraph complete_bipartite(int n) {
    require(n >= 1, "K_{n,n} needs n >= 1");
    GraphBuilder b;
    for (int i = 0; i < n; ++i) b.add_vertex("a" + std::to_string(i));
    for (int i = 0; i < n; ++i) b.add_vertex("b" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b.add_edge("a" + std::to_string(i), "b" + std::to_string(j));
    return b.build();
}

MultiGraph banana_graph(int n) {
    require(n >= 1, "banana graph needs n >= 1");
    auto b = named_vertices(2);
    for (int i = 0; i < n; ++i) b.add_edge(std::size_t{0}, std::size_t{1});
    return b.build();
}

MultiGraph path_graph(int n) {
    require(n >= 1, "path needs n >= 1");
    auto b = named_vertices(n);
    for (int i = 0; i + 1 < n; ++i) b.add_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1));
    return b.build();
}

namespace {

struct Spec {
    std::string family;
    std::optional<int> n;
};

std::optional<Spec> parse_spec(const std::string& raw) {
    std::istringstream in(raw);
    std::string head, arg, extra;
    in >> head;
    if (head.empty()) return std::nullopt;
    if (head == "ppchange-example") return in >> arg ? std::nullopt : std::optional<Spec>(Spec{head, std::nullopt});
    if (head == "k33") return in >> arg ? std::nullopt : std::optional<Spec>(Spec{"knn", 3});
    auto number = [](const std::string& s) -> std::optional<int> {
        if (s.empty() || s.size() > 6) return std::nullopt;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        return std::stoi(s);
    };
    for (std::string fam : {"knn", "kn", "cn", "bn", "path"}) {
        if (head == fam) {
            if (!(in >> arg) || (in >> extra)) return std::nullopt;
            auto n = number(arg);
            if (!n) return std::nullopt;
            return Spec{fam, n};
        }
    }
    // Short forms k4, c5, b3.
    if (head.size() >= 2 && (head[0] == 'k' || head[0] == 'c' || head[0] == 'b')) {
        auto n = number(head.substr(1));
        if (!n || (in >> arg)) return std::nullopt;
        return Spec{std::string(1, head[0]) + "n", n};
    }
    return std::nullopt;
}

}  // namespace

bool is_builtin_spec(const std::string& spec) { return parse_spec(spec).has_value(); }

MultiGraph builtin_graph(const std::string& raw) {
    auto spec = parse_spec(raw);
    if (!spec) throw ParseError("unknown built-in graph '" + raw + "'");
    if (spec->family == "ppchange-example") return rebuild_example().graph;
    int n = *spec->n;
    if (spec->family == "kn") return complete_graph(n);
    if (spec->family == "cn") return cycle_graph(n);
    if (spec->family == "knn") return complete_bipartite(n);
    if (spec->family == "bn") return banana_graph(n);
    return path_graph(n);
}

RebuildExample rebuild_example() {
    GraphBuilder g;
    for (int i = 1; i <= 10; ++i) g.add_vertex(std::to_string(i));
    const std::vector<std::pair<int, int>> g_edges = {{1, 2}, {1, 10}, {2, 10}, {2, 7}, {2, 4}, {2, 3},
                                                      {3, 4}, {3, 6},  {4, 5},  {5, 6}, {5, 7}, {6, 7},
                                                      {7, 8}, {7, 9},  {8, 9},  {8, 10}};
    for (auto [u, v] : g_edges) g.add_edge(std::to_string(u), std::to_string(v));

    GraphBuilder t;
    for (const char* x : {"a", "b", "B", "h", "H", "c", "d", "e", "f", "g"}) t.add_vertex(x);
    for (auto [x, y] : std::vector<std::pair<const char*, const char*>>{
             {"b", "B"}, {"a", "b"}, {"h", "H"}, {"a", "h"}, {"a", "c"}, {"a", "d"}, {"a", "e"}, {"a", "f"}, {"a", "g"}})
        t.add_edge(x, y, std::string(x) + y);
    const MultiGraph T = t.build();

    GraphBuilder r;
    std::vector<std::string> image;
    auto vertex = [&](const std::string& id, const std::string& x) {
        r.add_vertex(id);
        image.push_back(x);
    };
    std::vector<std::pair<std::string, int>> eimage;
    auto edge = [&](const std::string& u, const std::string& v, int index = 1) {
        r.add_edge(u, v);
        eimage.emplace_back("", index);
    };
    const std::vector<std::string> over = {"b", "a", "d", "f", "g", "e", "a", "h", "b", "h"};
    for (int i = 1; i <= 10; ++i) vertex(std::to_string(i), over[static_cast<std::size_t>(i - 1)]);
    vertex("11", "B");
    vertex("12", "B");
    vertex("13", "e");
    vertex("14", "g");
    vertex("15", "d");
    vertex("16", "f");
    vertex("17", "H");
    vertex("18", "c");
    for (int i = 19; i <= 24; ++i) vertex(std::to_string(i), "a");

    for (auto [u, v] : std::vector<std::pair<int, int>>{{1, 2}, {2, 10}, {2, 4}, {2, 3}, {5, 7}, {6, 7}, {7, 8}, {7, 9}})
        edge(std::to_string(u), std::to_string(v));
    edge("1", "11", 2);
    edge("9", "12", 2);
    edge("2", "13");
    edge("2", "14");
    edge("7", "15");
    edge("7", "16");
    // Subdivided edges u - mid - v.
    for (auto [u, mid, v] : std::vector<std::tuple<int, int, int>>{
             {1, 19, 10}, {2, 18, 7}, {3, 21, 4}, {3, 22, 6}, {5, 23, 6}, {8, 20, 9}, {4, 24, 5}}) {
        edge(std::to_string(u), std::to_string(mid));
        edge(std::to_string(mid), std::to_string(v));
    }
    edge("8", "17", 2);
    edge("17", "10", 2);
    // Leaf material on the vertices over a.
    auto leaf = [&](const std::string& at, const std::string& x) {
        vertex(at + "." + x, x);
        edge(at, at + "." + x);
    };
    auto leaf_path = [&](const std::string& at, const std::string& x, const std::string& y) {
        leaf(at, x);
        vertex(at + "." + y, y);
        edge(at + "." + x, at + "." + y);
    };
    for (std::string at : {"19", "20"})
        for (std::string x : {"c", "d", "e", "f", "g"}) leaf(at, x);
    const std::vector<std::pair<std::string, std::vector<std::string>>> extra = {
        {"21", {"e", "g"}}, {"22", {"f", "g"}}, {"23", {"d", "f"}}, {"24", {"d", "e"}}};
    for (const auto& [at, labels] : extra) {
        leaf_path(at, "b", "B");
        leaf_path(at, "h", "H");
        leaf(at, "c");
        for (const auto& x : labels) leaf(at, x);
    }
    const MultiGraph Gp = r.build();

    std::vector<std::size_t> vmap;
    for (const auto& x : image) vmap.push_back(T.vertex_index(x));
    std::vector<EdgeImage> emap;
    for (std::size_t e = 0; e < Gp.num_edges(); ++e) {
        auto x = T.vertex_id(vmap[Gp.edge(e).u]);
        auto y = T.vertex_id(vmap[Gp.edge(e).v]);
        auto te = T.find_edge(x + y);
        if (!te) te = T.find_edge(y + x);
        emap.push_back(EdgeImage::to_edge(*te, eimage[e].second));
    }
    RebuildExample out{g.build(), Gp, T, IndexedMorphism(Gp, T, vmap, emap), {}};
    for (int i = 1; i <= 10; ++i) out.origin.push_back(Gp.vertex_index(std::to_string(i)));
    return out;
}

std::vector<std::pair<std::string, MultiGraph>> table_corpus() {
    std::vector<std::pair<std::string, MultiGraph>> out;
    for (int n = 3; n <= 6; ++n) out.emplace_back("K" + std::to_string(n), complete_graph(n));
    for (int n = 3; n <= 8; ++n) out.emplace_back("C" + std::to_string(n), cycle_graph(n));
    out.emplace_back("K3,3", complete_bipartite(3));
    for (int n = 2; n <= 5; ++n) out.emplace_back("B" + std::to_string(n), banana_graph(n));
    return out;
}

MultiGraph random_connected_multigraph(std::mt19937_64& rng, int n, int m, bool loops) {
    require(n >= 1 && m >= n - 1, "random graph needs n >= 1 and m >= n - 1");
    require(n >= 2 || loops || m == 0, "one vertex admits only loops");
    auto b = named_vertices(n);
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        b.add_edge(static_cast<std::size_t>(pick(rng)), static_cast<std::size_t>(v));
    }
    std::uniform_int_distribution<int> any(0, n - 1);
    for (int k = n - 1; k < m;) {
        int u = any(rng), v = any(rng);
        if (u == v && !loops) continue;
        b.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
        ++k;
    }
    return b.build();
}

}  // namespace gonality
