#include "gonality/io.hpp"

#include "gonality/errors.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace gonality {

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string where(int line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

MultiGraph parse_graph(const std::string& text) {
    GraphBuilder b;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = tokens(line);
        if (t.empty()) continue;
        if (t[0] == "v") {
            if (t.size() != 2) throw ParseError(where(lineno) + "expected 'v <name>'");
            if (t[1] == "v") throw ParseError(where(lineno) + "the vertex name 'v' is reserved");
            if (b.has_vertex(t[1])) throw ParseError(where(lineno) + "vertex '" + t[1] + "' declared twice");
            b.add_vertex(t[1]);
            continue;
        }
        if (t.size() != 2) throw ParseError(where(lineno) + "expected '<u> <v>'");
        if (t[1] == "v") throw ParseError(where(lineno) + "the vertex name 'v' is reserved");
        auto u = b.ensure_vertex(t[0]);
        auto v = b.ensure_vertex(t[1]);
        b.add_edge(u, v, "e" + std::to_string(b.num_edges() + 1));
    }
    auto g = b.build();
    if (!g.is_connected()) throw ParseError("graph is empty or disconnected");
    return g;
}

MultiGraph read_graph(const std::filesystem::path& path) { return parse_graph(slurp(path)); }

std::string format_graph(const MultiGraph& g) {
    std::ostringstream out;
    for (const auto& id : g.vertex_ids()) {
        if (id == "v" || id.empty() || id[0] == '#' || id.find_first_of(" \t\n") != std::string::npos)
            throw PreconditionError("vertex id '" + id + "' cannot be written");
        out << "v " << id << '\n';
    }
    for (const auto& e : g.edges()) out << g.vertex_id(e.u) << ' ' << g.vertex_id(e.v) << '\n';
    return out.str();
}

MultiGraph with_canonical_edge_ids(const MultiGraph& g) {
    GraphBuilder b;
    for (const auto& id : g.vertex_ids()) b.add_vertex(id);
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        b.add_edge(g.edge(e).u, g.edge(e).v, "e" + std::to_string(e + 1));
    return b.build();
}

std::vector<std::size_t> LoadedMorphism::origin_or_all() const {
    if (origin) return *origin;
    std::vector<std::size_t> all(morphism.domain().num_vertices());
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
    return all;
}

LoadedMorphism parse_morphism(const std::string& text, const std::filesystem::path& base_dir) {
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    std::optional<std::string> dom_path, cod_path;
    Variant variant = Variant::finite;
    std::vector<std::pair<int, std::vector<std::string>>> origin, vmap, emap;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = tokens(line);
        if (t.empty()) continue;
        if (t[0].front() == '[') {
            if (t[0].back() != ']') throw ParseError(where(lineno) + "malformed section header");
            section = t[0].substr(1, t[0].size() - 2);
            if (section == "domain" || section == "codomain") {
                if (t.size() != 2) throw ParseError(where(lineno) + "expected [" + section + "] <path>");
                (section == "domain" ? dom_path : cod_path) = t[1];
            } else if (section == "variant") {
                if (t.size() != 2 || (t[1] != "finite" && t[1] != "caporaso"))
                    throw ParseError(where(lineno) + "expected [variant] finite|caporaso");
                variant = t[1] == "finite" ? Variant::finite : Variant::caporaso;
            } else if (section == "origin") {
                if (t.size() > 1) origin.emplace_back(lineno, std::vector<std::string>(t.begin() + 1, t.end()));
                else origin.emplace_back(lineno, std::vector<std::string>{});
            } else if (section != "vmap" && section != "emap") {
                throw ParseError(where(lineno) + "unknown section '" + section + "'");
            } else if (t.size() != 1) {
                throw ParseError(where(lineno) + "unexpected text after section header");
            }
            continue;
        }
        if (section == "origin") origin.emplace_back(lineno, t);
        else if (section == "vmap") vmap.emplace_back(lineno, t);
        else if (section == "emap") emap.emplace_back(lineno, t);
        else throw ParseError(where(lineno) + "text outside a list section");
    }
    if (!dom_path || !cod_path) throw ParseError("morphism file needs [domain] and [codomain]");
    LoadedMorphism out{identity_morphism(MultiGraph{}), std::nullopt, base_dir / *dom_path, base_dir / *cod_path};
    const MultiGraph D = read_graph(out.domain_path);
    const MultiGraph C = read_graph(out.codomain_path);

    auto dv = [&](int ln, const std::string& id) {
        auto v = D.find_vertex(id);
        if (!v) throw ParseError(where(ln) + "unknown domain vertex '" + id + "'");
        return *v;
    };
    std::vector<std::optional<std::size_t>> vm(D.num_vertices());
    for (const auto& [ln, t] : vmap) {
        if (t.size() != 3 || t[1] != "->") throw ParseError(where(ln) + "expected 'u -> x'");
        auto v = dv(ln, t[0]);
        auto x = C.find_vertex(t[2]);
        if (!x) throw ParseError(where(ln) + "unknown codomain vertex '" + t[2] + "'");
        if (vm[v]) throw ParseError(where(ln) + "vertex '" + t[0] + "' mapped twice");
        vm[v] = *x;
    }
    std::vector<std::optional<EdgeImage>> em(D.num_edges());
    for (const auto& [ln, t] : emap) {
        if (t.size() != 5 || t[1] != "->" || t[3] != ":") throw ParseError(where(ln) + "expected 'eK -> target : r'");
        auto e = D.find_edge(t[0]);
        if (!e) throw ParseError(where(ln) + "unknown domain edge '" + t[0] + "'");
        if (em[*e]) throw ParseError(where(ln) + "edge '" + t[0] + "' mapped twice");
        int r = 0;
        try {
            std::size_t used = 0;
            r = std::stoi(t[4], &used);
            if (used != t[4].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError(where(ln) + "index '" + t[4] + "' is not an integer");
        }
        if (r < 0) throw ParseError(where(ln) + "negative index");
        if (r == 0) {
            auto x = C.find_vertex(t[2]);
            if (!x) throw ParseError(where(ln) + "index 0 needs a codomain vertex, got '" + t[2] + "'");
            em[*e] = EdgeImage::to_vertex(*x);
        } else {
            auto f = C.find_edge(t[2]);
            if (!f) throw ParseError(where(ln) + "positive index needs a codomain edge, got '" + t[2] + "'");
            em[*e] = EdgeImage::to_edge(*f, r);
        }
    }
    std::vector<std::size_t> vmf;
    std::vector<EdgeImage> emf;
    for (std::size_t v = 0; v < vm.size(); ++v) {
        if (!vm[v]) throw ParseError("domain vertex '" + D.vertex_id(v) + "' is not mapped");
        vmf.push_back(*vm[v]);
    }
    for (std::size_t e = 0; e < em.size(); ++e) {
        if (!em[e]) throw ParseError("domain edge '" + D.edge(e).id + "' is not mapped");
        emf.push_back(*em[e]);
    }
    if (!origin.empty()) {
        std::vector<std::size_t> o;
        std::vector<char> seen(D.num_vertices(), 0);
        for (const auto& [ln, t] : origin)
            for (const auto& id : t) {
                auto v = dv(ln, id);
                if (seen[v]) throw ParseError(where(ln) + "origin vertex '" + id + "' listed twice");
                seen[v] = 1;
                o.push_back(v);
            }
        out.origin = o;
    }
    try {
        out.morphism = IndexedMorphism(D, C, vmf, emf, variant);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("inconsistent morphism: ") + e.what());
    }
    return out;
}

LoadedMorphism read_morphism(const std::filesystem::path& path) {
    return parse_morphism(slurp(path), path.parent_path());
}

std::string format_morphism(const IndexedMorphism& phi, const std::string& domain_path,
                            const std::string& codomain_path, const std::optional<std::vector<std::size_t>>& origin) {
    const auto& D = phi.domain();
    const auto& C = phi.codomain();
    std::ostringstream out;
    out << "[domain] " << domain_path << "\n[codomain] " << codomain_path << '\n';
    if (phi.variant() == Variant::caporaso) out << "[variant] caporaso\n";
    if (origin) {
        out << "[origin]\n";
        for (auto v : *origin) out << D.vertex_id(v) << '\n';
    }
    out << "[vmap]\n";
    for (std::size_t v = 0; v < D.num_vertices(); ++v) out << D.vertex_id(v) << " -> " << C.vertex_id(phi.vmap()[v]) << '\n';
    out << "[emap]\n";
    for (std::size_t e = 0; e < D.num_edges(); ++e) {
        const auto& img = phi.emap()[e];
        out << D.edge(e).id << " -> " << (img.collapsed ? C.vertex_id(img.target) : C.edge(img.target).id) << " : "
            << img.index << '\n';
    }
    return out.str();
}

WrittenMorphism write_morphism(const std::filesystem::path& prefix, const IndexedMorphism& phi,
                               const std::optional<std::vector<std::size_t>>& origin) {
    IndexedMorphism canon(with_canonical_edge_ids(phi.domain()), with_canonical_edge_ids(phi.codomain()), phi.vmap(),
                          phi.emap(), phi.variant());
    WrittenMorphism w{prefix.string() + ".morphism", prefix.string() + ".domain.graph",
                      prefix.string() + ".codomain.graph"};
    auto put = [](const std::filesystem::path& p, const std::string& s) {
        std::ofstream out(p);
        if (!out) throw Error("cannot write '" + p.string() + "'");
        out << s;
    };
    put(w.domain, format_graph(canon.domain()));
    put(w.codomain, format_graph(canon.codomain()));
    put(w.morphism, format_morphism(canon, w.domain.filename().string(), w.codomain.filename().string(), origin));
    return w;
}

std::string to_dot(const MultiGraph& g) {
    std::ostringstream out;
    out << "graph G {\n";
    for (const auto& id : g.vertex_ids()) out << "  \"" << id << "\";\n";
    for (const auto& e : g.edges())
        out << "  \"" << g.vertex_id(e.u) << "\" -- \"" << g.vertex_id(e.v) << "\" [label=\"" << e.id << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace gonality
