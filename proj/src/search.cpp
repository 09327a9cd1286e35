#include "gonality/search.hpp"

#include "gonality/errors.hpp"
#include "gonality/spectral.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>

namespace gonality {

namespace {

// Feasibility of a transportation problem on a bipartite multigraph where
// every edge carries at least 1: supplies on the left, demands on the right.
class Transport {
public:
    // pairs: (left index, right index, multiplicity)
    static std::optional<std::vector<long long>> solve(const std::vector<long long>& supply,
                                                       const std::vector<long long>& demand,
                                                       const std::vector<std::array<long long, 3>>& pairs) {
        const std::size_t L = supply.size(), R = demand.size();
        std::vector<long long> s = supply, d = demand;
        for (const auto& p : pairs) {
            s[p[0]] -= p[2];
            d[p[1]] -= p[2];
        }
        long long total_s = 0, total_d = 0;
        for (auto x : s) {
            if (x < 0) return std::nullopt;
            total_s += x;
        }
        for (auto x : d) {
            if (x < 0) return std::nullopt;
            total_d += x;
        }
        if (total_s != total_d) return std::nullopt;
        // Nodes: 0 source, 1..L left, L+1..L+R right, L+R+1 sink.
        const std::size_t N = L + R + 2, src = 0, snk = L + R + 1;
        std::vector<std::vector<long long>> cap(N, std::vector<long long>(N, 0));
        for (std::size_t i = 0; i < L; ++i) cap[src][1 + i] = s[i];
        for (std::size_t j = 0; j < R; ++j) cap[1 + L + j][snk] = d[j];
        for (const auto& p : pairs) cap[1 + static_cast<std::size_t>(p[0])][1 + L + static_cast<std::size_t>(p[1])] = total_s + 1;
        auto original = cap;
        long long flow = 0;
        while (true) {
            std::vector<long> prev(N, -1);
            prev[src] = static_cast<long>(src);
            std::queue<std::size_t> q;
            q.push(src);
            while (!q.empty() && prev[snk] < 0) {
                auto x = q.front();
                q.pop();
                for (std::size_t y = 0; y < N; ++y)
                    if (prev[y] < 0 && cap[x][y] > 0) {
                        prev[y] = static_cast<long>(x);
                        q.push(y);
                    }
            }
            if (prev[snk] < 0) break;
            long long push = total_s + 1;
            for (std::size_t y = snk; y != src; y = static_cast<std::size_t>(prev[y]))
                push = std::min(push, cap[static_cast<std::size_t>(prev[y])][y]);
            for (std::size_t y = snk; y != src; y = static_cast<std::size_t>(prev[y])) {
                cap[static_cast<std::size_t>(prev[y])][y] -= push;
                cap[y][static_cast<std::size_t>(prev[y])] += push;
            }
            flow += push;
        }
        if (flow != total_s) return std::nullopt;
        std::vector<long long> extra;
        for (const auto& p : pairs) {
            auto a = static_cast<std::size_t>(1 + p[0]), b = 1 + L + static_cast<std::size_t>(p[1]);
            extra.push_back(original[a][b] - cap[a][b]);
        }
        return extra;
    }
};

struct Missing {
    std::size_t vertex;
    std::vector<int> chain;  // cells of the tree covered by the leaf path
};

class PartitionEngine {
public:
    PartitionEngine(const MultiGraph& g, const PartitionOptions& opt, SearchStats& stats)
        : g_(g), opt_(opt), stats_(stats), n_(g.num_vertices()) {
        // Breadth-first order keeps every prefix connected.
        std::vector<char> seen(n_, 0);
        std::queue<std::size_t> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            auto v = q.front();
            q.pop();
            order_.push_back(v);
            for (auto w : g.neighbours(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        pos_.assign(n_, 0);
        for (std::size_t k = 0; k < n_; ++k) pos_[order_[k]] = k;
        completes_at_.assign(n_, {});
        for (std::size_t v = 0; v < n_; ++v) {
            std::size_t last = pos_[v];
            for (auto w : g.neighbours(v)) last = std::max(last, pos_[w]);
            completes_at_[last].push_back(v);
        }
        nbr_ = std::vector<std::vector<std::size_t>>(n_);
        for (std::size_t v = 0; v < n_; ++v) nbr_[v] = g.neighbours(v);
    }

    std::optional<Witness> run(long long min_degree, long long max_degree) {
        for (long long d = std::max<long long>(1, min_degree); d <= max_degree; ++d) {
            target_ = d;
            reset();
            dfs(0);
            if (result_ || stats_.exhausted) break;
        }
        return std::move(result_);
    }

private:
    const MultiGraph& g_;
    PartitionOptions opt_;
    SearchStats& stats_;
    std::size_t n_;
    long long target_ = 0;
    std::vector<std::size_t> order_, pos_;
    std::vector<std::vector<std::size_t>> completes_at_;
    std::vector<std::vector<std::size_t>> nbr_;
    std::vector<int> cell_;
    std::vector<std::vector<std::size_t>> members_;
    std::vector<std::vector<int>> cnt_;  // vertex x cell edge counts
    std::vector<std::vector<int>> q_;    // cell x cell edge counts
    int ncells_ = 0;
    int distinct_ = 0;
    std::optional<Witness> result_;

    void reset() {
        cell_.assign(n_, -1);
        members_.assign(n_, {});
        cnt_.assign(n_, std::vector<int>(n_, 0));
        q_.assign(n_, std::vector<int>(n_, 0));
        ncells_ = 0;
        distinct_ = 0;
    }

    void assign(std::size_t v, int c, int sign) {
        for (auto e : g_.incident(v)) {
            auto w = g_.edge(e).other(v);
            if (w == v) continue;
            cnt_[w][c] += sign;
            int cw = cell_[w];
            if (cw >= 0 && cw != c) {
                if (sign > 0 && q_[c][cw] == 0) ++distinct_;
                q_[c][cw] += sign;
                q_[cw][c] += sign;
                if (sign < 0 && q_[c][cw] == 0) --distinct_;
            }
        }
    }

    int lb(std::size_t v) const {
        int best = 1;
        for (int c = 0; c < ncells_; ++c)
            if (c != cell_[v]) best = std::max(best, cnt_[v][c]);
        return best;
    }

    int missing_count(std::size_t v) const {
        int c = cell_[v], missing = 0;
        for (int c2 = 0; c2 < ncells_; ++c2)
            if (c2 != c && q_[c][c2] > 0 && cnt_[v][c2] == 0) ++missing;
        return missing;
    }

    bool partial_ok(std::size_t k) const {
        if (distinct_ != ncells_ - 1) return false;
        auto v = order_[k];
        std::vector<int> touched{cell_[v]};
        for (auto w : nbr_[v])
            if (cell_[w] >= 0) touched.push_back(cell_[w]);
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (int c : touched) {
            long long sum = 0;
            for (auto u : members_[c]) sum += lb(u);
            if (sum > target_) return false;
        }
        int missing = 0;
        for (std::size_t j = 0; j <= k; ++j)
            for (auto w : completes_at_[j]) missing += missing_count(w);
        return missing <= leaf_allowance();
    }

    int leaf_allowance() const { return opt_.rule == CellRule::independent ? opt_.leaf_budget : 0; }

    void dfs(std::size_t k) {
        if (result_ || stats_.exhausted) return;
        if (++stats_.nodes > stats_.node_limit) {
            stats_.exhausted = true;
            return;
        }
        if (k == n_) {
            if (ncells_ >= opt_.min_cells) evaluate();
            return;
        }
        auto v = order_[k];
        for (int c = 0; c <= ncells_ && !result_ && !stats_.exhausted; ++c) {
            if (c < ncells_ && opt_.rule == CellRule::independent && cnt_[v][c] > 0) continue;
            bool fresh = c == ncells_;
            if (fresh) ++ncells_;
            cell_[v] = c;
            members_[c].push_back(v);
            assign(v, c, +1);
            if (partial_ok(k)) dfs(k + 1);
            assign(v, c, -1);
            members_[c].pop_back();
            cell_[v] = -1;
            if (fresh) --ncells_;
        }
    }

    // ---- complete partitions ----

    struct Tree {
        std::vector<std::vector<int>> adj;
        int root = 0;
        std::vector<int> parent;
        std::vector<std::vector<int>> children;
        std::vector<int> post;
    };

    Tree quotient() const {
        Tree t;
        t.adj.assign(ncells_, {});
        for (int a = 0; a < ncells_; ++a)
            for (int b = 0; b < ncells_; ++b)
                if (a != b && q_[a][b] > 0) t.adj[a].push_back(b);
        int root = -1;
        for (int c = 0; c < ncells_ && root < 0; ++c)
            if (t.adj[c].size() >= 3) root = c;
        for (int c = 0; c < ncells_ && root < 0; ++c)
            if (t.adj[c].size() <= 1) root = c;
        t.root = root;
        t.parent.assign(ncells_, -1);
        t.children.assign(ncells_, {});
        std::vector<int> stack{root}, pre;
        std::vector<char> seen(ncells_, 0);
        seen[root] = 1;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            pre.push_back(c);
            for (int d : t.adj[c])
                if (!seen[d]) {
                    seen[d] = 1;
                    t.parent[d] = c;
                    t.children[c].push_back(d);
                    stack.push_back(d);
                }
        }
        for (auto& ch : t.children) std::sort(ch.begin(), ch.end());
        t.post.assign(pre.rbegin(), pre.rend());
        return t;
    }

    void evaluate() {
        Tree t = quotient();
        std::vector<Missing> missing;
        for (std::size_t v = 0; v < n_; ++v) {
            int c = cell_[v];
            for (int d : t.adj[c]) {
                if (cnt_[v][d] > 0) continue;
                if (leaf_allowance() == 0) return;
                Missing m{v, {d}};
                int prev = c, cur = d;
                while (true) {
                    std::vector<int> onward;
                    for (int x : t.adj[cur])
                        if (x != prev) onward.push_back(x);
                    if (onward.empty()) break;
                    if (onward.size() > 1) return;  // branch is not a path
                    prev = cur;
                    cur = onward[0];
                    m.chain.push_back(cur);
                }
                if (static_cast<int>(m.chain.size()) > opt_.leaf_length) return;
                missing.push_back(std::move(m));
            }
        }
        if (static_cast<int>(missing.size()) > leaf_allowance()) return;
        long long low = 1;
        for (int c = 0; c < ncells_; ++c) {
            long long sum = 0;
            for (auto u : members_[c]) sum += lb(u);
            low = std::max(low, sum);
        }
        for (long long D = low; D <= target_ && !result_; ++D) solve(t, missing, D);
    }

    // Per cell: vertices missing each neighbouring cell.
    using MissingMap = std::vector<std::map<int, std::vector<std::size_t>>>;

    struct Entry {
        bool ok = false;
        long long up = 0;            // upward leaf load sent to the parent
        std::vector<int> child_cand;  // chosen candidate per child
    };

    void solve(const Tree& t, const std::vector<Missing>& missing, long long D) {
        MissingMap miss(ncells_);
        for (const auto& m : missing) miss[cell_[m.vertex]][m.chain[0]].push_back(m.vertex);
        const bool leafy = !missing.empty();
        // Candidate multiplicity vectors per cell.
        std::vector<std::vector<std::vector<long long>>> cand(ncells_);
        for (int c = 0; c < ncells_; ++c) {
            const auto& mem = members_[c];
            std::vector<long long> low;
            long long base = 0;
            for (auto u : mem) {
                low.push_back(lb(u));
                base += low.back();
            }
            std::vector<long long> cur(mem.size());
            std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
                if (i + 1 == mem.size()) {
                    cur[i] = low[i] + left;
                    cand[c].push_back(cur);
                    return;
                }
                for (long long x = 0; x <= left; ++x) {
                    cur[i] = low[i] + x;
                    rec(i + 1, left - x);
                }
            };
            for (long long total = leafy ? base : D; total <= D; ++total)
                if (total >= base) rec(0, total - base);
            if (cand[c].empty()) return;
        }
        const auto L = static_cast<std::size_t>(D + 1);
        // table[c][cand][lambda_down]
        std::vector<std::vector<std::vector<Entry>>> table(ncells_);
        std::map<std::vector<long long>, bool> flow_memo;
        auto edge_ok = [&](int a, const std::vector<long long>& ma, int b, const std::vector<long long>& mb,
                           long long& flow_total) {
            std::vector<long long> key{a, b};
            long long fa = 0, fb = 0;
            for (std::size_t i = 0; i < members_[a].size(); ++i)
                if (cnt_[members_[a][i]][b] > 0) {
                    key.push_back(ma[i]);
                    fa += ma[i];
                }
            key.push_back(-1);
            for (std::size_t j = 0; j < members_[b].size(); ++j)
                if (cnt_[members_[b][j]][a] > 0) {
                    key.push_back(mb[j]);
                    fb += mb[j];
                }
            flow_total = fa;
            if (fa != fb) return false;
            auto it = flow_memo.find(key);
            if (it != flow_memo.end()) return it->second;
            bool ok = transport(a, ma, b, mb).has_value();
            flow_memo.emplace(std::move(key), ok);
            return ok;
        };
        auto missing_mass = [&](int c, int toward, const std::vector<long long>& m) {
            long long mass = 0;
            auto it = miss[c].find(toward);
            if (it == miss[c].end()) return mass;
            for (auto v : it->second) {
                auto idx = std::find(members_[c].begin(), members_[c].end(), v) - members_[c].begin();
                mass += m[idx];
            }
            return mass;
        };
        for (int c : t.post) {
            table[c].assign(cand[c].size(), std::vector<Entry>(L));
            const auto& kids = t.children[c];
            for (std::size_t i = 0; i < cand[c].size(); ++i) {
                const auto& m = cand[c][i];
                const long long own = std::accumulate(m.begin(), m.end(), 0LL);
                for (long long down = 0; down <= D; ++down) {
                    if (c == t.root && down > 0) break;
                    if (down > 0 && kids.size() >= 2) break;
                    long long rest = D - own - down;
                    if (rest < 0) break;
                    // Options per child: achievable upward loads.
                    std::vector<std::map<long long, int>> options(kids.size());
                    bool dead = false;
                    for (std::size_t k = 0; k < kids.size() && !dead; ++k) {
                        int child = kids[k];
                        long long down_c = (kids.size() == 1 ? down : 0) + missing_mass(c, child, m);
                        if (down_c > D) {
                            dead = true;
                            break;
                        }
                        for (std::size_t j = 0; j < cand[child].size(); ++j) {
                            const auto& e = table[child][j][static_cast<std::size_t>(down_c)];
                            if (!e.ok || options[k].count(e.up)) continue;
                            long long flow = 0;
                            if (!edge_ok(c, m, child, cand[child][j], flow)) continue;
                            if (flow + down_c + e.up != D) continue;
                            options[k][e.up] = static_cast<int>(j);
                        }
                        if (options[k].empty()) dead = true;
                    }
                    if (dead) continue;
                    // Choose one upward load per child summing to rest.
                    std::vector<std::map<long long, long long>> reach(kids.size() + 1);
                    reach[0][0] = -1;
                    for (std::size_t k = 0; k < kids.size(); ++k)
                        for (const auto& [sum, _] : reach[k])
                            for (const auto& [up, __] : options[k])
                                if (sum + up <= rest && !reach[k + 1].count(sum + up)) reach[k + 1][sum + up] = up;
                    if (!reach[kids.size()].count(rest)) continue;
                    Entry entry;
                    entry.ok = true;
                    entry.child_cand.assign(kids.size(), -1);
                    long long sum = rest;
                    for (std::size_t k = kids.size(); k-- > 0;) {
                        long long up = reach[k + 1][sum];
                        entry.child_cand[k] = options[k][up];
                        sum -= up;
                    }
                    entry.up = rest + (c == t.root ? 0 : missing_mass(c, t.parent[c], m));
                    if (c != t.root && entry.up > D) continue;
                    table[c][i][static_cast<std::size_t>(down)] = std::move(entry);
                }
            }
        }
        for (std::size_t i = 0; i < cand[t.root].size(); ++i) {
            if (!table[t.root][i][0].ok) continue;
            build(t, missing, miss, cand, table, static_cast<int>(i), D);
            return;
        }
    }

    std::optional<std::vector<long long>> transport(int a, const std::vector<long long>& ma, int b,
                                                    const std::vector<long long>& mb) const {
        std::vector<std::size_t> left, right;
        std::vector<long long> supply, demand;
        for (std::size_t i = 0; i < members_[a].size(); ++i)
            if (cnt_[members_[a][i]][b] > 0) {
                left.push_back(members_[a][i]);
                supply.push_back(ma[i]);
            }
        for (std::size_t j = 0; j < members_[b].size(); ++j)
            if (cnt_[members_[b][j]][a] > 0) {
                right.push_back(members_[b][j]);
                demand.push_back(mb[j]);
            }
        std::vector<std::array<long long, 3>> pairs;
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = 0; j < right.size(); ++j) {
                int mult = g_.multiplicity(left[i], right[j]);
                if (mult > 0) pairs.push_back({static_cast<long long>(i), static_cast<long long>(j), mult});
            }
        return Transport::solve(supply, demand, pairs);
    }

    void build(const Tree& t, const std::vector<Missing>& missing, const MissingMap& miss,
               const std::vector<std::vector<std::vector<long long>>>& cand,
               const std::vector<std::vector<std::vector<Entry>>>& table, int root_cand, long long D) {
        std::vector<long long> m(n_, 0);
        std::vector<int> chosen(ncells_, -1);
        std::function<void(int, int, long long)> walk = [&](int c, int i, long long down) {
            chosen[c] = i;
            const auto& mc = cand[c][static_cast<std::size_t>(i)];
            for (std::size_t k = 0; k < members_[c].size(); ++k) m[members_[c][k]] = mc[k];
            const auto& entry = table[c][static_cast<std::size_t>(i)][static_cast<std::size_t>(down)];
            const auto& kids = t.children[c];
            for (std::size_t k = 0; k < kids.size(); ++k) {
                long long mass = 0;
                auto it = miss[c].find(kids[k]);
                if (it != miss[c].end())
                    for (auto v : it->second) {
                        auto idx = std::find(members_[c].begin(), members_[c].end(), v) - members_[c].begin();
                        mass += mc[static_cast<std::size_t>(idx)];
                    }
                walk(kids[k], entry.child_cand[k], (kids.size() == 1 ? down : 0) + mass);
            }
        };
        walk(t.root, root_cand, 0);

        // Codomain: one vertex per cell.
        GraphBuilder tb;
        for (int c = 0; c < ncells_; ++c) tb.add_vertex("t" + std::to_string(c));
        std::map<std::pair<int, int>, std::size_t> tedge;
        for (int a = 0; a < ncells_; ++a)
            for (int b : t.adj[a])
                if (a < b) tedge[{a, b}] = tb.add_edge(a, b, "t" + std::to_string(a) + "-t" + std::to_string(b));
        auto tree_edge = [&](int a, int b) { return tedge.at({std::min(a, b), std::max(a, b)}); };
        MultiGraph T = tb.build();

        // Index per real edge: 1 plus the transported surplus on the first
        // parallel copy.
        std::vector<int> r(g_.num_edges(), 1);
        for (int a = 0; a < ncells_; ++a)
            for (int b : t.adj[a]) {
                if (a > b) continue;
                const auto& ma = cand[a][static_cast<std::size_t>(chosen[a])];
                const auto& mb = cand[b][static_cast<std::size_t>(chosen[b])];
                auto extra = transport(a, ma, b, mb);
                if (!extra) throw VerificationError("transport lost feasibility during reconstruction");
                std::vector<std::size_t> left, right;
                for (auto v : members_[a])
                    if (cnt_[v][b] > 0) left.push_back(v);
                for (auto w : members_[b])
                    if (cnt_[w][a] > 0) right.push_back(w);
                std::size_t k = 0;
                for (std::size_t i = 0; i < left.size(); ++i)
                    for (std::size_t j = 0; j < right.size(); ++j) {
                        if (g_.multiplicity(left[i], right[j]) == 0) continue;
                        for (auto e : g_.incident(left[i]))
                            if (g_.edge(e).other(left[i]) == right[j]) {
                                r[e] += static_cast<int>((*extra)[k]);
                                break;
                            }
                        ++k;
                    }
            }

        GraphBuilder gb(g_);
        RefinementTrace trace = identity_trace(g_);
        std::vector<std::size_t> vmap;
        std::vector<EdgeImage> emap;
        for (std::size_t v = 0; v < n_; ++v) vmap.push_back(static_cast<std::size_t>(cell_[v]));
        for (std::size_t e = 0; e < g_.num_edges(); ++e) {
            int a = cell_[g_.edge(e).u], b = cell_[g_.edge(e).v];
            if (a == b)
                emap.push_back(EdgeImage::to_vertex(static_cast<std::size_t>(a)));
            else
                emap.push_back(EdgeImage::to_edge(tree_edge(a, b), r[e]));
        }
        for (const auto& ms : missing) {
            std::size_t at = ms.vertex;
            int prev = cell_[ms.vertex];
            for (int c : ms.chain) {
                auto leaf = gb.add_vertex(gb.fresh_vertex_id(g_.vertex_id(ms.vertex) + ">t" + std::to_string(c)));
                gb.add_edge(at, leaf, gb.fresh_edge_id(g_.vertex_id(ms.vertex) + ">t" + std::to_string(c)));
                trace.vertex_origin.push_back(VertexOrigin::leaf());
                trace.edge_origin.push_back(std::nullopt);
                vmap.push_back(static_cast<std::size_t>(c));
                emap.push_back(EdgeImage::to_edge(tree_edge(prev, c), static_cast<int>(m[ms.vertex])));
                at = leaf;
                prev = c;
            }
        }
        trace.child = gb.build();
        Variant variant = opt_.rule == CellRule::collapsible ? Variant::caporaso : Variant::finite;
        IndexedMorphism phi(trace.child, T, vmap, emap, variant);
        auto rep = verify(phi);
        if (!rep.harmonic || rep.degree != D)
            throw VerificationError("search produced a morphism that fails verification");
        if (variant == Variant::caporaso && !rep.non_degenerate)
            throw VerificationError("search produced a degenerate morphism");
        result_ = Witness{std::move(phi), std::move(trace), D};
    }
};

}  // namespace

std::optional<Witness> find_tree_morphism(const MultiGraph& g, const PartitionOptions& options, long long min_degree,
                                          long long max_degree, SearchStats& stats) {
    if (!g.is_connected()) throw PreconditionError("search needs a connected graph");
    if (g.has_loops()) throw PreconditionError("search needs a loopless graph");
    PartitionEngine engine(g, options, stats);
    return engine.run(min_degree, max_degree);
}

MinDegreeResult min_finite_harmonic_degree(const MultiGraph& g, std::optional<int> max_degree) {
    SearchStats stats;
    long long cap = max_degree.value_or(static_cast<int>(g.num_vertices() + g.num_edges()));
    auto w = find_tree_morphism(g, {CellRule::independent, 0, 0}, 1, cap, stats);
    MinDegreeResult out;
    if (w) {
        out.degree = w->degree;
        out.witness = w->morphism;
    } else if (stats.exhausted) {
        out.reason = "node limit reached";
    } else {
        out.reason = "no partition into independent cells with tree quotient admits degree <= " + std::to_string(cap);
    }
    return out;
}

SubdivisionMinimum min_finite_over_subdivisions(const MultiGraph& g, int max_per_edge) {
    SubdivisionMinimum out;
    for_each_subdivision_vector(g, max_per_edge, [&](const std::vector<int>& counts) {
        ++out.refinements_tried;
        auto sub = subdivide_edges(g, counts);
        SearchStats stats;
        long long cap = out.degree ? *out.degree - 1 : static_cast<long long>(sub.graph.num_edges());
        auto w = find_tree_morphism(sub.graph, {CellRule::independent, 0, 0}, 1, cap, stats);
        if (stats.exhausted) throw Error("node limit reached while minimising over subdivisions");
        if (w) {
            out.degree = w->degree;
            out.counts = counts;
            w->trace = compose(sub.trace, w->trace);
            out.witness = std::move(*w);
        }
        return true;
    });
    return out;
}

GonResult gon(const MultiGraph& g) {
    SearchStats stats;
    // The constant map has no edge at its image, so its degree is only a
    // convention; gon uses trees with at least one edge.
    PartitionOptions opt{CellRule::collapsible, 0, 0, g.num_vertices() >= 2 ? 2 : 1};
    // Any cut with every vertex on a crossing edge has degree at most |E|.
    auto cap = std::max<long long>(1, static_cast<long long>(std::max(g.num_edges(), g.num_vertices())));
    auto w = find_tree_morphism(g, opt, 1, cap, stats);
    if (!w) throw Error(stats.exhausted ? "gonality search hit its node limit" : "gonality search found nothing");
    return {w->degree, std::move(w->morphism)};
}

Witness caporaso_to_finite(const IndexedMorphism& phi) {
    auto rep = verify(phi);
    if (!rep.harmonic || !rep.non_degenerate) throw PreconditionError("conversion needs a non-degenerate harmonic morphism");
    const auto& G = phi.domain();
    const auto& T = phi.codomain();
    std::vector<int> counts(G.num_edges(), 0);
    for (std::size_t e = 0; e < G.num_edges(); ++e)
        if (phi.emap()[e].collapsed) counts[e] = 1;
    auto sub = subdivide_edges(G, counts);

    GraphBuilder tb(T);
    std::vector<std::size_t> new_leaf(G.num_edges(), 0), new_edge(G.num_edges(), 0);
    for (std::size_t e = 0; e < G.num_edges(); ++e) {
        if (!counts[e]) continue;
        auto x = phi.emap()[e].target;
        new_leaf[e] = tb.add_vertex(tb.fresh_vertex_id(T.vertex_id(x) + "/" + G.edge(e).id));
        new_edge[e] = tb.add_edge(x, new_leaf[e], tb.fresh_edge_id(T.vertex_id(x) + "/" + G.edge(e).id));
    }
    MultiGraph Tp = tb.build();

    GraphBuilder gb(sub.graph);
    RefinementTrace trace = sub.trace;
    const auto& S = sub.graph;
    std::vector<std::size_t> vmap(S.num_vertices());
    std::vector<EdgeImage> emap(S.num_edges());
    for (std::size_t v = 0; v < S.num_vertices(); ++v) {
        const auto& o = trace.vertex_origin[v];
        vmap[v] = o.kind == VertexOrigin::Kind::vertex ? phi.vmap()[o.index] : new_leaf[o.index];
    }
    for (std::size_t e = 0; e < S.num_edges(); ++e) {
        auto pe = *trace.edge_origin[e];
        const auto& img = phi.emap()[pe];
        if (!img.collapsed) {
            emap[e] = img;
            continue;
        }
        // Half of a collapsed edge: index is m of its original endpoint.
        const auto& se = S.edge(e);
        std::size_t end = trace.vertex_origin[se.u].kind == VertexOrigin::Kind::vertex ? se.u : se.v;
        emap[e] = EdgeImage::to_edge(new_edge[pe], static_cast<int>(rep.m[trace.vertex_origin[end].index]));
    }
    for (std::size_t e = 0; e < G.num_edges(); ++e) {
        if (!counts[e]) continue;
        auto x = phi.emap()[e].target;
        for (std::size_t w = 0; w < G.num_vertices(); ++w) {
            if (phi.vmap()[w] != x || w == G.edge(e).u || w == G.edge(e).v) continue;
            auto leaf = gb.add_vertex(gb.fresh_vertex_id(G.vertex_id(w) + ">" + Tp.vertex_id(new_leaf[e])));
            gb.add_edge(w, leaf, gb.fresh_edge_id(G.vertex_id(w) + ">" + Tp.vertex_id(new_leaf[e])));
            trace.vertex_origin.push_back(VertexOrigin::leaf());
            trace.edge_origin.push_back(std::nullopt);
            vmap.push_back(new_leaf[e]);
            emap.push_back(EdgeImage::to_edge(new_edge[e], static_cast<int>(rep.m[w])));
        }
    }
    trace.child = gb.build();
    IndexedMorphism out(trace.child, Tp, vmap, emap, Variant::finite);
    auto check = verify(out);
    if (!check.harmonic || check.degree != rep.degree)
        throw VerificationError("converted morphism fails verification");
    return {std::move(out), std::move(trace), rep.degree};
}

RefinementSize refinement_size(const RefinementTrace& t) {
    RefinementSize size;
    std::vector<int> per_edge(t.parent.num_edges(), 0);
    for (auto o : t.edge_origin)
        if (o) ++per_edge[*o];
    for (auto c : per_edge) size.max_subdivisions_per_edge = std::max(size.max_subdivisions_per_edge, c - 1);
    const auto& C = t.child;
    std::vector<char> seen(C.num_vertices(), 0);
    for (std::size_t anchor = 0; anchor < C.num_vertices(); ++anchor) {
        if (t.vertex_origin[anchor].kind == VertexOrigin::Kind::leaf) continue;
        for (auto e : C.incident(anchor)) {
            if (t.edge_origin[e]) continue;
            ++size.leaf_paths;
            int length = 1;
            std::size_t prev = anchor, at = C.edge(e).other(anchor);
            while (true) {
                std::vector<std::size_t> onward;
                for (auto f : C.incident(at))
                    if (C.edge(f).other(at) != prev) onward.push_back(f);
                if (onward.empty()) break;
                if (onward.size() > 1) size.paths_only = false;
                prev = at;
                at = C.edge(onward[0]).other(at);
                ++length;
            }
            size.max_leaf_length = std::max(size.max_leaf_length, length);
        }
    }
    return size;
}

SgonResult sgon(const MultiGraph& g, const SearchBudget& budget) {
    if (!g.is_connected()) throw PreconditionError("stable gonality needs a connected graph");
    SgonResult out;
    // Loops are subdivided once, outside the budget.
    std::vector<int> loop_counts(g.num_edges(), 0);
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        if (g.edge(e).is_loop()) loop_counts[e] = 1;
    auto pre = subdivide_edges(g, loop_counts);
    const MultiGraph& G0 = pre.graph;

    out.lower_bounds.emplace_back("trivial", 1);
    if (g.num_vertices() >= 2)
        out.lower_bounds.emplace_back("spectral", static_cast<long long>(sgon_lower_bound(g)));
    if (g.num_vertices() <= 16) out.lower_bounds.emplace_back("treewidth", treewidth(g));
    if (g.genus() >= 1) out.lower_bounds.emplace_back("genus>=1", 2);
    for (const auto& [name, value] : out.lower_bounds) out.lo = std::max(out.lo, value);

    const int leaf_budget = budget.max_leaf_paths.value_or(static_cast<int>(g.num_vertices()));
    long long cap = budget.max_degree ? *budget.max_degree
                    : g.genus() >= 2  ? static_cast<long long>(brill_noether_upper(g))
                                      : static_cast<long long>(G0.num_vertices());

    auto within = [&](const RefinementTrace& t) {
        auto size = refinement_size(t);
        return size.paths_only && size.max_subdivisions_per_edge <= budget.max_subdivisions_per_edge &&
               size.leaf_paths <= leaf_budget && size.max_leaf_length <= budget.max_leaf_length;
    };
    auto adopt = [&](Witness w, std::string source, bool in_budget) {
        out.hi = w.degree;
        out.witness_within_budget = in_budget;
        out.witness_source = std::move(source);
        w.trace = compose(pre.trace, w.trace);
        out.witness = std::move(w);
    };

    SearchStats stats;
    stats.node_limit = budget.max_nodes;
    if (G0.num_vertices() == 1) {
        adopt(Witness{identity_morphism(G0), identity_trace(G0), 1}, "identity", true);
    } else if (budget.use_caporaso_conversion && out.lo < cap + 1) {
        auto w = find_tree_morphism(G0, {CellRule::collapsible, 0, 0}, 1, static_cast<long long>(G0.num_vertices()),
                                    stats);
        if (w) {
            auto finite = caporaso_to_finite(w->morphism);
            bool in_budget = within(finite.trace);
            adopt(std::move(finite), "caporaso-conversion", in_budget);
        }
    }

    auto report = [&](const std::string& line) {
        if (budget.progress) budget.progress(line);
    };
    report("bounds: lo " + std::to_string(out.lo) + ", hi " + (out.hi ? std::to_string(*out.hi) : "none"));
    std::uint64_t refinements = 0;
    bool done = out.hi && *out.hi <= out.lo;
    for (long long d = out.lo; !done && d <= cap && (!out.hi || d < *out.hi); ++d) {
        report("searching degree " + std::to_string(d));
        for_each_subdivision_vector(G0, budget.max_subdivisions_per_edge, [&](const std::vector<int>& counts) {
            if (++refinements > budget.max_refinements) {
                stats.exhausted = true;
                return false;
            }
            if (refinements % 1000 == 0)
                report(std::to_string(refinements) + " refinements, " + std::to_string(stats.nodes) + " nodes");
            auto sub = subdivide_edges(G0, counts);
            auto w = find_tree_morphism(sub.graph, {CellRule::independent, leaf_budget, budget.max_leaf_length}, d, d,
                                        stats);
            if (w) {
                w->trace = compose(sub.trace, w->trace);
                adopt(std::move(*w), "search", true);
                done = true;
                return false;
            }
            return !stats.exhausted;
        });
        if (stats.exhausted) break;
    }
    out.budget_exhausted = stats.exhausted;
    out.exact = out.hi && *out.hi == out.lo;
    return out;
}

}  // namespace gonality
