#include "gonality/spectral.hpp"

#include "gonality/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace gonality {

Inertia inertia(const RationalMatrix& m) {
    RationalMatrix a = m;
    const std::size_t n = a.size();
    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = i;
    Inertia out;
    auto drop = [&](std::size_t i) { active.erase(std::find(active.begin(), active.end(), i)); };
    while (!active.empty()) {
        std::optional<std::size_t> pivot;
        for (auto i : active)
            if (a[i][i] != 0) {
                pivot = i;
                break;
            }
        if (pivot) {
            auto p = *pivot;
            const Rational d = a[p][p];
            (d > 0 ? out.positive : out.negative) += 1;
            drop(p);
            for (auto j : active) {
                if (a[j][p] == 0) continue;
                Rational f = a[j][p] / d;
                for (auto k : active) a[j][k] -= f * a[p][k];
            }
            continue;
        }
        std::optional<std::pair<std::size_t, std::size_t>> pair;
        for (auto i : active) {
            for (auto j : active)
                if (i != j && a[i][j] != 0) {
                    pair = std::make_pair(i, j);
                    break;
                }
            if (pair) break;
        }
        if (!pair) {
            out.zero += static_cast<int>(active.size());
            break;
        }
        // [[0, b], [b, 0]] has one positive and one negative eigenvalue.
        auto [i, j] = *pair;
        const Rational b = a[i][j];
        out.positive += 1;
        out.negative += 1;
        drop(i);
        drop(j);
        RationalMatrix next = a;
        for (auto k : active)
            for (auto l : active) next[k][l] = a[k][l] - (a[k][i] * a[j][l] + a[k][j] * a[i][l]) / b;
        a = std::move(next);
    }
    return out;
}

namespace {

RationalMatrix shifted(const MultiGraph& g, const Rational& mu, Operator op) {
    auto L = laplacian(g);
    const auto n = g.num_vertices();
    RationalMatrix m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(L[i][j]);
        // L - mu D is congruent to D^{-1/2} L D^{-1/2} - mu I.
        m[i][i] -= op == Operator::standard ? mu : mu * g.degree(i);
    }
    return m;
}

double float_lambda1(const MultiGraph& g, Operator op) {
    auto L = laplacian(g);
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            double v = static_cast<double>(L[i][j]);
            if (op == Operator::normalized) v /= std::sqrt(double(g.degree(i)) * double(g.degree(j)));
            m(i, j) = v;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(1);
}

}  // namespace

int eigenvalues_below(const MultiGraph& g, const Rational& mu, Operator op) {
    return inertia(shifted(g, mu, op)).negative;
}

Rational default_tolerance() { return Rational(Integer(1), Integer(1000000000)); }

EigenvalueEnclosure lambda1(const MultiGraph& g, const Rational& tolerance, Operator op) {
    if (g.num_vertices() < 2) throw PreconditionError("lambda1 needs at least two vertices");
    if (!g.is_connected()) throw PreconditionError("lambda1 needs a connected graph");
    if (tolerance <= 0) throw std::invalid_argument("tolerance must be positive");
    const double seed = float_lambda1(g, op);
    auto count = [&](const Rational& mu) { return eigenvalues_below(g, mu, op); };

    // Small-denominator eigenvalues are certified exactly.
    for (int q = 1; q <= 12; ++q) {
        long long p = std::llround(seed * q);
        if (p <= 0 || std::abs(double(p) / q - seed) > 1e-6 * std::max(1.0, std::abs(seed))) continue;
        Rational mu = make_rational(p, q);
        auto in = inertia(shifted(g, mu, op));
        if (in.zero > 0 && in.negative == 1) return {mu, mu + tolerance, op};
    }

    const double slack = 1e-6 * std::max(1.0, std::abs(seed));
    Rational lo = dyadic(seed - slack), hi = dyadic(seed + slack);
    if (lo <= 0) lo = dyadic(seed / 2);
    if (lo <= 0) lo = Rational(Integer(1), Integer(1) << 40);
    while (count(lo) != 1) lo /= 2;
    while (count(hi) < 2) hi += hi - lo;
    while (hi - lo > tolerance) {
        Rational mid = (lo + hi) / 2;
        if (count(mid) >= 2)
            hi = mid;
        else
            lo = mid;
    }
    return {lo, hi, op};
}

Integer spectral_bound(const Rational& lambda, int max_degree, std::size_t num_vertices) {
    Rational value = lambda / (lambda + 4 * (max_degree + 1)) * Rational(static_cast<long long>(num_vertices));
    return std::max(Integer(1), ceil(value));
}

Integer normalized_spectral_bound(const Rational& lambda, int max_degree, long long volume) {
    Rational value = lambda / (max_degree * lambda + 4 * (max_degree + 1)) * Rational(volume);
    return std::max(Integer(1), ceil(value));
}

Integer sgon_lower_bound(const MultiGraph& g, const Rational& tolerance) {
    auto enc = lambda1(g, tolerance, Operator::standard);
    return spectral_bound(enc.lower, g.max_degree(), g.num_vertices());
}

Integer sgon_lower_bound_normalized(const MultiGraph& g, const Rational& tolerance) {
    auto enc = lambda1(g, tolerance, Operator::normalized);
    return normalized_spectral_bound(enc.lower, g.max_degree(), volume(g));
}

void for_each_subdivision_vector(const MultiGraph& g, int max_per_edge,
                                 const std::function<bool(const std::vector<int>&)>& visit) {
    const std::size_t m = g.num_edges();
    std::vector<long> prev_in_class(m, -1);
    for (std::size_t e = 0; e < m; ++e)
        for (std::size_t f = 0; f < e; ++f) {
            const auto& a = g.edge(e);
            const auto& b = g.edge(f);
            if ((a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u)) prev_in_class[e] = static_cast<long>(f);
        }
    std::vector<int> counts(m, 0);
    bool keep_going = true;
    std::function<void(std::size_t, int)> fill = [&](std::size_t e, int left) {
        if (!keep_going) return;
        if (e == m) {
            if (left == 0) keep_going = visit(counts);
            return;
        }
        int cap = max_per_edge;
        if (prev_in_class[e] >= 0) cap = std::min(cap, counts[prev_in_class[e]]);
        for (int c = std::min(cap, left); c >= 0 && keep_going; --c) {
            if (left - c > max_per_edge * static_cast<int>(m - e - 1)) break;
            counts[e] = c;
            fill(e + 1, left - c);
        }
        counts[e] = 0;
    };
    for (int total = 0; total <= max_per_edge * static_cast<int>(m) && keep_going; ++total) fill(0, total);
}

Integer bound_over_class(const MultiGraph& g, const ClassBudget& budget, const Rational& tolerance) {
    Integer best = sgon_lower_bound(g, tolerance);
    if (budget.max_subdivisions_per_edge <= 0) return best;
    if (g.genus() >= 2) best = std::max(best, sgon_lower_bound(stable_model(g), tolerance));
    std::size_t seen = 0;
    for_each_subdivision_vector(g, budget.max_subdivisions_per_edge, [&](const std::vector<int>& counts) {
        if (seen++ >= budget.max_refinements) return false;
        best = std::max(best, sgon_lower_bound(subdivide_edges(g, counts).graph, tolerance));
        return true;
    });
    return best;
}

std::vector<std::pair<std::string, Integer>> trivial_gon_bounds(const MultiGraph& g, const Rational& tolerance) {
    std::vector<std::pair<std::string, Integer>> out;
    out.emplace_back("edge-connectivity", Integer(edge_connectivity(g)));
    if (g.is_simple() && !g.is_complete()) out.emplace_back("Fiedler", ceil(lambda1(g, tolerance).lower));
    return out;
}

Integer brill_noether_upper(const MultiGraph& g) {
    auto genus = g.genus();
    if (genus < 2) throw PreconditionError("Brill-Noether bound needs genus >= 2");
    return Integer((genus + 3) / 2);
}

Rational points_degree_bound(const MultiGraph& g, const Rational& tolerance) {
    const Rational lambda = lambda1(g, tolerance).lower;
    const long long n = static_cast<long long>(g.num_vertices());
    const long long delta = g.max_degree();
    return (lambda * (n - 1) - 4 * delta - 4) / (2 * lambda + 8 * delta + 8);
}

}  // namespace gonality
