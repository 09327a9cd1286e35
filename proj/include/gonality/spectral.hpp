#pragma once

#include "gonality/graph.hpp"
#include "gonality/rational.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace gonality {

enum class Operator { standard, normalized };

struct EigenvalueEnclosure {
    Rational lower;
    Rational upper;
    Operator target = Operator::standard;
};

struct Inertia {
    int negative = 0;
    int zero = 0;
    int positive = 0;
};

// Sylvester inertia of a symmetric rational matrix by exact symmetric
// elimination (1x1 pivots, 2x2 pivots when the diagonal vanishes).
Inertia inertia(const RationalMatrix& symmetric);

// Number of eigenvalues strictly below mu of L (standard) or of D^{-1} L.
int eigenvalues_below(const MultiGraph& g, const Rational& mu, Operator op);

Rational default_tolerance();  // 10^-9

EigenvalueEnclosure lambda1(const MultiGraph& g, const Rational& tolerance = default_tolerance(),
                            Operator op = Operator::standard);

// ceil(lambda / (lambda + 4(Delta + 1)) * n), at least 1.
Integer spectral_bound(const Rational& lambda, int max_degree, std::size_t num_vertices);
// ceil(lambda / (Delta lambda + 4(Delta + 1)) * vol), at least 1.
Integer normalized_spectral_bound(const Rational& lambda, int max_degree, long long volume);

Integer sgon_lower_bound(const MultiGraph& g, const Rational& tolerance = default_tolerance());
Integer sgon_lower_bound_normalized(const MultiGraph& g, const Rational& tolerance = default_tolerance());

struct ClassBudget {
    int max_subdivisions_per_edge = 0;
    std::size_t max_refinements = 2000;
};

// Maximum of sgon_lower_bound over canonical subdivision vectors within the
// budget, together with the stable model. Budget 0 gives the plain bound.
Integer bound_over_class(const MultiGraph& g, const ClassBudget& budget,
                         const Rational& tolerance = default_tolerance());

// ("edge-connectivity", eta) always; ("Fiedler", ceil(lambda_lo)) for simple
// non-complete graphs.
std::vector<std::pair<std::string, Integer>> trivial_gon_bounds(const MultiGraph& g,
                                                                const Rational& tolerance = default_tolerance());

Integer brill_noether_upper(const MultiGraph& g);

// (lambda (n-1) - 4 Delta - 4) / (2 lambda + 8 Delta + 8) at lambda_lo.
Rational points_degree_bound(const MultiGraph& g, const Rational& tolerance = default_tolerance());

// Visits canonical subdivision vectors (counts non-increasing within each
// class of parallel edges) in order of increasing total. Stops when visit
// returns false.
void for_each_subdivision_vector(const MultiGraph& g, int max_per_edge,
                                 const std::function<bool(const std::vector<int>&)>& visit);

}  // namespace gonality
