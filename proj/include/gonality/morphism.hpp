#pragma once

#include "gonality/graph.hpp"
#include "gonality/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gonality {

enum class Variant { finite, caporaso };

struct EdgeImage {
    bool collapsed = false;
    std::size_t target = 0;  // codomain edge, or codomain vertex when collapsed
    int index = 1;           // r(e); 0 exactly when collapsed

    static EdgeImage to_edge(std::size_t edge, int index) { return {false, edge, index}; }
    static EdgeImage to_vertex(std::size_t vertex) { return {true, vertex, 0}; }
};

// Indexed graph morphism between loopless multigraphs. The constructor
// enforces the structural invariants; harmonicity is checked by verify().
class IndexedMorphism {
public:
    IndexedMorphism(MultiGraph domain, MultiGraph codomain, std::vector<std::size_t> vmap,
                    std::vector<EdgeImage> emap, Variant variant = Variant::finite);

    const MultiGraph& domain() const { return domain_; }
    const MultiGraph& codomain() const { return codomain_; }
    const std::vector<std::size_t>& vmap() const { return vmap_; }
    const std::vector<EdgeImage>& emap() const { return emap_; }
    Variant variant() const { return variant_; }

private:
    MultiGraph domain_;
    MultiGraph codomain_;
    std::vector<std::size_t> vmap_;
    std::vector<EdgeImage> emap_;
    Variant variant_;
};

struct HarmonicityViolation {
    std::size_t vertex;
    std::size_t edge_a, edge_b;  // codomain edges at the image vertex
    long long sum_a, sum_b;
};

struct HarmonicityReport {
    bool harmonic = false;
    std::vector<long long> m;  // per domain vertex
    long long degree = 0;
    std::vector<HarmonicityViolation> violations;
    std::vector<std::string> problems;  // degree and surjectivity failures
    bool empty_star_convention = false;  // some m(v) fixed to 1 by convention
    bool non_degenerate = false;         // m(v) >= 1 everywhere
};

HarmonicityReport verify(const IndexedMorphism& phi);
// Throws VerificationError if phi is not harmonic.
long long degree(const IndexedMorphism& phi);

bool is_tree(const MultiGraph& g);

struct RefinedMorphism {
    IndexedMorphism morphism;
    RefinementTrace domain_trace;  // G -> G'
    // (core vertex of G', leaf-material vertex of T') -> its copy in G'.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> leaf_copy;
};

// phi : G -> T finite harmonic, trace : T -> T'. Produces phi' : G' -> T'.
RefinedMorphism refine_codomain(const IndexedMorphism& phi, const RefinementTrace& codomain_trace);

struct DomainRefinedMorphism {
    IndexedMorphism morphism;
    RefinementTrace domain_trace;    // H -> G'
    RefinementTrace codomain_trace;  // T -> T'
};

// phi : G -> T finite harmonic, trace : G -> H. Produces phi' : G' -> T'
// with G' a refinement of H.
DomainRefinedMorphism refine_domain(const IndexedMorphism& phi, const RefinementTrace& domain_trace);

// phi_* of the uniform measure on the given domain vertices.
std::vector<Rational> pushforward(const IndexedMorphism& phi, const std::vector<std::size_t>& origin);

IndexedMorphism identity_morphism(const MultiGraph& g);

}  // namespace gonality
