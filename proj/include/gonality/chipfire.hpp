#pragma once

#include "gonality/graph.hpp"

#include <optional>
#include <vector>

namespace gonality {

// Chip configuration indexed like the vertices of its graph.
struct Divisor {
    std::vector<long long> chips;

    long long degree() const;
    bool is_effective() const;
    friend bool operator==(const Divisor&, const Divisor&) = default;
    friend auto operator<=>(const Divisor&, const Divisor&) = default;
};

Divisor make_divisor(const MultiGraph& g, const std::vector<VertexId>& multiset);

// Every vertex of S sends one chip along each edge leaving S.
Divisor fire(const MultiGraph& g, const Divisor& d, const std::vector<std::size_t>& set);

// The unique q-reduced divisor equivalent to d.
Divisor q_reduce(const MultiGraph& g, const Divisor& d, std::size_t q);

bool is_q_reduced(const MultiGraph& g, const Divisor& d, std::size_t q);

// Rank at least 1: d - q is equivalent to an effective divisor for every q.
bool has_positive_rank(const MultiGraph& g, const Divisor& d);

struct DgonResult {
    std::optional<int> value;  // nullopt: exceeded max_d
    std::optional<Divisor> witness;
    int max_d = 0;
};

// Default max_d is |V|, which always suffices.
DgonResult divisorial_gonality(const MultiGraph& g, std::optional<int> max_d = std::nullopt);

}  // namespace gonality
