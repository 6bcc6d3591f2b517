#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "proxemb/graph.hpp"

namespace proxemb {

enum class Shape { house, fan, star };

Shape shape_from_name(const std::string& name);
std::string shape_name(Shape s);

struct RoleGraph {
    Graph graph;
    std::vector<int> roles;  // clustering / classification ground truth
    std::vector<int> orbits; // automorphism classes of the noiseless graph
    std::vector<std::string> role_names; // role id -> name
    int base_edges = 0;                  // edge count before noise
};

// n_shapes copies of a shape hung off an n-cycle, one anchor edge each, at
// anchors floor(i * cycle_len / n_shapes). roles: cycle nodes split into
// anchor / next-to-anchor / interior, shape nodes by position in the shape.
// noise adds floor(noise_fraction * base_edges) uniform new edges.
RoleGraph generate_role_graph(Shape shape, int n_shapes = 5, int cycle_len = 30,
                              double noise_fraction = 0.0,
                              std::uint64_t seed = 0);

} // namespace proxemb
