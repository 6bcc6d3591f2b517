#include "proxemb/synth.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

#include "proxemb/csv.hpp"
#include "proxemb/rng.hpp"

namespace proxemb {

Shape shape_from_name(const std::string& name) {
    if (name == "house") return Shape::house;
    if (name == "fan") return Shape::fan;
    if (name == "star") return Shape::star;
    throw data_error("unknown shape '" + name +
                     "' (expected house, fan or star)");
}

std::string shape_name(Shape s) {
    switch (s) {
    case Shape::house: return "house";
    case Shape::fan: return "fan";
    case Shape::star: return "star";
    }
    throw data_error("unhandled shape");
}

namespace {

struct ShapeDef {
    int size;
    std::vector<std::array<int, 2>> edges;
    int attach;                   // local node that takes the anchor edge
    std::vector<int> local_roles; // per local node, 0-based
    std::vector<std::string> role_names;
};

ShapeDef shape_def(Shape s) {
    switch (s) {
    case Shape::house:
        // 5-cycle with a chord under the roof: 0 roof, {1,4} mid, {2,3} base
        return {5,
                {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 4}},
                0,
                {0, 1, 2, 2, 1},
                {"house_roof", "house_mid", "house_base"}};
    case Shape::star:
        return {6,
                {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}},
                0,
                {0, 1, 1, 1, 1, 1},
                {"star_hub", "star_leaf"}};
    case Shape::fan:
        // apex joined to a 5-path of leaves: leaf roles mirror around node 3
        return {6,
                {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5},
                 {1, 2}, {2, 3}, {3, 4}, {4, 5}},
                0,
                {0, 1, 2, 3, 2, 1},
                {"fan_apex", "fan_outer", "fan_inner", "fan_middle"}};
    }
    throw data_error("unhandled shape");
}

} // namespace

RoleGraph generate_role_graph(Shape shape, int n_shapes, int cycle_len,
                              double noise_fraction, std::uint64_t seed) {
    if (cycle_len < 3)
        throw data_error("cycle length must be >= 3, got " +
                         std::to_string(cycle_len));
    if (n_shapes < 1)
        throw data_error("shape count must be >= 1, got " +
                         std::to_string(n_shapes));
    if (n_shapes > cycle_len)
        throw data_error("shape count " + std::to_string(n_shapes) +
                         " exceeds cycle length " + std::to_string(cycle_len) +
                         "; anchors would collide");
    if (noise_fraction < 0.0)
        throw data_error("noise fraction must be >= 0, got " +
                         format_double(noise_fraction));

    ShapeDef def = shape_def(shape);
    int n = cycle_len + n_shapes * def.size;

    std::vector<int> anchors(n_shapes);
    for (int i = 0; i < n_shapes; ++i)
        anchors[i] = int(std::int64_t(i) * cycle_len / n_shapes);

    std::vector<std::array<int, 2>> edges;
    for (int i = 0; i < cycle_len; ++i)
        edges.push_back({i, (i + 1) % cycle_len});
    for (int i = 0; i < n_shapes; ++i) {
        int off = cycle_len + i * def.size;
        for (auto [u, v] : def.edges)
            edges.push_back({off + u, off + v});
        edges.push_back({anchors[i], off + def.attach});
    }

    RoleGraph out;
    out.base_edges = int(edges.size());
    out.roles.resize(n);
    out.orbits.resize(n);
    out.role_names = {"cycle_interior", "cycle_near_anchor", "anchor"};
    out.role_names.insert(out.role_names.end(), def.role_names.begin(),
                          def.role_names.end());

    // cycle nodes, bucketed by circular distance to the nearest anchor.
    // distance classes are exact automorphism orbits when the anchors are
    // evenly spaced (n_shapes divides cycle_len).
    for (int i = 0; i < cycle_len; ++i) {
        int dist = cycle_len;
        for (int a : anchors) {
            int straight = std::abs(i - a);
            dist = std::min({dist, straight, cycle_len - straight});
        }
        out.roles[i] = dist == 0 ? 2 : dist == 1 ? 1 : 0;
        out.orbits[i] = 100 + dist;
    }
    for (int i = 0; i < n_shapes; ++i) {
        int off = cycle_len + i * def.size;
        for (int j = 0; j < def.size; ++j) {
            out.roles[off + j] = 3 + def.local_roles[j];
            out.orbits[off + j] = 3 + def.local_roles[j];
        }
    }

    auto key = [](int u, int v) {
        if (u > v) std::swap(u, v);
        return (std::uint64_t(std::uint32_t(u)) << 32) | std::uint32_t(v);
    };
    std::unordered_set<std::uint64_t> present;
    for (auto [u, v] : edges)
        present.insert(key(u, v));

    auto extra = std::int64_t(noise_fraction * double(out.base_edges));
    rng gen(seed);
    std::int64_t attempts_left = 1000 * (extra + 1);
    for (std::int64_t added = 0; added < extra;) {
        if (--attempts_left < 0)
            throw data_error("noise rejection sampling stalled; graph too "
                             "dense for the requested noise fraction");
        int u = int(gen.next_below(std::uint64_t(n)));
        int v = int(gen.next_below(std::uint64_t(n)));
        if (u == v || !present.insert(key(u, v)).second)
            continue;
        edges.push_back({std::min(u, v), std::max(u, v)});
        ++added;
    }

    out.graph = Graph::from_edges(n, std::move(edges));
    return out;
}

} // namespace proxemb
