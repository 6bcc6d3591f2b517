#pragma once
#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "proxemb/errors.hpp"

namespace proxemb {

// undirected simple graph over nodes 0..n-1: no self loops, no parallel edges.
// edges are stored canonically (u < v) and sorted, so two graphs with the
// same edge set compare equal structurally no matter the construction order.
struct Graph {
    int n = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<double> weights; // parallel to edges; all positive

    // validates and canonicalizes; empty weights means all 1.0
    static Graph from_edges(int n, std::vector<std::array<int, 2>> edges,
                            std::vector<double> weights = {});

    std::size_t edge_count() const { return edges.size(); }
    std::vector<double> weighted_degrees() const;
};

struct LoadResult {
    Graph graph;
    std::vector<std::string> node_ids; // index -> token from the file
    int self_loops_dropped = 0;
    int duplicates_dropped = 0;
};

// whitespace-separated edge list, one edge per line: "u v" or, when
// weighted, "u v w". '#' starts a comment. node ids are arbitrary tokens,
// numbered by first appearance. self loops are dropped; a repeated edge
// keeps the first weight seen. both drops are counted in the result.
LoadResult load_edge_list(const std::string& path, bool weighted = false);

} // namespace proxemb
