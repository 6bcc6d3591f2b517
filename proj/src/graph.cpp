#include "proxemb/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace proxemb {

namespace {

std::uint64_t edge_key(int u, int v) {
    return (std::uint64_t(std::uint32_t(u)) << 32) | std::uint32_t(v);
}

} // namespace

Graph Graph::from_edges(int n, std::vector<std::array<int, 2>> edges,
                        std::vector<double> weights) {
    if (n < 0)
        throw data_error("node count must be non-negative, got " +
                         std::to_string(n));
    if (weights.empty())
        weights.assign(edges.size(), 1.0);
    if (weights.size() != edges.size())
        throw data_error("weight count " + std::to_string(weights.size()) +
                         " does not match edge count " +
                         std::to_string(edges.size()));

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto& [u, v] = edges[i];
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw data_error("edge (" + std::to_string(u) + ", " +
                             std::to_string(v) + ") out of range for n = " +
                             std::to_string(n));
        if (u == v)
            throw data_error("self loop at node " + std::to_string(u));
        if (u > v)
            std::swap(u, v);
        if (!seen.insert(edge_key(u, v)).second)
            throw data_error("duplicate edge (" + std::to_string(u) + ", " +
                             std::to_string(v) + ")");
        if (!(weights[i] > 0.0))
            throw data_error("edge (" + std::to_string(u) + ", " +
                             std::to_string(v) + ") has non-positive weight");
    }

    // sort edges (weights alongside) so construction order never leaks out
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return edges[a] < edges[b];
    });

    Graph g;
    g.n = n;
    g.edges.reserve(edges.size());
    g.weights.reserve(edges.size());
    for (std::size_t i : order) {
        g.edges.push_back(edges[i]);
        g.weights.push_back(weights[i]);
    }
    return g;
}

std::vector<double> Graph::weighted_degrees() const {
    std::vector<double> deg(n, 0.0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        deg[edges[i][0]] += weights[i];
        deg[edges[i][1]] += weights[i];
    }
    return deg;
}

LoadResult load_edge_list(const std::string& path, bool weighted) {
    std::ifstream in(path);
    if (!in)
        throw data_error("cannot open edge list: " + path);

    LoadResult result;
    std::unordered_map<std::string, int> id_of;
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::array<int, 2>> edges;
    std::vector<double> weights;

    auto intern = [&](const std::string& tok) {
        auto [it, fresh] = id_of.emplace(tok, int(id_of.size()));
        if (fresh)
            result.node_ids.push_back(tok);
        return it->second;
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;

        auto fail = [&](const std::string& what) -> data_error {
            return data_error(path + ":" + std::to_string(lineno) + ": " + what);
        };

        double w = 1.0;
        if (weighted) {
            if (tok.size() != 2 && tok.size() != 3)
                throw fail("expected 'u v' or 'u v w', got " +
                           std::to_string(tok.size()) + " fields");
            if (tok.size() == 3) {
                char* end = nullptr;
                w = std::strtod(tok[2].c_str(), &end);
                if (end != tok[2].c_str() + tok[2].size())
                    throw fail("bad weight '" + tok[2] + "'");
                if (!(w > 0.0))
                    throw fail("weight must be positive, got " + tok[2]);
            }
        } else if (tok.size() != 2) {
            throw fail("expected 'u v', got " + std::to_string(tok.size()) +
                       " fields (pass the weighted flag for 'u v w')");
        }

        int u = intern(tok[0]);
        int v = intern(tok[1]);
        if (u == v) {
            ++result.self_loops_dropped;
            continue;
        }
        int a = std::min(u, v), b = std::max(u, v);
        if (!seen.insert(edge_key(a, b)).second) {
            ++result.duplicates_dropped; // keep the first weight seen
            continue;
        }
        edges.push_back({a, b});
        weights.push_back(w);
    }

    result.graph =
        Graph::from_edges(int(id_of.size()), std::move(edges), std::move(weights));
    return result;
}

} // namespace proxemb
