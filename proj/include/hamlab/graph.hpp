#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hamlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parse failure; line is 1-based within the input document.
struct ParseError : Error {
    ParseError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
    int line;
};

// An operation refused to run because an input exceeds its configured size cap.
struct CapExceeded : Error {
    using Error::Error;
};

// Simple undirected graph on dense vertex labels [0, n).
// No self-loops, no parallel edges. Immutable once built by the factories
// below; safe to share read-only across threads.
class Graph {
  public:
    explicit Graph(int n);

    int vertex_count() const { return n_; }
    int edge_count() const { return edge_count_; }

    // Inserts {u, v}; duplicates are ignored. Throws Error on out-of-range
    // labels or self-loops.
    void add_edge(int u, int v);

    bool has_edge(int u, int v) const;
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    // Edges as (u, v) pairs with u < v, sorted lexicographically.
    std::vector<std::pair<int, int>> edges() const;

    // Canonical edge-list document: "n m" header then one sorted "u v" line
    // per edge. parse_graph(to_edge_list()) round-trips.
    std::string to_edge_list() const;

    bool is_connected() const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && adj_ == other.adj_;
    }

  private:
    int n_ = 0;
    int edge_count_ = 0;
    std::vector<std::vector<int>> adj_;  // sorted ascending
};

// A closed tour: n distinct vertices starting at the start vertex, with the
// closing edge back to the start implied.
struct Circuit {
    std::vector<int> vertices;

    bool operator==(const Circuit& other) const { return vertices == other.vertices; }
};

// Checks the circuit contract: exactly n vertices, first equals start, all
// distinct, consecutive pairs adjacent, and the last vertex adjacent to the
// first. Graphs with fewer than 3 vertices admit no circuit (the closing
// step would reuse an edge or need a self-loop).
bool is_valid_circuit(const Graph& g, const Circuit& c, int start);

// Edge-list format: first non-comment line "n m", then m lines "u v" with
// 0 <= u, v < n and u != v. '#' starts a comment line; blank lines and CRLF
// endings are tolerated. Duplicate edges are merged.
Graph parse_graph(std::string_view text);

// Canonical constructions by name (k3, k4, c5, petersen, ...). Throws Error
// listing the catalog for unknown names.
Graph named_graph(std::string_view name);
std::vector<std::string> named_graph_catalog();

// G(n, p) with a fixed, documented draw scheme: a SplitMix64 stream seeded
// with `seed` produces one 53-bit uniform [0,1) double per vertex pair, pairs
// visited in lexicographic order (0,1), (0,2), ..., (n-2,n-1); the pair is an
// edge iff draw < p. Pure function of (n, p, seed) on any IEEE-754 platform.
Graph generate_erdos_renyi(int n, double p, std::uint64_t seed);

// Cycle 0-1-...-(n-1)-0 plus each non-cycle pair with probability extra_p
// (same draw scheme as generate_erdos_renyi, one draw per non-cycle pair in
// lexicographic order). Hamiltonian by construction. Requires n >= 3.
Graph generate_planted_cycle(int n, double extra_p, std::uint64_t seed);

// Streams all 2^(n(n-1)/2) labeled simple graphs on n vertices in ascending
// edge-bitmask order; bit k of the mask is the k-th vertex pair in
// lexicographic order. Guarded by a cap (default 6) against the 2^21 blowup
// at n = 7; pass a larger cap to override explicitly.
class GraphEnumerator {
  public:
    static constexpr int kDefaultCap = 6;

    explicit GraphEnumerator(int n, int cap = kDefaultCap);

    bool has_next() const { return next_mask_ < total_; }
    Graph next();

    std::uint64_t total() const { return total_; }

    // Pure helper: the graph for one edge bitmask.
    static Graph from_mask(int n, std::uint64_t mask);

  private:
    int n_;
    std::uint64_t next_mask_ = 0;
    std::uint64_t total_;
};

namespace detail {

// splitmix64; the documented generator behind the seeded graph factories.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace detail

}  // namespace hamlab
