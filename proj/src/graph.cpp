#include "hamlab/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <sstream>

namespace hamlab {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))) {
    if (n < 1) throw Error("graph needs at least one vertex");
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw Error("vertex label out of range [0," + std::to_string(n_) + "): " +
                    std::to_string(u < 0 || u >= n_ ? u : v));
    if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) return;  // duplicate
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edge_count_;
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
    const auto& au = adj_[u];
    return std::binary_search(au.begin(), au.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::string Graph::to_edge_list() const {
    std::ostringstream os;
    os << n_ << ' ' << edge_count_ << '\n';
    for (const auto& [u, v] : edges()) os << u << ' ' << v << '\n';
    return os.str();
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : adj_[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                queue.push_back(v);
            }
    }
    return reached == n_;
}

bool is_valid_circuit(const Graph& g, const Circuit& c, int start) {
    const int n = g.vertex_count();
    if (n < 3) return false;
    if (static_cast<int>(c.vertices.size()) != n) return false;
    if (c.vertices.front() != start) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : c.vertices) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i)
        if (!g.has_edge(c.vertices[i], c.vertices[i + 1])) return false;
    return g.has_edge(c.vertices.back(), c.vertices.front());
}

namespace {

// Strips comments/CR and splits into whitespace-separated fields.
std::vector<std::string> fields_of(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == '#') break;
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

int parse_int(const std::string& tok, int line_no, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line_no, std::string("bad ") + what + " '" + tok + "'");
    return value;
}

}  // namespace

Graph parse_graph(std::string_view text) {
    std::optional<Graph> graph;
    int declared_edges = 0;
    int seen_edges = 0;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        auto toks = fields_of(line);
        if (toks.empty()) continue;

        if (!graph) {
            if (toks.size() != 2) throw ParseError(line_no, "expected header 'n m'");
            int n = parse_int(toks[0], line_no, "vertex count");
            int m = parse_int(toks[1], line_no, "edge count");
            if (n < 1) throw ParseError(line_no, "vertex count must be >= 1");
            if (m < 0) throw ParseError(line_no, "edge count must be >= 0");
            graph.emplace(n);
            declared_edges = m;
            continue;
        }

        if (seen_edges == declared_edges)
            throw ParseError(line_no, "more edge lines than the declared " +
                                          std::to_string(declared_edges));
        if (toks.size() != 2) throw ParseError(line_no, "expected edge line 'u v'");
        int u = parse_int(toks[0], line_no, "vertex label");
        int v = parse_int(toks[1], line_no, "vertex label");
        const int n = graph->vertex_count();
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(line_no, "vertex label out of range [0," + std::to_string(n) + ")");
        if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
        graph->add_edge(u, v);
        ++seen_edges;
    }

    if (!graph) throw ParseError(line_no, "missing 'n m' header");
    if (seen_edges != declared_edges)
        throw ParseError(line_no, "declared " + std::to_string(declared_edges) + " edges, found " +
                                      std::to_string(seen_edges));
    return *std::move(graph);
}

namespace {

Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
    return g;
}

Graph cycle_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
    return g;
}

// Center 0, leaves 1..k.
Graph star_graph(int leaves) {
    Graph g(leaves + 1);
    for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
    return g;
}

// Kneser (5,2) construction: vertices are the 2-subsets of {0..4} in
// lexicographic order, edges join disjoint subsets.
Graph petersen_graph() {
    std::vector<std::pair<int, int>> subsets;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) subsets.emplace_back(a, b);
    Graph g(static_cast<int>(subsets.size()));
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = i + 1; j < subsets.size(); ++j) {
            auto [a, b] = subsets[i];
            auto [c, d] = subsets[j];
            if (a != c && a != d && b != c && b != d)
                g.add_edge(static_cast<int>(i), static_cast<int>(j));
        }
    return g;
}

}  // namespace

std::vector<std::string> named_graph_catalog() {
    return {"k3", "k4", "k5", "k6", "k13", "k33", "p3", "p4",
            "c4", "c5", "c6", "c8", "petersen"};
}

Graph named_graph(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (key == "k3") return complete_graph(3);
    if (key == "k4") return complete_graph(4);
    if (key == "k5") return complete_graph(5);
    if (key == "k6") return complete_graph(6);
    if (key == "k13") return star_graph(3);
    if (key == "k33") return complete_bipartite(3, 3);
    if (key == "p3") return path_graph(3);
    if (key == "p4") return path_graph(4);
    if (key == "c4") return cycle_graph(4);
    if (key == "c5") return cycle_graph(5);
    if (key == "c6") return cycle_graph(6);
    if (key == "c8") return cycle_graph(8);
    if (key == "petersen") return petersen_graph();

    std::string msg = "unknown graph name '" + std::string(name) + "'; catalog:";
    for (const auto& entry : named_graph_catalog()) msg += " " + entry;
    throw Error(msg);
}

Graph generate_erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n < 1) throw Error("generate_erdos_renyi: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw Error("generate_erdos_renyi: p must be in [0,1]");
    Graph g(n);
    detail::SplitMix64 rng{seed};
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_unit() < p) g.add_edge(u, v);
    return g;
}

Graph generate_planted_cycle(int n, double extra_p, std::uint64_t seed) {
    if (n < 3) throw Error("generate_planted_cycle: n must be >= 3");
    if (!(extra_p >= 0.0 && extra_p <= 1.0))
        throw Error("generate_planted_cycle: extra_p must be in [0,1]");
    Graph g(n);
    for (int u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
    detail::SplitMix64 rng{seed};
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool cycle_pair = (v == u + 1) || (u == 0 && v == n - 1);
            if (cycle_pair) continue;  // no draw spent on planted edges
            if (rng.next_unit() < extra_p) g.add_edge(u, v);
        }
    return g;
}

GraphEnumerator::GraphEnumerator(int n, int cap) : n_(n) {
    if (n < 1) throw Error("enumerate_all_graphs: n must be >= 1");
    if (n > cap)
        throw CapExceeded("enumerate_all_graphs: n = " + std::to_string(n) +
                          " exceeds cap " + std::to_string(cap) +
                          " (override the cap to sweep larger spaces)");
    const int pairs = n * (n - 1) / 2;
    if (pairs >= 63) throw CapExceeded("enumerate_all_graphs: bitmask width exceeded");
    total_ = std::uint64_t{1} << pairs;
}

Graph GraphEnumerator::next() {
    if (!has_next()) throw Error("enumerate_all_graphs: exhausted");
    return from_mask(n_, next_mask_++);
}

Graph GraphEnumerator::from_mask(int n, std::uint64_t mask) {
    Graph g(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (mask >> bit & 1) g.add_edge(u, v);
    return g;
}

}  // namespace hamlab
