#include "hamlab/oracle.hpp"

#include <algorithm>

namespace hamlab {

namespace {

bool hamiltonian_dfs(const Graph& g, int start, std::vector<int>& path,
                     std::vector<char>& visited) {
    const int n = g.vertex_count();
    int here = path.back();
    if (static_cast<int>(path.size()) == n) return g.has_edge(here, start);
    for (int next : g.neighbors(here)) {  // ascending: first hit is lex-smallest
        if (visited[next]) continue;
        visited[next] = 1;
        path.push_back(next);
        if (hamiltonian_dfs(g, start, path, visited)) return true;
        path.pop_back();
        visited[next] = 0;
    }
    return false;
}

void count_dfs(const Graph& g, std::vector<int>& path, std::vector<char>& visited,
               long long& count) {
    const int n = g.vertex_count();
    int here = path.back();
    if (static_cast<int>(path.size()) == n) {
        // Anchor at 0, orient by second < last: counts each cycle orbit once.
        if (path[1] < path.back() && g.has_edge(here, path[0])) ++count;
        return;
    }
    for (int next : g.neighbors(here)) {
        if (visited[next]) continue;
        visited[next] = 1;
        path.push_back(next);
        count_dfs(g, path, visited, count);
        path.pop_back();
        visited[next] = 0;
    }
}

void level_dfs(const Graph& g, int here, int depth, std::vector<char>& visited,
               std::vector<std::vector<char>>& present) {
    present[depth][here] = 1;
    for (int next : g.neighbors(here)) {
        if (visited[next]) continue;
        visited[next] = 1;
        level_dfs(g, next, depth + 1, visited, present);
        visited[next] = 0;
    }
}

bool avoid_dfs(const Graph& g, int here, int target, int remaining,
               std::vector<char>& visited) {
    if (remaining == 0) return here == target;
    for (int next : g.neighbors(here)) {
        if (visited[next]) continue;
        visited[next] = 1;
        bool found = avoid_dfs(g, next, target, remaining - 1, visited);
        visited[next] = 0;
        if (found) return true;
    }
    return false;
}

}  // namespace

std::optional<Circuit> oracle_has_circuit(const Graph& g, int start) {
    const int n = g.vertex_count();
    if (start < 0 || start >= n) throw Error("oracle_has_circuit: start out of range");
    if (n < 3) return std::nullopt;
    std::vector<int> path{start};
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    visited[start] = 1;
    if (!hamiltonian_dfs(g, start, path, visited)) return std::nullopt;
    return Circuit{std::move(path)};
}

long long oracle_count_circuits(const Graph& g, int cap) {
    const int n = g.vertex_count();
    if (n > cap)
        throw CapExceeded("oracle_count_circuits: n = " + std::to_string(n) +
                          " exceeds cap " + std::to_string(cap));
    if (n < 3) return 0;
    std::vector<int> path{0};
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    visited[0] = 1;
    long long count = 0;
    count_dfs(g, path, visited, count);
    return count;
}

LevelSets oracle_level_sets(const Graph& g, int start, int cap) {
    const int n = g.vertex_count();
    if (start < 0 || start >= n) throw Error("oracle_level_sets: start out of range");
    if (n > cap)
        throw CapExceeded("oracle_level_sets: n = " + std::to_string(n) +
                          " exceeds cap " + std::to_string(cap));
    std::vector<std::vector<char>> present(static_cast<std::size_t>(n),
                                           std::vector<char>(static_cast<std::size_t>(n), 0));
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    visited[start] = 1;
    level_dfs(g, start, 0, visited, present);
    LevelSets levels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int v = 0; v < n; ++v)
            if (present[i][v]) levels[i].push_back(v);
    return levels;
}

bool oracle_avoidance(const Graph& g, int start, int target, int path_len, int avoid) {
    const int n = g.vertex_count();
    if (start < 0 || start >= n || target < 0 || target >= n)
        throw Error("oracle_avoidance: vertex out of range");
    if (path_len < 0) return false;
    if (start == avoid || target == avoid) return false;
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    visited[start] = 1;
    if (avoid >= 0 && avoid < n) visited[avoid] = 1;  // never enter the avoided vertex
    return avoid_dfs(g, start, target, path_len, visited);
}

bool level_sets_contain(const LevelSets& outer, const LevelSets& inner) {
    if (outer.size() != inner.size()) return false;
    for (std::size_t i = 0; i < outer.size(); ++i)
        if (!std::includes(outer[i].begin(), outer[i].end(), inner[i].begin(), inner[i].end()))
            return false;
    return true;
}

}  // namespace hamlab
