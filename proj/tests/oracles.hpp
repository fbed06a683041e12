#pragma once

// Reference implementations used only by the tests. They share no code with
// the library beyond its data types.

#include <cstddef>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "monocirc/graph.hpp"
#include "monocirc/machine.hpp"

namespace oracles {

// Boolean transitive closure, Warshall style. closure[u][v] holds iff a path
// of length >= 0 leads from u to v.
inline std::vector<std::vector<bool>> closure(const monocirc::Digraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (monocirc::VertexId u = 0; u < n; ++u) {
        r[u][u] = true;
        for (monocirc::VertexId v : g.successors(u)) r[u][v] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!r[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (r[k][j]) r[i][j] = true;
            }
        }
    }
    return r;
}

inline bool is_prime(std::size_t k) {
    if (k < 2) return false;
    for (std::size_t d = 2; d * d <= k; ++d) {
        if (k % d == 0) return false;
    }
    return true;
}

inline std::size_t space_cells(const monocirc::SpaceBound& b, std::size_t n) {
    std::size_t log = 0;
    while ((std::size_t{1} << log) < n + 2) ++log;
    return b.c * log + b.d;
}

// Explores every run of the machine directly from its transition list, with
// configurations kept as plain strings. Returns {accept reachable, reject
// reachable}.
inline std::pair<bool, bool> explore_runs(const monocirc::TuringMachine& m, const std::string& w) {
    using Cfg = std::tuple<std::string, int, int, std::vector<std::string>>;
    const int n = static_cast<int>(w.size());
    const int s = static_cast<int>(space_cells(m.space_bound, w.size()));
    std::set<Cfg> seen;
    std::vector<Cfg> stack{{m.start, 0, 0, std::vector<std::string>(s, "_")}};
    bool acc = false, rej = false;
    while (!stack.empty()) {
        Cfg c = stack.back();
        stack.pop_back();
        if (!seen.insert(c).second) continue;
        const auto& [state, ip, wp, tape] = c;
        acc = acc || state == m.accept;
        rej = rej || state == m.reject;
        const char in = ip < n ? w[ip] : '_';
        for (const auto& t : m.transitions) {
            if (t.from != state || t.in != in || t.read != tape[wp]) continue;
            const int nip = ip + t.din, nwp = wp + t.dwork;
            if (nip < 0 || nip > n || nwp < 0 || nwp >= s) continue;
            auto next_tape = tape;
            next_tape[wp] = t.write;
            stack.emplace_back(t.to, nip, nwp, std::move(next_tape));
        }
    }
    return {acc, rej};
}

inline bool brute_force_accepts(const monocirc::TuringMachine& m, const std::string& w) {
    const auto [acc, rej] = explore_runs(m, w);
    return m.polarity == monocirc::Acceptance::Existential ? acc : !rej;
}

inline std::vector<std::string> all_words(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t r = 0; r < (std::size_t{1} << n); ++r) {
        std::string w(n, '0');
        for (std::size_t j = 0; j < n; ++j) {
            if ((r >> j) & 1u) w[j] = '1';
        }
        out.push_back(w);
    }
    return out;
}

}  // namespace oracles
