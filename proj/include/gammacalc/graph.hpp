#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gammacalc {

/// Finite simple undirected graph with string vertex identifiers.
/// Adjacency is symmetric, loop-free, and every vertex has degree >= 1,
/// so the normalized vertex measure mu_x = 1/d_x is always defined.
/// Immutable after construction; safe to share across threads.
class Graph {
public:
    static Graph from_edges(const std::vector<std::pair<std::string, std::string>>& edges) {
        Graph g;
        std::map<std::string, std::set<std::string>> adj;
        for (const auto& [u, v] : edges) {
            if (u == v) throw std::invalid_argument("self-loop '" + u + " " + v + "' rejected");
            adj[u].insert(v);
            adj[v].insert(u);
        }
        if (adj.empty()) throw std::invalid_argument("empty graph rejected");
        g.ids_.reserve(adj.size());
        for (const auto& [id, _] : adj) {
            g.index_.emplace(id, static_cast<int>(g.ids_.size()));
            g.ids_.push_back(id);
        }
        g.adj_.resize(g.ids_.size());
        for (const auto& [id, nbrs] : adj) {
            auto& row = g.adj_[static_cast<std::size_t>(g.index_.at(id))];
            row.reserve(nbrs.size());
            for (const auto& n : nbrs) row.push_back(g.index_.at(n));
        }
        return g;
    }

    /// Parses an edge-list document: one `u v` per line, `#` starts a comment,
    /// a single-token line declares a vertex (which must still gain an edge).
    static Graph from_edge_list(const std::string& text) {
        std::vector<std::pair<std::string, std::string>> edges;
        std::vector<std::pair<std::string, int>> declared;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream toks(line);
            std::vector<std::string> t;
            std::string w;
            while (toks >> w) t.push_back(w);
            if (t.empty()) continue;
            if (t.size() == 1) {
                declared.emplace_back(t[0], lineno);
            } else if (t.size() == 2) {
                if (t[0] == t[1])
                    throw std::invalid_argument("line " + std::to_string(lineno) + ": self-loop '" +
                                                t[0] + " " + t[1] + "' rejected");
                edges.emplace_back(t[0], t[1]);
            } else {
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": expected 'u v', got " + std::to_string(t.size()) +
                                            " tokens");
            }
        }
        if (edges.empty()) throw std::invalid_argument("empty graph rejected (no edges)");
        Graph g = from_edges(edges);
        for (const auto& [id, ln] : declared) {
            if (!g.contains(id))
                throw std::invalid_argument("line " + std::to_string(ln) + ": vertex '" + id +
                                            "' declared but isolated (degree 0)");
        }
        return g;
    }

    const std::vector<std::string>& vertices() const { return ids_; }
    std::size_t vertex_count() const { return ids_.size(); }

    bool contains(const std::string& id) const { return index_.count(id) != 0; }

    int index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw std::invalid_argument("unknown vertex '" + id + "'");
        return it->second;
    }

    const std::string& id_of(int i) const { return ids_[static_cast<std::size_t>(i)]; }

    const std::vector<int>& neighbors(int i) const { return adj_[static_cast<std::size_t>(i)]; }

    int degree(int i) const { return static_cast<int>(adj_[static_cast<std::size_t>(i)].size()); }

    /// Normalized vertex measure mu_x = 1/d_x.
    double mu(int i) const { return 1.0 / static_cast<double>(degree(i)); }

    bool has_edge(const std::string& u, const std::string& v) const {
        int ui = index_of(u), vi = index_of(v);
        const auto& row = neighbors(ui);
        return std::find(row.begin(), row.end(), vi) != row.end();
    }

    /// Closed metric ball of radius r in {0,1,2} around `center`:
    /// center first, remaining vertices sorted by identifier.
    std::vector<std::string> ball(const std::string& center, int radius) const {
        if (radius < 0 || radius > 2)
            throw std::invalid_argument("ball radius must be 0, 1 or 2, got " +
                                        std::to_string(radius));
        int c = index_of(center);
        std::set<int> seen{c};
        if (radius >= 1) {
            for (int y : neighbors(c)) {
                seen.insert(y);
                if (radius >= 2)
                    for (int z : neighbors(y)) seen.insert(z);
            }
        }
        std::vector<std::string> out;
        out.reserve(seen.size());
        out.push_back(center);
        for (int i : seen)
            if (i != c) out.push_back(id_of(i));
        std::sort(out.begin() + 1, out.end());
        return out;
    }

    /// Canonical edge-list form: `u v` with u < v, lines sorted.
    std::string to_edge_list() const {
        std::vector<std::string> lines;
        for (std::size_t i = 0; i < ids_.size(); ++i)
            for (int j : adj_[i])
                if (static_cast<int>(i) < j) lines.push_back(ids_[i] + " " + id_of(j));
        std::sort(lines.begin(), lines.end());
        std::string out;
        for (const auto& l : lines) {
            out += l;
            out += '\n';
        }
        return out;
    }

private:
    Graph() = default;
    std::vector<std::string> ids_;       // sorted
    std::map<std::string, int> index_;
    std::vector<std::vector<int>> adj_;  // sorted neighbor indices
};

/// Real-valued assignment on vertices. Holds values independently of any
/// graph; operators reject evaluation at a vertex with no value. Partial
/// functions are legal as intermediates (e.g. Gamma(f)/f on a ball).
class VertexFunction {
public:
    VertexFunction() = default;

    static VertexFunction constant(const Graph& g, double c) {
        VertexFunction f;
        for (const auto& v : g.vertices()) f.values_[v] = c;
        return f;
    }

    /// Parses `vertex value` lines and validates totality against g.
    static VertexFunction parse(const std::string& text, const Graph& g) {
        VertexFunction f;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream toks(line);
            std::vector<std::string> t;
            std::string w;
            while (toks >> w) t.push_back(w);
            if (t.empty()) continue;
            if (t.size() != 2)
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": expected 'vertex value'");
            if (!g.contains(t[0]))
                throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown vertex '" +
                                            t[0] + "'");
            if (f.values_.count(t[0]))
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": duplicate value for vertex '" + t[0] + "'");
            double v;
            std::size_t used = 0;
            try {
                v = std::stod(t[1], &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": cannot parse value '" + t[1] + "' for vertex '" +
                                            t[0] + "'");
            }
            if (used != t[1].size())
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": trailing characters in value '" + t[1] + "'");
            if (!std::isfinite(v))
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": non-finite value for vertex '" + t[0] + "'");
            f.values_[t[0]] = v;
        }
        for (const auto& v : g.vertices())
            if (!f.values_.count(v))
                throw std::invalid_argument("vertex '" + v + "' missing from function file");
        return f;
    }

    void set(const std::string& id, double v) { values_[id] = v; }

    bool has(const std::string& id) const { return values_.count(id) != 0; }

    double at(const std::string& id) const {
        auto it = values_.find(id);
        if (it == values_.end())
            throw std::invalid_argument("function undefined at vertex '" + id + "'");
        return it->second;
    }

    bool total_on(const Graph& g) const {
        for (const auto& v : g.vertices())
            if (!values_.count(v)) return false;
        return true;
    }

    const std::map<std::string, double>& values() const { return values_; }

    /// `vertex value` lines with full double precision (exact replay).
    std::string to_assignment_text() const {
        std::string out;
        char buf[64];
        for (const auto& [id, v] : values_) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out += id;
            out += ' ';
            out += buf;
            out += '\n';
        }
        return out;
    }

private:
    std::map<std::string, double> values_;
};

/// The difference in valuations f(x,y) = f(y) - f(x).
inline double diff(const VertexFunction& f, const std::string& x, const std::string& y) {
    return f.at(y) - f.at(x);
}

}  // namespace gammacalc
