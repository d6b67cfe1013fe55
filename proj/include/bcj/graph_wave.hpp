#pragma once

#include <map>
#include <set>

#include "core.hpp"

namespace bcj {

struct GraphVertex {
    int id;
    bool boundary;
};

// Samples j = 0..n along the edge; slot 0 sits on `from`, slot n on `to`.
struct GraphEdge {
    int from;
    int to;
    int n;
};

class GraphSpec {
public:
    struct Incidence {
        int edge;
        int slot;      // 0 or n
        int neighbor;  // 1 or n-1, the adjacent sample on this edge
    };

    GraphSpec(std::vector<GraphVertex> vertices, std::vector<GraphEdge> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges))
    {
        if (vertices_.empty() || edges_.empty())
            throw DomainError("GraphSpec: need at least one vertex and one edge");
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (index_.count(vertices_[i].id))
                throw DomainError("GraphSpec: duplicate vertex id");
            index_[vertices_[i].id] = static_cast<int>(i);
        }
        inc_.resize(vertices_.size());
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const auto& ed = edges_[e];
            if (ed.n < 1)
                throw DomainError("GraphSpec: edges need n >= 1");
            if (!index_.count(ed.from) || !index_.count(ed.to) || ed.from == ed.to)
                throw DomainError("GraphSpec: bad edge endpoints");
            inc_[index_[ed.from]].push_back({static_cast<int>(e), 0, 1});
            inc_[index_[ed.to]].push_back({static_cast<int>(e), ed.n, ed.n - 1});
        }
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            if (inc_[v].empty())
                throw DomainError("GraphSpec: isolated vertex");
            if (vertices_[v].boundary && inc_[v].size() != 1)
                throw DomainError("GraphSpec: boundary vertices must have degree 1");
        }
        std::set<int> seen{0};
        std::vector<int> stack{0};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& in : inc_[v]) {
                const auto& ed = edges_[in.edge];
                int w = index_[in.slot == 0 ? ed.to : ed.from];
                if (seen.insert(w).second)
                    stack.push_back(w);
            }
        }
        if (seen.size() != vertices_.size())
            throw DomainError("GraphSpec: graph is not connected");
    }

    const std::vector<GraphVertex>& vertices() const { return vertices_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const std::vector<Incidence>& incidences(int vertex_index) const { return inc_[vertex_index]; }
    int degree(int vertex_index) const { return static_cast<int>(inc_[vertex_index].size()); }
    int index_of(int id) const
    {
        auto it = index_.find(id);
        if (it == index_.end())
            throw DomainError("GraphSpec: unknown vertex id " + std::to_string(id));
        return it->second;
    }

    // Path with `n` intervals between boundary vertices 0 and 1.
    static GraphSpec path(int n) { return GraphSpec({{0, true}, {1, true}}, {{0, 1, n}}); }

    // Star with boundary leaves 1..k joined at internal vertex 0.
    static GraphSpec star(const std::vector<int>& lengths)
    {
        std::vector<GraphVertex> vs{{0, false}};
        std::vector<GraphEdge> es;
        for (std::size_t i = 0; i < lengths.size(); ++i) {
            vs.push_back({static_cast<int>(i) + 1, true});
            es.push_back({static_cast<int>(i) + 1, 0, lengths[i]});
        }
        return GraphSpec(vs, es);
    }

private:
    std::vector<GraphVertex> vertices_;
    std::vector<GraphEdge> edges_;
    std::map<int, int> index_;
    std::vector<std::vector<Incidence>> inc_;
};

// Per-edge samples u^i_{j,t} for t = -1..T, stored at column t + 1.
struct GraphField {
    std::vector<Mat<double>> u;
    std::map<int, std::vector<double>> controls;  // boundary vertex id -> f(t), index = t
    int T = 0;

    double operator()(int edge, int j, int t) const { return u[edge](j, t + 1); }
};

namespace detail {

inline double control_at(const std::map<int, std::vector<double>>& c, int id, int t)
{
    auto it = c.find(id);
    if (it == c.end() || t < 0 || t >= static_cast<int>(it->second.size()))
        return 0.0;
    return it->second[t];
}

}  // namespace detail

inline GraphField empty_field(const GraphSpec& g, const std::map<int, std::vector<double>>& controls, int T)
{
    GraphField f;
    f.T = T;
    f.controls = controls;
    for (const auto& e : g.edges())
        f.u.push_back(Mat<double>::Zero(e.n + 1, T + 2));
    return f;
}

// Advance from t to t + 1.
inline void step(const GraphSpec& g, GraphField& f, int t)
{
    if (t < 0 || t >= f.T)
        throw DomainError("step: t out of range");
    const int c = t + 1;  // column of time t
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        auto& U = f.u[e];
        for (int j = 1; j < g.edges()[e].n; ++j)
            U(j, c + 1) = U(j + 1, c) + U(j - 1, c) - U(j, c - 1);
    }
    for (std::size_t v = 0; v < g.vertices().size(); ++v) {
        const auto& inc = g.incidences(static_cast<int>(v));
        double x;
        if (g.vertices()[v].boundary) {
            x = detail::control_at(f.controls, g.vertices()[v].id, t + 1);
        } else {
            const double p = static_cast<double>(inc.size());
            double s = 0.0;
            for (const auto& in : inc)
                s += f.u[in.edge](in.neighbor, c);
            x = 2.0 / p * s - f.u[inc[0].edge](inc[0].slot, c - 1);
        }
        for (const auto& in : inc)
            f.u[in.edge](in.slot, c + 1) = x;
    }
}

// Controls apply at t >= 1; u(., 0) = u(., -1) = 0.
inline GraphField simulate(const GraphSpec& g, const std::map<int, std::vector<double>>& controls, int T)
{
    for (const auto& [id, f] : controls) {
        int v = g.index_of(id);
        if (!g.vertices()[v].boundary)
            throw DomainError("simulate: controls are only allowed at boundary vertices");
        if (static_cast<int>(f.size()) > T + 1)
            throw DomainError("simulate: control longer than T + 1");
        if (!f.empty() && f[0] != 0.0)
            throw DomainError("simulate: control must vanish at t = 0");
    }
    GraphField f = empty_field(g, controls, T);
    for (int t = 0; t < T; ++t)
        step(g, f, t);
    return f;
}

struct Energies {
    double kinetic = 0.0;
    double potential = 0.0;
    double total() const { return kinetic + potential; }
};

// Kinetic: 1/2 sum of squared time differences over interior points and
// vertices (weight 1 each); potential: 1/2 sum of squared spatial differences
// over edges, both at time t.
inline Energies energies(const GraphSpec& g, const GraphField& f, int t)
{
    if (t < 0 || t > f.T)
        throw DomainError("energies: t out of range");
    const int c = t + 1;
    Energies E;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const auto& U = f.u[e];
        const int n = g.edges()[e].n;
        for (int j = 1; j < n; ++j) {
            double d = U(j, c) - U(j, c - 1);
            E.kinetic += 0.5 * d * d;
        }
        for (int j = 1; j <= n; ++j) {
            double d = U(j, c) - U(j - 1, c);
            E.potential += 0.5 * d * d;
        }
    }
    for (std::size_t v = 0; v < g.vertices().size(); ++v) {
        const auto& in = g.incidences(static_cast<int>(v))[0];
        double d = f.u[in.edge](in.slot, c) - f.u[in.edge](in.slot, c - 1);
        E.kinetic += 0.5 * d * d;
    }
    return E;
}

// The quantity the vertex rule actually conserves once the controls are off:
// internal vertices carry mass p/2, the potential pairs spatial differences at
// t and t - 1, boundary vertices are excluded.
inline double conserved_energy(const GraphSpec& g, const GraphField& f, int t)
{
    if (t < 0 || t > f.T)
        throw DomainError("conserved_energy: t out of range");
    const int c = t + 1;
    double E = 0.0;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const auto& U = f.u[e];
        const int n = g.edges()[e].n;
        for (int j = 1; j < n; ++j) {
            double d = U(j, c) - U(j, c - 1);
            E += 0.5 * d * d;
        }
        for (int j = 1; j <= n; ++j)
            E += 0.5 * (U(j, c) - U(j - 1, c)) * (U(j, c - 1) - U(j - 1, c - 1));
    }
    for (std::size_t v = 0; v < g.vertices().size(); ++v) {
        if (g.vertices()[v].boundary)
            continue;
        const auto& in = g.incidences(static_cast<int>(v))[0];
        double d = f.u[in.edge](in.slot, c) - f.u[in.edge](in.slot, c - 1);
        E += 0.5 * (0.5 * g.degree(static_cast<int>(v))) * d * d;
    }
    return E;
}

}  // namespace bcj
