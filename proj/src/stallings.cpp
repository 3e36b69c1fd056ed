#include "hypercrit/stallings.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "hypercrit/errors.hpp"

namespace hypercrit {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

void StallingsGraph::link(int u, Letter l, int v) {
    out_[static_cast<std::size_t>(u)][static_cast<std::size_t>(l)] = v;
    out_[static_cast<std::size_t>(v)][static_cast<std::size_t>(letter_inverse(l))] = u;
}

StallingsGraph StallingsGraph::fold(int rank, const std::vector<Word>& generators) {
    if (rank < 2) throw InvalidInputError("tree model requires rank >= 2");
    // Edge list of the wedge of loops; fold with a union-find.
    struct Edge {
        int u;
        Letter l;
        int v;
    };
    std::vector<Edge> edges;
    int nv = 1;
    for (const Word& g : generators) {
        if (g.min_rank() > rank)
            throw InvalidInputError("generator uses a letter outside the alphabet");
        int prev = 0;
        for (int i = 0; i < g.length(); ++i) {
            int next = (i + 1 == g.length()) ? 0 : nv++;
            edges.push_back({prev, g.letter(i), next});
            prev = next;
        }
    }

    Dsu dsu(nv);
    bool merged = true;
    while (merged) {
        merged = false;
        // (class, letter) -> representative target; a second target folds.
        std::vector<std::vector<int>> seen;
        std::vector<int> touched;
        seen.assign(static_cast<std::size_t>(nv), {});
        for (auto& row : seen) row.assign(static_cast<std::size_t>(alphabet_size(rank)), -1);
        for (const Edge& e : edges) {
            for (int dir = 0; dir < 2; ++dir) {
                int u = dsu.find(dir == 0 ? e.u : e.v);
                Letter l = dir == 0 ? e.l : letter_inverse(e.l);
                int v = dsu.find(dir == 0 ? e.v : e.u);
                int& slot = seen[static_cast<std::size_t>(u)][static_cast<std::size_t>(l)];
                if (slot == -1) {
                    slot = v;
                } else if (dsu.find(slot) != v) {
                    dsu.unite(slot, v);
                    merged = true;
                }
            }
        }
    }

    // Compact classes and materialize the folded adjacency.
    std::vector<int> label(static_cast<std::size_t>(nv), -1);
    int nc = 0;
    for (int v = 0; v < nv; ++v) {
        int r = dsu.find(v);
        if (label[static_cast<std::size_t>(r)] == -1) label[static_cast<std::size_t>(r)] = nc++;
    }
    StallingsGraph g;
    g.rank_ = rank;
    g.out_.assign(static_cast<std::size_t>(nc),
                  std::vector<int>(static_cast<std::size_t>(alphabet_size(rank)), -1));
    for (const Edge& e : edges)
        g.link(label[static_cast<std::size_t>(dsu.find(e.u))], e.l,
               label[static_cast<std::size_t>(dsu.find(e.v))]);

    // Swap the basepoint class to index 0.
    int base = label[static_cast<std::size_t>(dsu.find(0))];
    if (base != 0) {
        std::swap(g.out_[0], g.out_[static_cast<std::size_t>(base)]);
        for (auto& row : g.out_)
            for (int& t : row) {
                if (t == 0)
                    t = base;
                else if (t == base)
                    t = 0;
            }
    }

    // Core: repeatedly strip non-basepoint vertices of degree <= 1.
    bool trimmed = true;
    std::vector<bool> dead(static_cast<std::size_t>(nc), false);
    while (trimmed) {
        trimmed = false;
        for (int v = 1; v < nc; ++v) {
            if (dead[static_cast<std::size_t>(v)] || g.degree(v) > 1) continue;
            for (Letter l = 0; l < alphabet_size(rank); ++l) {
                int w = g.step(v, l);
                if (w != -1) {
                    g.out_[static_cast<std::size_t>(w)][static_cast<std::size_t>(letter_inverse(l))] = -1;
                    g.out_[static_cast<std::size_t>(v)][static_cast<std::size_t>(l)] = -1;
                }
            }
            dead[static_cast<std::size_t>(v)] = true;
            trimmed = true;
        }
    }

    return g.canonicalized();
}

StallingsGraph StallingsGraph::full_group(int rank) {
    if (rank < 2) throw InvalidInputError("tree model requires rank >= 2");
    StallingsGraph g;
    g.rank_ = rank;
    g.out_.assign(1, std::vector<int>(static_cast<std::size_t>(alphabet_size(rank)), 0));
    return g;
}

StallingsGraph StallingsGraph::from_transitions(int rank, std::vector<std::vector<int>> next,
                                                int basepoint) {
    StallingsGraph g;
    g.rank_ = rank;
    g.out_ = std::move(next);
    for (int v = 0; v < g.size(); ++v)
        for (Letter l = 0; l < alphabet_size(rank); ++l) {
            int w = g.step(v, l);
            if (w < 0 || w >= g.size() || g.step(w, letter_inverse(l)) != v)
                throw InvalidInputError("transition table is not involution-consistent");
        }
    if (basepoint != 0) {
        std::swap(g.out_[0], g.out_[static_cast<std::size_t>(basepoint)]);
        for (auto& row : g.out_)
            for (int& t : row) {
                if (t == 0)
                    t = basepoint;
                else if (t == basepoint)
                    t = 0;
            }
    }
    return g.canonicalized();
}

int StallingsGraph::trace(int v, const Word& w) const {
    for (int i = 0; i < w.length() && v != -1; ++i) v = step(v, w.letter(i));
    return v;
}

bool StallingsGraph::accepts(const Word& w) const { return trace(0, w) == 0; }

bool StallingsGraph::is_complete() const {
    for (int v = 0; v < size(); ++v)
        if (degree(v) != alphabet_size(rank_)) return false;
    return true;
}

int StallingsGraph::degree(int v) const {
    int d = 0;
    for (Letter l = 0; l < alphabet_size(rank_); ++l)
        if (step(v, l) != -1) ++d;
    return d;
}

std::vector<Word> StallingsGraph::basis() const {
    // Breadth-first spanning tree; each positive non-tree edge contributes
    // path(base -> u) . l . path(v -> base).
    std::vector<int> parent(static_cast<std::size_t>(size()), -1);
    std::vector<Letter> via(static_cast<std::size_t>(size()), 0);
    std::vector<bool> seen(static_cast<std::size_t>(size()), false);
    std::vector<std::pair<int, Letter>> tree_edges;
    std::deque<int> q{0};
    seen[0] = true;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (Letter l = 0; l < alphabet_size(rank_); ++l) {
            int w = step(v, l);
            if (w == -1 || seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = true;
            parent[static_cast<std::size_t>(w)] = v;
            via[static_cast<std::size_t>(w)] = l;
            tree_edges.push_back({v, l});
            q.push_back(w);
        }
    }
    auto path_from_base = [&](int v) {
        std::vector<Letter> ls;
        while (v != 0) {
            ls.push_back(via[static_cast<std::size_t>(v)]);
            v = parent[static_cast<std::size_t>(v)];
        }
        std::reverse(ls.begin(), ls.end());
        return Word::from_reduced(std::move(ls));
    };
    auto is_tree_edge = [&](int u, Letter l, int v) {
        return (parent[static_cast<std::size_t>(v)] == u && via[static_cast<std::size_t>(v)] == l) ||
               (parent[static_cast<std::size_t>(u)] == v &&
                via[static_cast<std::size_t>(u)] == letter_inverse(l));
    };
    std::vector<Word> gens;
    for (int u = 0; u < size(); ++u) {
        for (Letter l = 0; l < alphabet_size(rank_); l = static_cast<Letter>(l + 2)) {
            int v = step(u, l);
            if (v == -1 || is_tree_edge(u, l, v)) continue;
            Word w = path_from_base(u) * Word::from_reduced({l}) * path_from_base(v).inverse();
            gens.push_back(w);
        }
    }
    return gens;
}

std::vector<int> StallingsGraph::dist_to_base() const {
    std::vector<int> dist(static_cast<std::size_t>(size()), -1);
    std::deque<int> q{0};
    dist[0] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (Letter l = 0; l < alphabet_size(rank_); ++l) {
            int w = step(v, l);
            if (w != -1 && dist[static_cast<std::size_t>(w)] == -1) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

StallingsGraph StallingsGraph::canonicalized() const {
    std::vector<int> label(static_cast<std::size_t>(size()), -1);
    std::vector<int> order;
    label[0] = 0;
    order.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        for (Letter l = 0; l < alphabet_size(rank_); ++l) {
            int w = step(v, l);
            if (w != -1 && label[static_cast<std::size_t>(w)] == -1) {
                label[static_cast<std::size_t>(w)] = static_cast<int>(order.size());
                order.push_back(w);
            }
        }
    }
    StallingsGraph g;
    g.rank_ = rank_;
    g.out_.assign(order.size(),
                  std::vector<int>(static_cast<std::size_t>(alphabet_size(rank_)), -1));
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        for (Letter l = 0; l < alphabet_size(rank_); ++l) {
            int w = step(v, l);
            if (w != -1)
                g.out_[i][static_cast<std::size_t>(l)] = label[static_cast<std::size_t>(w)];
        }
    }
    return g;
}

std::string StallingsGraph::canonical_key() const {
    std::string s = "sg|" + std::to_string(rank_) + "|" + std::to_string(size()) + "|";
    for (const auto& row : out_)
        for (int t : row) {
            s += std::to_string(t);
            s += ',';
        }
    return s;
}

}  // namespace hypercrit
