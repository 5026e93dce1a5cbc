// matching.hpp - maximum cardinality matching in general graphs
#pragma once

#include <queue>
#include <vector>

namespace krho {

/// Blossom-contraction maximum matching, O(V^3). Vertices are 0..n-1.
/// Returns mate[] with -1 for unmatched vertices.
class MaxMatching {
public:
    MaxMatching(int n) : n_(n), adj_(n) {}

    void add_edge(int a, int b) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }

    std::vector<int> solve() {
        mate_.assign(n_, -1);
        for (int v = 0; v < n_; ++v)
            if (mate_[v] == -1) augment_from(v);
        return mate_;
    }

private:
    int lca(int a, int b) {
        std::vector<bool> seen(n_, false);
        for (;;) {
            a = base_[a];
            seen[a] = true;
            if (mate_[a] == -1) break;
            a = parent_[mate_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[mate_[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[v] != b) {
            blossom_[base_[v]] = true;
            blossom_[base_[mate_[v]]] = true;
            parent_[v] = child;
            child = mate_[v];
            v = parent_[mate_[v]];
        }
    }

    int find_augmenting_path(int root) {
        used_.assign(n_, false);
        parent_.assign(n_, -1);
        base_.resize(n_);
        for (int i = 0; i < n_; ++i) base_[i] = i;
        used_[root] = true;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : adj_[v]) {
                if (base_[v] == base_[to] || mate_[v] == to) continue;
                if (to == root || (mate_[to] != -1 && parent_[mate_[to]] != -1)) {
                    // Odd cycle: contract the blossom.
                    int cur_base = lca(v, to);
                    blossom_.assign(n_, false);
                    mark_path(v, cur_base, to);
                    mark_path(to, cur_base, v);
                    for (int i = 0; i < n_; ++i)
                        if (blossom_[base_[i]]) {
                            base_[i] = cur_base;
                            if (!used_[i]) {
                                used_[i] = true;
                                q.push(i);
                            }
                        }
                } else if (parent_[to] == -1) {
                    parent_[to] = v;
                    if (mate_[to] == -1) return to;  // augmenting path found
                    used_[mate_[to]] = true;
                    q.push(mate_[to]);
                }
            }
        }
        return -1;
    }

    void augment_from(int root) {
        int v = find_augmenting_path(root);
        while (v != -1) {
            int pv = parent_[v], ppv = mate_[pv];
            mate_[v] = pv;
            mate_[pv] = v;
            v = ppv;
        }
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> mate_, parent_, base_;
    std::vector<bool> used_, blossom_;
};

}  // namespace krho
