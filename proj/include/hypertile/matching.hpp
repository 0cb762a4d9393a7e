#pragma once

#include <limits>
#include <queue>
#include <vector>

namespace hypertile {

// Hopcroft-Karp maximum bipartite matching. Deterministic given the adjacency
// order. Left vertices 0..L-1, right vertices 0..R-1.
class BipartiteMatcher {
public:
    BipartiteMatcher(int left, int right)
        : adj_(static_cast<std::size_t>(left)), right_(right) {}

    void add_edge(int l, int r) { adj_[static_cast<std::size_t>(l)].push_back(r); }

    // Returns match_left[l] = matched right vertex or -1.
    std::vector<int> solve() {
        const int L = static_cast<int>(adj_.size());
        match_left_.assign(static_cast<std::size_t>(L), -1);
        match_right_.assign(static_cast<std::size_t>(right_), -1);
        dist_.assign(static_cast<std::size_t>(L), 0);
        while (bfs()) {
            for (int l = 0; l < L; ++l)
                if (match_left_[static_cast<std::size_t>(l)] < 0) dfs(l);
        }
        return match_left_;
    }

private:
    static constexpr int inf = std::numeric_limits<int>::max();

    bool bfs() {
        std::queue<int> q;
        for (int l = 0; l < static_cast<int>(adj_.size()); ++l) {
            if (match_left_[static_cast<std::size_t>(l)] < 0) {
                dist_[static_cast<std::size_t>(l)] = 0;
                q.push(l);
            } else {
                dist_[static_cast<std::size_t>(l)] = inf;
            }
        }
        bool found = false;
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int r : adj_[static_cast<std::size_t>(l)]) {
                int l2 = match_right_[static_cast<std::size_t>(r)];
                if (l2 < 0) {
                    found = true;
                } else if (dist_[static_cast<std::size_t>(l2)] == inf) {
                    dist_[static_cast<std::size_t>(l2)] = dist_[static_cast<std::size_t>(l)] + 1;
                    q.push(l2);
                }
            }
        }
        return found;
    }

    bool dfs(int l) {
        for (int r : adj_[static_cast<std::size_t>(l)]) {
            int l2 = match_right_[static_cast<std::size_t>(r)];
            if (l2 < 0 || (dist_[static_cast<std::size_t>(l2)] ==
                               dist_[static_cast<std::size_t>(l)] + 1 &&
                           dfs(l2))) {
                match_left_[static_cast<std::size_t>(l)] = r;
                match_right_[static_cast<std::size_t>(r)] = l;
                return true;
            }
        }
        dist_[static_cast<std::size_t>(l)] = inf;
        return false;
    }

    std::vector<std::vector<int>> adj_;
    int right_;
    std::vector<int> match_left_;
    std::vector<int> match_right_;
    std::vector<int> dist_;
};

} // namespace hypertile
