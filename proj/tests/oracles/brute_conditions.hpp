#pragma once

// Exhaustive reference for the combinatorial angle conditions. Works from the
// raw face list only: cycles come from trying every ordering of every vertex
// subset, and sides of a cycle from the rotation system of the faces.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

constexpr double kPi = 3.14159265358979323846;

struct Flags {
    bool c1 = true, c2 = true, c3 = true, c4 = true, m5 = true, g5 = false;
};

class BruteConditions
{
public:
    BruteConditions(int n, std::vector<std::array<int, 3>> faces)
        : n_(n)
        , faces_(std::move(faces))
    {
        for (const auto& f : faces_) {
            for (int k = 0; k < 3; ++k) {
                const int a = f[k];
                const int b = f[(k + 1) % 3];
                const int c = f[(k + 2) % 3];
                adj_.insert(key(a, b));
                // around a, b is followed by c
                next_[{a, b}] = c;
            }
        }
    }

    bool adjacent(int a, int b) const { return adj_.count(key(a, b)) > 0; }

    bool is_face(int a, int b, int c) const
    {
        std::array<int, 3> s{a, b, c};
        std::sort(s.begin(), s.end());
        for (auto f : faces_) {
            std::sort(f.begin(), f.end());
            if (f == s) return true;
        }
        return false;
    }

    /// Vertices off the cycle found next to it on each side.
    std::pair<int, int> side_counts(const std::vector<int>& cyc) const
    {
        const int k = static_cast<int>(cyc.size());
        std::set<int> on(cyc.begin(), cyc.end());
        std::set<int> left;
        std::set<int> right;
        for (int i = 0; i < k; ++i) {
            const int v = cyc[i];
            const int prev = cyc[(i + k - 1) % k];
            const int nxt = cyc[(i + 1) % k];
            for (int x = next_.at({v, nxt}); x != prev; x = next_.at({v, x})) {
                if (!on.count(x)) left.insert(x);
            }
            for (int x = next_.at({v, prev}); x != nxt; x = next_.at({v, x})) {
                if (!on.count(x)) right.insert(x);
            }
        }
        return {static_cast<int>(left.size()), static_cast<int>(right.size())};
    }

    bool separating(const std::vector<int>& cyc) const
    {
        const auto [l, r] = side_counts(cyc);
        return l > 0 && r > 0;
    }

    /// Every simple cycle of length k, each listed once.
    std::vector<std::vector<int>> cycles(int k) const
    {
        std::vector<std::vector<int>> out;
        std::vector<int> pick(k);
        choose(0, 0, k, pick, out);
        return out;
    }

    template <class Theta>
    Flags flags(const Theta& theta, double eps = 1e-12) const
    {
        Flags f;
        // c1, m5, g5
        for (const auto& fc : faces_) {
            const double a = theta(fc[1], fc[2]);
            const double b = theta(fc[0], fc[2]);
            const double c = theta(fc[0], fc[1]);
            if (!(a + b < c + kPi - eps && b + c < a + kPi - eps && c + a < b + kPi - eps)) {
                f.c1 = false;
            }
            const double s = a + b + c;
            if (s < kPi - eps) f.g5 = true;
            if (!(s >= kPi - eps)) f.m5 = false;
        }
        for (int a = 0; a < n_; ++a) {
            for (int b = a + 1; b < n_; ++b) {
                if (adjacent(a, b) && !(theta(a, b) > eps)) f.m5 = false;
            }
        }
        if (n_ <= 4) f.m5 = false;

        // c2 over arcs u-v-w with u, w not adjacent
        bool any_strict = false;
        for (int v = 0; v < n_; ++v) {
            for (int u = 0; u < n_; ++u) {
                for (int w = u + 1; w < n_; ++w) {
                    if (u == v || w == v) continue;
                    if (!adjacent(u, v) || !adjacent(v, w) || adjacent(u, w)) continue;
                    const double s = theta(u, v) + theta(v, w);
                    if (!(s <= kPi + eps)) f.c2 = false;
                    if (s < kPi - eps) any_strict = true;
                }
            }
        }
        if (bipyramid() && !any_strict) f.c2 = false;

        for (const auto& c : cycles(3)) {
            if (is_face(c[0], c[1], c[2]) || !separating(c)) continue;
            if (!(sum(theta, c) < kPi - eps)) f.c3 = false;
        }
        for (const auto& c : cycles(4)) {
            if (!separating(c)) continue;
            if (!(sum(theta, c) < 2 * kPi - eps)) f.c4 = false;
        }
        return f;
    }

    bool bipyramid() const
    {
        if (n_ != 5) return false;
        std::vector<int> deg(n_, 0);
        for (int a = 0; a < n_; ++a) {
            for (int b = 0; b < n_; ++b) deg[a] += (a != b && adjacent(a, b));
        }
        std::vector<int> low;
        for (int v = 0; v < n_; ++v) {
            if (deg[v] == 3) low.push_back(v);
            else if (deg[v] != 4) return false;
        }
        return low.size() == 2 && !adjacent(low[0], low[1]);
    }

private:
    static std::pair<int, int> key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

    template <class Theta>
    static double sum(const Theta& theta, const std::vector<int>& c)
    {
        double s = 0;
        for (std::size_t i = 0; i < c.size(); ++i) s += theta(c[i], c[(i + 1) % c.size()]);
        return s;
    }

    void choose(int start, int depth, int k, std::vector<int>& pick,
                std::vector<std::vector<int>>& out) const
    {
        if (depth == k) {
            // smallest vertex first; each cycle appears twice (two directions)
            std::vector<int> rest(pick.begin() + 1, pick.end());
            std::sort(rest.begin(), rest.end());
            do {
                if (rest.front() > rest.back()) continue;
                std::vector<int> cyc{pick[0]};
                cyc.insert(cyc.end(), rest.begin(), rest.end());
                bool ok = true;
                for (int i = 0; i < k && ok; ++i) ok = adjacent(cyc[i], cyc[(i + 1) % k]);
                if (ok) out.push_back(cyc);
            } while (std::next_permutation(rest.begin(), rest.end()));
            return;
        }
        for (int v = start; v < n_; ++v) {
            pick[depth] = v;
            choose(v + 1, depth + 1, k, pick, out);
        }
    }

    int n_;
    std::vector<std::array<int, 3>> faces_;
    std::set<std::pair<int, int>> adj_;
    std::map<std::pair<int, int>, int> next_;
};

}  // namespace oracle
