#include "cpat/errors.hpp"
#include "cpat/solver.hpp"

#include <algorithm>
#include <set>

namespace cpat {

DegenerationFunctional degeneration_functional(const Triangulation& t,
                                               const AngleAssignment& theta,
                                               const std::vector<int>& subset,
                                               std::optional<int> marked_face)
{
    if (marked_face) {
        const Face& mf = t.face(*marked_face);
        for (int v : subset) {
            if (v == mf[0] || v == mf[1] || v == mf[2]) {
                throw Error(ErrorCode::InvalidInput, "subset meets the marked face");
            }
        }
    }
    const VertexSubsetGeometry g = subset_geometry(t, subset);
    DegenerationFunctional d;
    d.subset = g.subset;
    d.euler_char = g.euler_char;
    d.link_size = static_cast<int>(g.link.size());
    double s = 0;
    for (const LinkPair& lp : g.link) s += kPi - theta[lp.edge];
    d.value = -s + 2 * kPi * g.euler_char;
    return d;
}

std::vector<DegenerationFunctional> degeneration_table(const Triangulation& t,
                                                       const AngleAssignment& theta,
                                                       int max_size,
                                                       std::optional<int> marked_face,
                                                       std::size_t cap)
{
    std::vector<char> allowed(t.vertex_count(), 1);
    if (marked_face) {
        for (int v : t.face(*marked_face)) allowed[v] = 0;
    }
    // Grow connected subsets one neighbour at a time, deduplicated as sorted sets.
    std::set<std::vector<int>> all;
    std::vector<std::vector<int>> frontier;
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (allowed[v]) frontier.push_back({v});
    }
    const int limit = std::min(max_size, t.vertex_count() - 1);
    for (int size = 1; size <= limit && !frontier.empty(); ++size) {
        std::set<std::vector<int>> next;
        for (const auto& s : frontier) {
            all.insert(s);
            if (all.size() > cap) {
                throw Error(ErrorCode::LimitExceeded, "too many connected subsets");
            }
            if (size == limit) continue;
            for (int v : s) {
                for (int w : t.neighbors(v)) {
                    if (!allowed[w] || std::binary_search(s.begin(), s.end(), w)) continue;
                    std::vector<int> grown = s;
                    grown.insert(std::upper_bound(grown.begin(), grown.end(), w), w);
                    next.insert(std::move(grown));
                }
            }
        }
        frontier.assign(next.begin(), next.end());
    }
    std::vector<DegenerationFunctional> out;
    out.reserve(all.size());
    for (const auto& s : all) out.push_back(degeneration_functional(t, theta, s, marked_face));
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.subset < b.subset;
    });
    return out;
}

}  // namespace cpat
