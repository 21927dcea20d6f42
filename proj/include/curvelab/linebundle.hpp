#ifndef CURVELAB_LINEBUNDLE_HPP
#define CURVELAB_LINEBUNDLE_HPP

#include <string>
#include <vector>

#include "curvelab/matrix.hpp"
#include "curvelab/unipoly.hpp"

namespace curvelab {

// A sheaf map  (+)O(p_i) -> (+)O(q_j)  given by a grid of polynomial entries
// with deg(entry[j][i]) <= q_j - p_i.  Convention: an entry of degree e < q-p
// stands for the binary form s^{q-p-e} * homogenization, so it vanishes at
// infinity (s = 0) to the complementary order.
template <class K>
struct LineBundleMap {
    std::vector<int> source_twists;
    std::vector<int> target_twists;
    std::vector<std::vector<UniPoly<K>>> entries;  // entries[j][i]

    LineBundleMap() = default;
    LineBundleMap(std::vector<int> src, std::vector<int> dst,
                  std::vector<std::vector<UniPoly<K>>> e)
        : source_twists(std::move(src)), target_twists(std::move(dst)), entries(std::move(e)) {
        if (entries.size() != target_twists.size())
            throw dimension_error("LineBundleMap: row count mismatch");
        for (size_t j = 0; j < entries.size(); ++j) {
            if (entries[j].size() != source_twists.size())
                throw dimension_error("LineBundleMap: column count mismatch");
            for (size_t i = 0; i < entries[j].size(); ++i)
                if (entries[j][i].degree() > target_twists[j] - source_twists[i])
                    throw invariant_error("LineBundleMap entry degree exceeds twist difference");
        }
    }

    template <class Rng>
    static LineBundleMap random(const std::vector<int>& src, const std::vector<int>& dst, Rng& rng) {
        std::vector<std::vector<UniPoly<K>>> e(dst.size(), std::vector<UniPoly<K>>(src.size()));
        for (size_t j = 0; j < dst.size(); ++j)
            for (size_t i = 0; i < src.size(); ++i) {
                const int cap = dst[j] - src[i];
                e[j][i] = cap < 0 ? UniPoly<K>() : UniPoly<K>::random(cap, rng);
            }
        return LineBundleMap(src, dst, std::move(e));
    }
};

// Matrix of the induced map H^0((+)O(p_i+k)) -> H^0((+)O(q_j+k)) in the
// monomial bases 1, t, ..., t^(p_i+k) and 1, ..., t^(q_j+k).  Summands with
// negative twist contribute nothing.
template <class K>
ExactMatrix<K> section_matrix(const LineBundleMap<K>& m, int k) {
    std::vector<int> col_off(m.source_twists.size() + 1, 0);
    for (size_t i = 0; i < m.source_twists.size(); ++i)
        col_off[i + 1] = col_off[i] + std::max(0, m.source_twists[i] + k + 1);
    std::vector<int> row_off(m.target_twists.size() + 1, 0);
    for (size_t j = 0; j < m.target_twists.size(); ++j)
        row_off[j + 1] = row_off[j] + std::max(0, m.target_twists[j] + k + 1);

    ExactMatrix<K> out(row_off.back(), col_off.back());
    for (size_t j = 0; j < m.target_twists.size(); ++j) {
        const int rows = m.target_twists[j] + k + 1;
        if (rows <= 0) continue;
        for (size_t i = 0; i < m.source_twists.size(); ++i) {
            const int cols = m.source_twists[i] + k + 1;
            if (cols <= 0) continue;
            const auto& e = m.entries[j][i];
            for (int s = 0; s < cols; ++s)
                for (int r = 0; r <= e.degree(); ++r) {
                    if (s + r >= rows) break;
                    out.at(row_off[j] + s + r, col_off[i] + s) = e[r];
                }
        }
    }
    return out;
}

// For a single-row map: surjective on every fiber of P^1 iff the entries
// have no common zero, counting the point at infinity through the degree
// deficiency.  All-zero input is reported with a diagnostic.
template <class K>
bool fiberwise_surjective(const LineBundleMap<K>& m, std::string* why = nullptr) {
    if (m.target_twists.size() != 1)
        throw precondition_error("fiberwise_surjective expects a single target summand");
    const auto& row = m.entries[0];
    const UniPoly<K>* first = nullptr;
    bool hits_infinity = false;
    for (size_t i = 0; i < row.size(); ++i) {
        if (row[i].is_zero()) continue;
        if (row[i].degree() == m.target_twists[0] - m.source_twists[i]) hits_infinity = true;
        if (!first) first = &row[i];
    }
    if (!first) {
        if (why) *why = "all entries zero";
        return false;
    }
    if (!hits_infinity) {
        if (why) *why = "common zero at infinity";
        return false;
    }
    UniPoly<K> g = *first;
    for (size_t i = 0; i < row.size(); ++i) {
        if (row[i].is_zero() || &row[i] == first) continue;
        g = gcd_univariate(g, row[i]);
        if (g.degree() == 0) return true;
    }
    if (g.degree() != 0) {
        if (why) *why = "common affine zero (gcd degree " + std::to_string(g.degree()) + ")";
        return false;
    }
    return true;
}

}  // namespace curvelab

#endif
