#ifndef CURVELAB_CECH_HPP
#define CURVELAB_CECH_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "curvelab/linebundle.hpp"
#include "curvelab/matrix.hpp"
#include "curvelab/unipoly.hpp"

namespace curvelab {

// Three-term presentation  O(a) --A--> (+)O(b_i) --B--> O(e)  of a sheaf on
// P^1; the presented sheaf is ker(B)/im(A).  Either side may be absent,
// giving a cokernel-only or kernel-only presentation.  A must be a subbundle
// inclusion and B fiberwise surjective, so the middle homology is a bundle.
template <class K>
struct MonadPresentation {
    bool has_left = false;
    bool has_right = false;
    int left_twist = 0;                 // a
    std::vector<int> middle_twists;     // b_i
    int right_twist = 0;                // e
    std::vector<UniPoly<K>> left_col;   // deg <= b_i - a
    std::vector<UniPoly<K>> right_row;  // deg <= e - b_i

    static MonadPresentation direct_sum(std::vector<int> twists) {
        MonadPresentation m;
        m.middle_twists = std::move(twists);
        return m;
    }
    static MonadPresentation line_bundle(int twist) { return direct_sum({twist}); }

    int presented_rank() const {
        return static_cast<int>(middle_twists.size()) - (has_left ? 1 : 0) - (has_right ? 1 : 0);
    }
    int determinant_degree() const {
        int s = std::accumulate(middle_twists.begin(), middle_twists.end(), 0);
        if (has_left) s -= left_twist;
        if (has_right) s -= right_twist;
        return s;
    }

    LineBundleMap<K> right_map() const {
        if (!has_right) throw precondition_error("monad has no right map");
        return LineBundleMap<K>(middle_twists, {right_twist}, {right_row});
    }
    LineBundleMap<K> left_map() const {
        if (!has_left) throw precondition_error("monad has no left map");
        std::vector<std::vector<UniPoly<K>>> grid;
        grid.reserve(left_col.size());
        for (const auto& e : left_col) grid.push_back({e});
        return LineBundleMap<K>({left_twist}, middle_twists, std::move(grid));
    }
};

// Throws invariant_error naming the first failed monad invariant.
template <class K>
void validate_monad(const MonadPresentation<K>& m, const std::string& context = "") {
    const std::string where = context.empty() ? "" : " (" + context + ")";
    const size_t mid = m.middle_twists.size();
    if (mid == 0) throw invariant_error("monad has empty middle layer" + where);
    if (m.has_left && m.left_col.size() != mid)
        throw invariant_error("monad left column has wrong length" + where);
    if (m.has_right && m.right_row.size() != mid)
        throw invariant_error("monad right row has wrong length" + where);
    if (m.has_left) {
        bool all_zero = true, hits_infinity = false;
        for (size_t i = 0; i < mid; ++i) {
            const int cap = m.middle_twists[i] - m.left_twist;
            if (m.left_col[i].degree() > cap)
                throw invariant_error("monad left entry degree exceeds twist difference" + where);
            if (m.left_col[i].is_zero()) continue;
            all_zero = false;
            if (m.left_col[i].degree() == cap) hits_infinity = true;
        }
        if (all_zero) throw invariant_error("A not a subbundle inclusion: zero column" + where);
        if (!hits_infinity)
            throw invariant_error("A not a subbundle inclusion: common zero at infinity" + where);
        UniPoly<K> g;
        bool have = false;
        for (size_t i = 0; i < mid; ++i) {
            if (m.left_col[i].is_zero()) continue;
            g = have ? gcd_univariate(g, m.left_col[i]) : m.left_col[i];
            have = true;
        }
        if (g.degree() != 0)
            throw invariant_error("A not a subbundle inclusion: entries share a zero" + where);
    }
    if (m.has_right) {
        std::string why;
        if (!fiberwise_surjective(m.right_map(), &why))
            throw invariant_error("B not fiberwise surjective: " + why + where);
    }
    if (m.has_left && m.has_right) {
        UniPoly<K> comp;
        for (size_t i = 0; i < mid; ++i) comp += m.right_row[i] * m.left_col[i];
        if (!comp.is_zero()) throw invariant_error("B o A != 0" + where);
    }
}

namespace cech_detail {

// Chart-0 sections are polynomials of degree <= W, chart-1 sections are
// u^j, j <= W (overlap representative t^{m-j}), overlap sections are Laurent
// monomials t^z, m - W <= z <= W.  Layer windows grow by the map degree so
// every differential is represented without clipping.
struct ObjWindow {
    int twist = 0;
    int W = 0;
    int c0_count() const { return W + 1; }
    int c1_count() const { return W + 1; }
    int laur_lo() const { return twist - W; }
    int laur_count() const { return 2 * W - twist + 1; }
};

struct Layer {
    std::vector<ObjWindow> objs;
    std::vector<int> c0_off, laur_off;
    int c0_total = 0, laur_total = 0;

    void finalize() {
        c0_off.assign(objs.size(), 0);
        laur_off.assign(objs.size(), 0);
        for (size_t i = 0; i < objs.size(); ++i) {
            // the C^0 block of an object holds both charts: [poly part | u part]
            c0_off[i] = c0_total;
            c0_total += objs[i].c0_count() + objs[i].c1_count();
            laur_off[i] = laur_total;
            laur_total += objs[i].laur_count();
        }
    }
    // coordinates of (f0, f1) for object i inside the layer's C^0 block
    int c0_poly(int i, int x) const { return c0_off[i] + x; }
    int c0_u(int i, int j) const { return c0_off[i] + objs[i].c0_count() + j; }
    int laur(int i, int z) const { return laur_off[i] + (z - objs[i].laur_lo()); }
};

}  // namespace cech_detail

// Dimensions of the hypercohomology of the two-chart Cech complex of the
// monad, twisted by O(k): (h0, h1) of the presented sheaf.  The Laurent
// exponent window is chosen from the twist data; when stability_check is set
// the computation is repeated with the window enlarged by 8 and the results
// must agree.
template <class K>
std::pair<int, int> cohomology_dims(const MonadPresentation<K>& m, int k, bool stability_check = true) {
    validate_monad(m);

    const int d_a = [&] {
        int d = 0;
        if (m.has_left)
            for (int b : m.middle_twists) d = std::max(d, b - m.left_twist);
        return d;
    }();
    const int d_b = [&] {
        int d = 0;
        if (m.has_right)
            for (int b : m.middle_twists) d = std::max(d, m.right_twist - b);
        return d;
    }();

    int base = std::abs(k) + d_b + 3 * d_a + 4;
    for (int b : m.middle_twists) base = std::max(base, std::abs(b + k) + 4);
    if (m.has_left) base = std::max(base, std::abs(m.left_twist + k) + 4);
    if (m.has_right) base = std::max(base, std::abs(m.right_twist + k) + 4);

    auto run = [&](int W) -> std::pair<int, int> {
        using cech_detail::Layer;
        using cech_detail::ObjWindow;

        Layer left, middle, right;
        if (m.has_left) left.objs.push_back({m.left_twist + k, W});
        for (int b : m.middle_twists) middle.objs.push_back({b + k, W + d_a});
        if (m.has_right) right.objs.push_back({m.right_twist + k, W + d_a + d_b});
        left.finalize();
        middle.finalize();
        right.finalize();

        const int t_m1 = left.c0_total;
        const int t_0 = left.laur_total + middle.c0_total;
        const int t_1 = middle.laur_total + right.c0_total;
        const int t_2 = right.laur_total;

        // cech differential of one object: C^0 -> C^1 with sign
        auto fill_delta = [](SparseBuilder<K>& M, const Layer& L, int row_base, int col_base,
                             int sign) {
            const K one = K::one();
            for (size_t i = 0; i < L.objs.size(); ++i) {
                const auto& o = L.objs[i];
                for (int x = 0; x <= o.W; ++x)
                    M.add(row_base + L.laur(i, x), col_base + L.c0_poly(i, x),
                          sign > 0 ? one : -one);
                for (int j = 0; j <= o.W; ++j)
                    M.add(row_base + L.laur(i, o.twist - j), col_base + L.c0_u(i, j),
                          sign > 0 ? -one : one);
            }
        };
        // multiplication by entry polynomials, on C^0 coordinates
        auto fill_map_c0 = [](SparseBuilder<K>& M, const Layer& src, const Layer& dst, int row_base,
                              int col_base, int si, int di, const UniPoly<K>& e) {
            const auto& so = src.objs[si];
            const auto& dobj = dst.objs[di];
            const int cap = dobj.twist - so.twist;
            for (int r = 0; r <= e.degree(); ++r) {
                if (e[r].is_zero()) continue;
                for (int x = 0; x <= so.W; ++x)
                    M.add(row_base + dst.c0_poly(di, x + r), col_base + src.c0_poly(si, x), e[r]);
                for (int j = 0; j <= so.W; ++j)
                    M.add(row_base + dst.c0_u(di, j + cap - r), col_base + src.c0_u(si, j), e[r]);
            }
        };
        // multiplication on C^1 (Laurent) coordinates
        auto fill_map_laur = [](SparseBuilder<K>& M, const Layer& src, const Layer& dst,
                                int row_base, int col_base, int si, int di, const UniPoly<K>& e) {
            const auto& so = src.objs[si];
            for (int r = 0; r <= e.degree(); ++r) {
                if (e[r].is_zero()) continue;
                for (int z = so.laur_lo(); z <= so.W; ++z)
                    M.add(row_base + dst.laur(di, z + r), col_base + src.laur(si, z), e[r]);
            }
        };

        // d^{-1}: C^0(left) -> C^1(left) (+) C^0(middle)
        SparseBuilder<K> dm1(t_0, t_m1);
        if (m.has_left) {
            fill_delta(dm1, left, 0, 0, -1);
            for (size_t i = 0; i < m.middle_twists.size(); ++i)
                fill_map_c0(dm1, left, middle, left.laur_total, 0, 0, static_cast<int>(i),
                            m.left_col[i]);
        }

        // d^0: C^1(left) (+) C^0(middle) -> C^1(middle) (+) C^0(right)
        SparseBuilder<K> d0(t_1, t_0);
        if (m.has_left)
            for (size_t i = 0; i < m.middle_twists.size(); ++i)
                fill_map_laur(d0, left, middle, 0, 0, 0, static_cast<int>(i), m.left_col[i]);
        fill_delta(d0, middle, 0, left.laur_total, +1);
        if (m.has_right)
            for (size_t i = 0; i < m.middle_twists.size(); ++i)
                fill_map_c0(d0, middle, right, middle.laur_total, left.laur_total,
                            static_cast<int>(i), 0, m.right_row[i]);

        // d^1: C^1(middle) (+) C^0(right) -> C^1(right)
        SparseBuilder<K> d1(t_2, t_1);
        if (m.has_right) {
            for (size_t i = 0; i < m.middle_twists.size(); ++i)
                fill_map_laur(d1, middle, right, 0, 0, static_cast<int>(i), 0, m.right_row[i]);
            fill_delta(d1, right, 0, middle.laur_total, -1);
        }

        const int r_m1 = m.has_left ? std::move(dm1).rank() : 0;
        const int r0 = std::move(d0).rank();
        const int r1 = m.has_right ? std::move(d1).rank() : 0;

        const int h0 = (t_0 - r0) - r_m1;
        const int h1 = (t_1 - r1) - r0;
        if (h0 < 0 || h1 < 0) throw invariant_error("cech window produced negative dimensions");
        return {h0, h1};
    };

    auto dims = run(base);
    if (stability_check) {
        auto again = run(base + 8);
        if (again != dims)
            throw invariant_error("cech window instability: W and W+8 disagree at twist " +
                                  std::to_string(k));
    }
    return dims;
}

// h0/h1 per twist, the computational route to the splitting type.
struct HilbertTable {
    std::map<int, std::pair<int, int>> at;
};

template <class K>
HilbertTable hilbert_table(const MonadPresentation<K>& m, int k_lo, int k_hi,
                           bool stability_check = false) {
    HilbertTable t;
    for (int k = k_lo; k <= k_hi; ++k) t.at[k] = cohomology_dims(m, k, stability_check);
    return t;
}

// Splitting multiset a_1 >= ... >= a_r of the presented bundle.
struct SplittingType {
    std::vector<int> degrees;  // descending

    int sum() const { return std::accumulate(degrees.begin(), degrees.end(), 0); }
    int max() const {
        if (degrees.empty()) throw precondition_error("empty splitting");
        return degrees.front();
    }
    int min() const {
        if (degrees.empty()) throw precondition_error("empty splitting");
        return degrees.back();
    }
    friend bool operator==(const SplittingType& a, const SplittingType& b) {
        return a.degrees == b.degrees;
    }
    std::string str() const {
        std::string s = "{";
        for (size_t i = 0; i < degrees.size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(degrees[i]);
        }
        return s + "}";
    }
};

// closed form h0 of (+)O(a_i) twisted by k, for oracle tests
inline int split_h0(const std::vector<int>& degs, int k) {
    int s = 0;
    for (int a : degs) s += std::max(0, a + k + 1);
    return s;
}

// Recovers the multiset from first differences of the Hilbert function:
// h0(k) - h0(k-1) counts the summands with a_i >= -k.  The twist window is
// grown adaptively until the differences vanish below and account for the
// full rank above; the result is cross-checked against the determinant
// degree and rank carried by the presentation.
template <class K>
SplittingType splitting_type(const MonadPresentation<K>& m) {
    const int rank = m.presented_rank();
    if (rank <= 0) throw precondition_error("presented sheaf has rank 0");
    const int detdeg = m.determinant_degree();

    int span = 0;
    for (int b : m.middle_twists) span += std::abs(b);
    if (m.has_left) span += std::abs(m.left_twist);
    if (m.has_right) span += std::abs(m.right_twist);
    const int guard = span + 2 * rank + 16;

    auto h0 = [&](int k) { return cohomology_dims(m, k, false).first; };

    int k_lo = 0;
    while (h0(k_lo) > 0) {
        --k_lo;
        if (k_lo < -guard)
            throw invariant_error("splitting scan exhausted the twist window (lower end)");
    }

    std::vector<int> degrees;
    int prev_h0 = 0;
    int prev_diff = 0;
    for (int k = k_lo + 1;; ++k) {
        if (k > guard)
            throw invariant_error("splitting scan exhausted the twist window (upper end)");
        const int cur = h0(k);
        const int diff = cur - prev_h0;
        if (diff < prev_diff || diff > rank)
            throw invariant_error("splitting scan saw a non-monotone Hilbert difference");
        for (int c = 0; c < diff - prev_diff; ++c) degrees.push_back(-k);
        prev_h0 = cur;
        prev_diff = diff;
        if (diff == rank) break;
    }

    std::sort(degrees.begin(), degrees.end(), std::greater<int>());
    SplittingType s{std::move(degrees)};
    if (static_cast<int>(s.degrees.size()) != rank)
        throw invariant_error("splitting multiset size disagrees with rank");
    if (s.sum() != detdeg)
        throw invariant_error("splitting multiset sum disagrees with determinant degree");
    return s;
}

}  // namespace curvelab

#endif
