#ifndef CURVELAB_INCIDENCE_HPP
#define CURVELAB_INCIDENCE_HPP

#include <vector>

#include "curvelab/curve.hpp"
#include "curvelab/homform.hpp"
#include "curvelab/linebundle.hpp"
#include "curvelab/matrix.hpp"
#include "curvelab/rng.hpp"

namespace curvelab {

// A (curve, hypersurface) pair with c*(f) identically zero, together with
// the sampling provenance needed to audit degenerate rates.
template <class K>
struct IncidentPair {
    CurveMap<K> curve;
    HomForm<K> hypersurface;
    uint64_t seed = 0;
    int curve_resamples = 0;
    int pair_resamples = 0;
    bool basepoint_free = false;
    bool birational = false;
    bool smooth_along_curve = false;

    IncidentPair() : hypersurface(1, 0) {}

    int n() const { return curve.n; }
    int d() const { return curve.d; }
    int h() const { return hypersurface.degree(); }
};

// The row map (+)O(d)^{n+1} -> O(hd) with entries (df/dz_i)(c(t)); its
// section matrix at twist 0 is the incidence Jacobian, and fiberwise
// surjectivity says the curve avoids the singular locus of div(f).
template <class K>
LineBundleMap<K> gradient_row(const HomForm<K>& f, const CurveMap<K>& c) {
    if (f.ambient_dim() != c.n) throw dimension_error("gradient_row: ambient dimensions differ");
    std::vector<UniPoly<K>> row(c.n + 1);
    for (int i = 0; i <= c.n; ++i) row[i] = pullback(f.partial(i), c);
    return LineBundleMap<K>(std::vector<int>(c.n + 1, c.d), {f.degree() * c.d}, {std::move(row)});
}

template <class K>
CurveMap<K> random_curve(int n, int d, Rng& rng, int* resamples = nullptr) {
    if (n < 1 || d < 1) throw precondition_error("random_curve needs n >= 1 and d >= 1");
    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<UniPoly<K>> comps(n + 1);
        for (auto& c : comps) c = UniPoly<K>::random(d, rng);
        CurveMap<K> c;
        try {
            c = CurveMap<K>(n, d, std::move(comps));
        } catch (const math_error&) {
            continue;  // all-zero draw
        }
        if (curve_validity(c, rng).ok()) {
            if (resamples) *resamples = attempt;
            return c;
        }
    }
    throw degeneracy_error("random_curve: 20 consecutive rejections (field too small?)");
}

namespace incidence_detail {

// Enumerates degree-h monomials in the canonical order and hands each one's
// pullback along c to the sink.  Partial products are built down the
// recursion, so the whole pass costs one short multiplication per node.
template <class K, class Fn>
void for_each_monomial_pullback(const CurveMap<K>& c, int h, Fn&& sink) {
    Exponents e(c.n + 1, 0);
    const UniPoly<K> one = UniPoly<K>::constant(K::one());
    // rec(i, rem, prod): exponents of variables < i fixed, prod = their product
    auto rec = [&](auto&& self, int i, int rem, const UniPoly<K>& prod) -> void {
        if (i == c.n) {
            e[i] = static_cast<uint16_t>(rem);
            UniPoly<K> full = prod;
            for (int r = 0; r < rem; ++r) full = full * c.components[i];
            sink(const_cast<const Exponents&>(e), full);
            e[i] = 0;
            return;
        }
        UniPoly<K> running = prod;
        for (int v = 0; v <= rem; ++v) {
            e[i] = static_cast<uint16_t>(v);
            self(self, i + 1, rem - v, running);
            if (v < rem) running = running * c.components[i];
        }
        e[i] = 0;
    };
    rec(rec, 0, h, one);
}

// (hd+1) x C(n+h, n) matrix: column per degree-h monomial, rows the
// coefficients of its pullback.  Kernel = forms vanishing on the curve.
template <class K>
ExactMatrix<K> evaluation_matrix(const CurveMap<K>& c, int h, std::vector<Exponents>* monomials) {
    const int rows = h * c.d + 1;
    const int cols = static_cast<int>(HomForm<K>::monomial_count(c.n, h));
    ExactMatrix<K> m(rows, cols);
    int col = 0;
    for_each_monomial_pullback(c, h, [&](const Exponents& e, const UniPoly<K>& p) {
        if (monomials) monomials->push_back(e);
        for (int r = 0; r <= p.degree(); ++r) m.at(r, col) = p[r];
        ++col;
    });
    if (col != cols) throw invariant_error("monomial enumeration count mismatch");
    return m;
}

}  // namespace incidence_detail

// Basis of the space of degree-h forms containing the curve.
template <class K>
std::vector<HomForm<K>> hypersurfaces_through(const CurveMap<K>& c, int h) {
    const int64_t monos = HomForm<K>::monomial_count(c.n, h);
    if (monos <= static_cast<int64_t>(h) * c.d + 1)
        throw precondition_error("hypersurfaces_through: C(n+h,n) <= hd+1");
    std::vector<Exponents> monomials;
    auto m = incidence_detail::evaluation_matrix(c, h, &monomials);
    auto [rank, kernel] = rank_kernel(m);
    (void)rank;
    if (kernel.empty()) throw degeneracy_error("no degree-h hypersurface contains this curve");
    std::vector<HomForm<K>> basis;
    basis.reserve(kernel.size());
    for (const auto& v : kernel) {
        HomForm<K> f(c.n, h);
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) f.set_coeff(monomials[i], v[i]);
        basis.push_back(std::move(f));
    }
    return basis;
}

// Uniformly random kernel element, without materializing the kernel basis:
// free coordinates of the row echelon form are drawn uniformly and the pivot
// coordinates are solved for.
template <class K>
HomForm<K> random_hypersurface_through(const CurveMap<K>& c, int h, Rng& rng) {
    const int64_t monos = HomForm<K>::monomial_count(c.n, h);
    if (monos <= static_cast<int64_t>(h) * c.d + 1)
        throw precondition_error("sample_incident_pair: C(n+h,n) <= hd+1");
    std::vector<Exponents> monomials;
    auto m = incidence_detail::evaluation_matrix(c, h, &monomials);

    // reduced row echelon form
    const int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<K>> w;
    w.reserve(rows);
    for (int r = 0; r < rows; ++r) w.push_back(m.row(r));
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (!w[r][col].is_zero()) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(w[rank], w[pivot]);
        const K inv = w[rank][col].inv();
        for (int cc = col; cc < cols; ++cc) w[rank][cc] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || w[r][col].is_zero()) continue;
            const K f = w[r][col];
            for (int cc = col; cc < cols; ++cc)
                if (!w[rank][cc].is_zero()) w[r][cc] -= f * w[rank][cc];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int cc : pivot_col) is_pivot[cc] = true;

    std::vector<K> sol(cols, K::zero());
    for (int cc = 0; cc < cols; ++cc)
        if (!is_pivot[cc]) sol[cc] = K::random(rng);
    for (int r = 0; r < rank; ++r) {
        K acc = K::zero();
        for (int cc = pivot_col[r] + 1; cc < cols; ++cc)
            if (!is_pivot[cc] && !w[r][cc].is_zero()) acc += w[r][cc] * sol[cc];
        sol[pivot_col[r]] = -acc;
    }

    HomForm<K> f(c.n, h);
    for (int cc = 0; cc < cols; ++cc)
        if (!sol[cc].is_zero()) f.set_coeff(monomials[cc], sol[cc]);
    if (f.is_zero()) throw degeneracy_error("sampled the zero hypersurface");
    return f;
}

// Random curve plus a random hypersurface through it, accepted only when the
// curve avoids the singular locus of the hypersurface.  The stand-in for a
// generic point of the incidence scheme.
template <class K>
IncidentPair<K> sample_incident_pair(int n, int d, int h, Rng& rng) {
    const int64_t monos = HomForm<K>::monomial_count(n, h);
    if (monos <= static_cast<int64_t>(h) * d + 1)
        throw precondition_error("sample_incident_pair: C(n+h,n) <= hd+1");

    IncidentPair<K> pair;
    pair.seed = rng.seed();
    for (int attempt = 0; attempt < 10; ++attempt) {
        int curve_tries = 0;
        CurveMap<K> c = random_curve<K>(n, d, rng, &curve_tries);
        pair.curve_resamples += curve_tries;
        HomForm<K> f = random_hypersurface_through(c, h, rng);
        if (!pullback(f, c).is_zero())
            throw invariant_error("kernel element does not vanish on the curve");
        std::string why;
        if (!fiberwise_surjective(gradient_row(f, c), &why)) {
            ++pair.pair_resamples;
            continue;
        }
        pair.curve = std::move(c);
        pair.hypersurface = std::move(f);
        pair.basepoint_free = true;
        pair.birational = true;
        pair.smooth_along_curve = true;
        return pair;
    }
    throw degeneracy_error(
        "sample_incident_pair: curve met the singular locus 10 times in a row (n=" +
        std::to_string(n) + " d=" + std::to_string(d) + " h=" + std::to_string(h) +
        " seed=" + std::to_string(pair.seed) + " curve_resamples=" +
        std::to_string(pair.curve_resamples) + "; the seed replays the last fixture)");
}

}  // namespace curvelab

#endif
