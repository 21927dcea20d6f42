#ifndef CURVELAB_CURVE_HPP
#define CURVELAB_CURVE_HPP

#include <string>
#include <vector>

#include "curvelab/homform.hpp"
#include "curvelab/rng.hpp"
#include "curvelab/unipoly.hpp"

namespace curvelab {

// A degree-d map P^1 -> P^n held as n+1 univariate components of degree <= d.
// Components are implicitly degree-d binary forms: a component of degree
// e < d vanishes at infinity to order d - e.
template <class K>
struct CurveMap {
    int n = 0;
    int d = 0;
    std::vector<UniPoly<K>> components;

    CurveMap() = default;
    CurveMap(int n_, int d_, std::vector<UniPoly<K>> comps) : n(n_), d(d_), components(std::move(comps)) {
        if (n < 1 || d < 0) throw precondition_error("CurveMap needs n >= 1, d >= 0");
        if (static_cast<int>(components.size()) != n + 1)
            throw dimension_error("CurveMap needs n+1 components");
        bool all_zero = true;
        for (const auto& c : components) {
            if (c.degree() > d) throw invariant_error("CurveMap component degree exceeds d");
            if (!c.is_zero()) all_zero = false;
        }
        if (all_zero) throw invariant_error("CurveMap has all components zero");
    }

    // value of the i-th coordinate's degree-d form at infinity (s, t) = (0, 1)
    K leading_at_infinity(int i) const { return components[i][d]; }

    std::vector<K> eval(const K& t) const {
        std::vector<K> p(n + 1);
        for (int i = 0; i <= n; ++i) p[i] = components[i].eval(t);
        return p;
    }

    bool is_constant() const {
        // constant as a projective map: all 2x2 Wronskian-type minors vanish
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (components[i] * components[j].derivative() != components[j] * components[i].derivative())
                    return false;
        return true;
    }

    // gcd of all components is constant, including the point at infinity
    bool basepoint_free() const {
        const UniPoly<K>* first = nullptr;
        bool full_degree = false;
        for (const auto& c : components) {
            if (c.is_zero()) continue;
            if (c.degree() == d) full_degree = true;
            if (!first) first = &c;
        }
        if (!first) return false;
        if (!full_degree) return false;  // common zero at infinity
        UniPoly<K> g = *first;
        for (const auto& c : components) {
            if (&c == first || c.is_zero()) continue;
            g = gcd_univariate(g, c);
            if (g.degree() == 0) return true;
        }
        return g.degree() == 0;
    }
};

// f(c_0(t), ..., c_n(t)); degree <= h*d with equality iff the leading
// coefficient form does not vanish at the curve's point at infinity.
template <class K>
UniPoly<K> pullback(const HomForm<K>& f, const CurveMap<K>& c) {
    if (f.ambient_dim() != c.n) throw dimension_error("pullback: ambient dimensions differ");
    // cache powers c_i^j for 0 <= j <= h
    std::vector<std::vector<UniPoly<K>>> pw(c.n + 1);
    for (int i = 0; i <= c.n; ++i) {
        pw[i].resize(f.degree() + 1);
        pw[i][0] = UniPoly<K>::constant(K::one());
        for (int j = 1; j <= f.degree(); ++j) pw[i][j] = pw[i][j - 1] * c.components[i];
    }
    UniPoly<K> total;
    for (const auto& [e, v] : f.terms()) {
        UniPoly<K> m = UniPoly<K>::constant(v);
        for (int i = 0; i <= c.n; ++i)
            if (e[i] > 0) m = m * pw[i][e[i]];
        total += m;
    }
    return total;
}

enum class CurveDefect { none, constant, basepoint, multiple_cover };

struct CurveValidity {
    CurveDefect defect = CurveDefect::none;
    int cover_degree = 1;

    bool ok() const { return defect == CurveDefect::none; }
    std::string reason() const {
        switch (defect) {
            case CurveDefect::none: return "ok";
            case CurveDefect::constant: return "constant map";
            case CurveDefect::basepoint: return "basepoint (common component zero)";
            case CurveDefect::multiple_cover: return "map_degree=" + std::to_string(cover_degree);
        }
        return "unknown";
    }
};

// Degree of c onto its image by the fiber-counting gcd oracle: for a random
// parameter t0, the common zeros of all c_i(s)c_j(t0) - c_j(s)c_i(t0) form
// the fiber through t0.  A degenerate t0 (the count disagrees across two
// draws) triggers a resample, at most five times.
template <class K>
int map_degree(const CurveMap<K>& c, Rng& rng) {
    if (c.is_constant()) throw precondition_error("map_degree of a constant map");
    if (!c.basepoint_free()) throw precondition_error("map_degree needs a basepoint-free curve");

    auto fiber_count = [&](const K& t0) -> int {
        std::vector<K> vals = c.eval(t0);
        UniPoly<K> g;
        bool have = false;
        for (int i = 0; i <= c.n; ++i)
            for (int j = i + 1; j <= c.n; ++j) {
                UniPoly<K> pij = vals[j] * c.components[i] - vals[i] * c.components[j];
                if (pij.is_zero()) continue;
                g = have ? gcd_univariate(g, pij) : pij;
                have = true;
                if (g.degree() == 1) return 1;
            }
        if (!have) throw precondition_error("map_degree of a constant map");
        return g.degree();
    };

    for (int attempt = 0; attempt < 5; ++attempt) {
        const K t0 = K::random(rng);
        const K t1 = K::random(rng);
        if (t0 == t1) continue;
        const int k0 = fiber_count(t0);
        const int k1 = fiber_count(t1);
        if (k0 == k1 && k0 >= 1) return k0;
    }
    throw degeneracy_error("map_degree: fiber count unstable after 5 parameter resamples");
}

template <class K>
CurveValidity curve_validity(const CurveMap<K>& c, Rng& rng) {
    CurveValidity v;
    if (c.is_constant()) {
        v.defect = CurveDefect::constant;
        return v;
    }
    if (!c.basepoint_free()) {
        v.defect = CurveDefect::basepoint;
        return v;
    }
    v.cover_degree = map_degree(c, rng);
    if (v.cover_degree != 1) v.defect = CurveDefect::multiple_cover;
    return v;
}

}  // namespace curvelab

#endif
