#ifndef CURVELAB_OMEGA_HPP
#define CURVELAB_OMEGA_HPP

#include <array>
#include <vector>

#include "curvelab/curve.hpp"
#include "curvelab/homform.hpp"
#include "curvelab/matrix.hpp"
#include "curvelab/rng.hpp"

namespace curvelab {

// A net of three hypersurfaces, hd+1 marked parameters and a curve incident
// to the first member.  Holds the cached pullbacks that the determinant
// equations and their differentials are read from.
template <class K>
struct OmegaSystem {
    std::array<HomForm<K>, 3> net;  // f0 (vanishing on the curve), f1, f2
    CurveMap<K> curve;

    OmegaSystem() : net{HomForm<K>(1, 0), HomForm<K>(1, 0), HomForm<K>(1, 0)} {}
    std::vector<K> points;  // t_1 .. t_{hd+1}, pairwise distinct
    int point_resamples = 0;

    // cached: value_polys[l] = f_l(c(t)), grad_polys[l][m] = (df_l/dz_m)(c(t))
    std::array<UniPoly<K>, 3> value_polys;
    std::array<std::vector<UniPoly<K>>, 3> grad_polys;

    int n() const { return curve.n; }
    int d() const { return curve.d; }
    int h() const { return net[0].degree(); }
    int coeff_count() const { return (curve.n + 1) * (curve.d + 1); }
};

// Samples the hd+1 points: pairwise distinct, avoiding the zeros of
// f1(c(t)) and f2(c(t)), with the 2x2 value matrix at t_1, t_2 invertible.
template <class K>
OmegaSystem<K> make_omega_system(const CurveMap<K>& curve, const HomForm<K>& f0,
                                 const HomForm<K>& f1, const HomForm<K>& f2, Rng& rng) {
    for (const auto* f : {&f0, &f1, &f2})
        if (f->ambient_dim() != curve.n || f->degree() != f0.degree())
            throw dimension_error("omega net members must share ambient dimension and degree");
    if (!pullback(f0, curve).is_zero())
        throw precondition_error("omega system needs the curve incident to the first net member");

    OmegaSystem<K> sys;
    sys.net = {f0, f1, f2};
    sys.curve = curve;
    for (int l = 0; l < 3; ++l) {
        sys.value_polys[l] = pullback(sys.net[l], curve);
        sys.grad_polys[l].resize(curve.n + 1);
        for (int m = 0; m <= curve.n; ++m)
            sys.grad_polys[l][m] = pullback(sys.net[l].partial(m), curve);
    }

    const int count = f0.degree() * curve.d + 1;
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<K> pts;
        pts.reserve(count);
        while (static_cast<int>(pts.size()) < count) {
            K t = K::random(rng);
            bool fresh = true;
            for (const auto& s : pts)
                if (s == t) { fresh = false; break; }
            if (!fresh) continue;
            if (sys.value_polys[1].eval(t).is_zero() || sys.value_polys[2].eval(t).is_zero()) {
                fresh = false;
            }
            if (fresh) pts.push_back(t);
        }
        const K det2 = sys.value_polys[2].eval(pts[0]) * sys.value_polys[1].eval(pts[1]) -
                       sys.value_polys[2].eval(pts[1]) * sys.value_polys[1].eval(pts[0]);
        if (det2.is_zero()) {
            ++sys.point_resamples;
            continue;
        }
        sys.points = std::move(pts);
        return sys;
    }
    throw degeneracy_error("omega point sampling kept hitting degenerate configurations");
}

namespace omega_detail {

// 3x3 value matrix for index i: rows t_i, t_1, t_2; columns f2, f1, f0.
template <class K>
std::array<std::array<K, 3>, 3> value_matrix(const OmegaSystem<K>& sys, int i) {
    const int count = static_cast<int>(sys.points.size());
    if (i < 3 || i > count) throw precondition_error("determinant index out of range");
    const std::array<K, 3> ts = {sys.points[i - 1], sys.points[0], sys.points[1]};
    std::array<std::array<K, 3>, 3> v;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) v[r][c] = sys.value_polys[2 - c].eval(ts[r]);
    return v;
}

template <class K>
K det3(const std::array<std::array<K, 3>, 3>& v) {
    return v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) -
           v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0]) +
           v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]);
}

}  // namespace omega_detail

// Value at the system's curve of the i-th determinant equation, i = 3..hd+1.
template <class K>
K det_poly(const OmegaSystem<K>& sys, int i) {
    return omega_detail::det3(omega_detail::value_matrix(sys, i));
}

// Gradient of det_poly(., i) with respect to the (n+1)(d+1) curve
// coefficients, by exact cofactor expansion.  Coordinate order is
// component-major: (m, k) -> m*(d+1) + k.
template <class K>
std::vector<K> phi_row(const OmegaSystem<K>& sys, int i) {
    const auto v = omega_detail::value_matrix(sys, i);
    const std::array<K, 3> ts = {sys.points[i - 1], sys.points[0], sys.points[1]};

    std::vector<K> row(sys.coeff_count(), K::zero());
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            const int r1 = (r == 0) ? 1 : 0, r2 = (r == 2) ? 1 : 2;
            const int c1 = (c == 0) ? 1 : 0, c2 = (c == 2) ? 1 : 2;
            K cof = v[r1][c1] * v[r2][c2] - v[r1][c2] * v[r2][c1];
            if ((r + c) % 2 == 1) cof = -cof;
            if (cof.is_zero()) continue;
            const int form = 2 - c;  // column order f2, f1, f0
            // d f_l(c(t_r)) / d c_{m,k} = t_r^k * (df_l/dz_m)(c(t_r))
            for (int m = 0; m <= sys.curve.n; ++m) {
                const K g = sys.grad_polys[form][m].eval(ts[r]);
                if (g.is_zero()) continue;
                K power = K::one();
                for (int k = 0; k <= sys.curve.d; ++k) {
                    row[m * (sys.curve.d + 1) + k] += cof * power * g;
                    power *= ts[r];
                }
            }
        }
    }
    return row;
}

// The (hd-1) x ((n+1)(d+1)) matrix stacking phi_row for i = 3..hd+1.
template <class K>
ExactMatrix<K> omega_matrix(const OmegaSystem<K>& sys) {
    const int count = static_cast<int>(sys.points.size());
    ExactMatrix<K> m(count - 2, sys.coeff_count());
    for (int i = 3; i <= count; ++i) {
        auto row = phi_row(sys, i);
        for (int c = 0; c < m.cols(); ++c) m.at(i - 3, c) = row[c];
    }
    return m;
}

template <class K>
int omega_rank(const OmegaSystem<K>& sys) {
    return omega_matrix(sys).rank();
}

}  // namespace curvelab

#endif
