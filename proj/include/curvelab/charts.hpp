#ifndef CURVELAB_CHARTS_HPP
#define CURVELAB_CHARTS_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "curvelab/rng.hpp"

namespace curvelab {

using cxd = std::complex<double>;

// Quadric with complex coefficients, stored as monomials z_i z_j (i <= j).
struct QuadricC {
    struct Term {
        int i, j;
        cxd coeff;
    };
    std::vector<Term> terms;

    // z_1 * z_2, the specialization with explicit derivative (n = 4)
    static QuadricC product_middle() { return {{{1, 2, cxd(1.0, 0.0)}}}; }
    bool touches(int var) const {
        for (const auto& t : terms)
            if (t.i == var || t.j == var) return true;
        return false;
    }
    cxd eval(const std::vector<cxd>& z) const {
        cxd s = 0.0;
        for (const auto& t : terms) s += t.coeff * z[t.i] * z[t.j];
        return s;
    }
};

// Floating-point chart fixture: every curve component is held in root form
// c_i(t) = r_i prod_j (t - theta_i^j), plus the pencil scalars and the 2d
// zeros of h(c, t).
struct ChartInstance {
    int n = 4;
    int d = 2;
    std::vector<cxd> scales;               // r_0 .. r_n, nonzero
    std::vector<std::vector<cxd>> roots;   // theta_i^j, i = 0..n, j = 1..d
    cxd delta1{1.0, 0.0}, delta2{1.0, 0.0};
    QuadricC q;
    std::vector<cxd> betas;                // 2d roots of h(c, t)
    double root_residual = 0.0;            // max |h(beta_i)| / max coeff
};

// roots of a polynomial (ascending coefficients) by simultaneous iteration;
// empty on non-convergence after max_iter sweeps
std::optional<std::vector<cxd>> durand_kerner(const std::vector<cxd>& coeffs, int max_iter = 200);

std::vector<cxd> component_poly(const ChartInstance& inst, int i);  // expanded c_i
std::vector<cxd> h_poly(const ChartInstance& inst);                 // expanded h(c, t)

// delta1 q(c(t)) + delta2 c_{n-1}(t) c_n(t), evaluated in product form
cxd h_eval(const ChartInstance& inst, cxd t);

// determinant of the 2d x 2d matrix of partials of h(c, beta_l) in the last
// two components' root coordinates, via the product-rule derivative
// dc_i(beta)/dtheta_i^j = -r_i prod_{m != j} (beta - theta_i^m)
cxd chart_jacobian_det(const ChartInstance& inst);

// Exact closed form of that determinant:
//   delta2^{2d} (r_{n-1} r_n)^{2d} prod_{l<m}(beta_m - beta_l)
//                                  prod_{k<k'}(x_k - x_{k'})
// with x the concatenated roots of the last two components.
cxd chart_det_closed_form(const ChartInstance& inst);

// The Vandermonde-minor product expression; exact at d = 1, and recorded
// (ratio and sign only) at d >= 2 where it tracks the determinant up to an
// instance-dependent nonzero factor.
struct MinorProductParts {
    cxd t0, td, pair_product, total;
};
MinorProductParts minor_product_formula(const ChartInstance& inst);

struct ChartInstanceResult {
    bool converged = false;
    bool skipped = false;
    double root_residual = 0.0;
    double closed_form_rel_err = 0.0;  // | |det|/|closed| - 1 |
    cxd det = 0.0;
    cxd minor_product_ratio = 0.0;     // det / minor-product value
    bool nonzero = false;
};

struct ChartReport {
    int requested = 0;
    int converged = 0;
    int skipped = 0;
    int closed_form_pass = 0;  // rel err within 1e-6
    std::vector<ChartInstanceResult> instances;
};

ChartInstance random_chart_instance(int n, int d, Rng& rng, int max_attempts = 50);

// Runs the closed-form ratio check over random instances at (n, d).
ChartReport verify_chart(int instance_count, int n, int d, Rng& rng);

}  // namespace curvelab

#endif
