#include "curvelab/charts.hpp"

#include <algorithm>
#include <cmath>

#include "curvelab/field.hpp"

namespace curvelab {

namespace {

double rand_unit(Rng& rng) { return static_cast<double>(rng.next() >> 11) * 0x1.0p-53; }

cxd rand_complex(Rng& rng) {
    // annulus-ish sample, bounded away from 0
    const double r = 0.3 + 1.2 * rand_unit(rng);
    const double phi = 2.0 * M_PI * rand_unit(rng);
    return cxd(r * std::cos(phi), r * std::sin(phi));
}

std::vector<cxd> mul(const std::vector<cxd>& a, const std::vector<cxd>& b) {
    std::vector<cxd> out(a.size() + b.size() - 1, cxd(0.0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

cxd horner(const std::vector<cxd>& c, cxd t) {
    cxd r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + *it;
    return r;
}

// determinant by LU with partial pivoting
cxd det_lu(std::vector<std::vector<cxd>> a) {
    const int n = static_cast<int>(a.size());
    cxd det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) == 0.0) return 0.0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < n; ++r) {
            const cxd f = a[r][col] / a[col][col];
            if (f == cxd(0.0)) continue;
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

}  // namespace

std::optional<std::vector<cxd>> durand_kerner(const std::vector<cxd>& coeffs, int max_iter) {
    if (coeffs.size() < 2) throw precondition_error("root finding needs degree >= 1");
    const int deg = static_cast<int>(coeffs.size()) - 1;
    const cxd lead = coeffs.back();
    if (std::abs(lead) == 0.0) throw precondition_error("leading coefficient is zero");
    std::vector<cxd> monic(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) monic[i] = coeffs[i] / lead;

    std::vector<cxd> z(deg);
    const cxd seed(0.4, 0.9);
    cxd p = 1.0;
    for (int i = 0; i < deg; ++i) {
        p *= seed;
        z[i] = p;
    }
    for (int iter = 0; iter < max_iter; ++iter) {
        double step = 0.0;
        for (int i = 0; i < deg; ++i) {
            cxd denom = 1.0;
            for (int j = 0; j < deg; ++j)
                if (j != i) denom *= z[i] - z[j];
            if (std::abs(denom) == 0.0) return std::nullopt;
            const cxd dz = horner(monic, z[i]) / denom;
            z[i] -= dz;
            step = std::max(step, std::abs(dz));
        }
        if (step < 1e-14) return z;
    }
    return std::nullopt;
}

std::vector<cxd> component_poly(const ChartInstance& inst, int i) {
    std::vector<cxd> p{inst.scales[i]};
    for (cxd th : inst.roots[i]) p = mul(p, {-th, cxd(1.0)});
    return p;
}

std::vector<cxd> h_poly(const ChartInstance& inst) {
    std::vector<std::vector<cxd>> comp(inst.n + 1);
    for (int i = 0; i <= inst.n; ++i) comp[i] = component_poly(inst, i);
    std::vector<cxd> acc(2 * inst.d + 1, cxd(0.0));
    for (const auto& term : inst.q.terms) {
        auto prod = mul(comp[term.i], comp[term.j]);
        for (size_t k = 0; k < prod.size(); ++k) acc[k] += inst.delta1 * term.coeff * prod[k];
    }
    auto uv = mul(comp[inst.n - 1], comp[inst.n]);
    for (size_t k = 0; k < uv.size(); ++k) acc[k] += inst.delta2 * uv[k];
    return acc;
}

cxd h_eval(const ChartInstance& inst, cxd t) {
    std::vector<cxd> z(inst.n + 1);
    for (int i = 0; i <= inst.n; ++i) {
        cxd v = inst.scales[i];
        for (cxd th : inst.roots[i]) v *= (t - th);
        z[i] = v;
    }
    return inst.delta1 * inst.q.eval(z) + inst.delta2 * z[inst.n - 1] * z[inst.n];
}

cxd chart_jacobian_det(const ChartInstance& inst) {
    const int d = inst.d;
    if (static_cast<int>(inst.betas.size()) != 2 * d)
        throw precondition_error("instance carries no root data");
    if (inst.q.touches(inst.n - 1) || inst.q.touches(inst.n))
        throw precondition_error("chart Jacobian needs a quadric free of the last two variables");

    auto comp_at = [&](int i, cxd t) {
        cxd v = inst.scales[i];
        for (cxd th : inst.roots[i]) v *= (t - th);
        return v;
    };
    auto dcomp_at = [&](int i, int j, cxd t) {
        cxd v = -inst.scales[i];
        for (int m = 0; m < d; ++m)
            if (m != j) v *= (t - inst.roots[i][m]);
        return v;
    };

    std::vector<std::vector<cxd>> ja(2 * d, std::vector<cxd>(2 * d));
    for (int l = 0; l < 2 * d; ++l) {
        const cxd b = inst.betas[l];
        const cxd u = comp_at(inst.n - 1, b);
        const cxd v = comp_at(inst.n, b);
        for (int j = 0; j < d; ++j) {
            ja[l][j] = inst.delta2 * dcomp_at(inst.n - 1, j, b) * v;
            ja[l][d + j] = inst.delta2 * dcomp_at(inst.n, j, b) * u;
        }
    }
    return det_lu(std::move(ja));
}

cxd chart_det_closed_form(const ChartInstance& inst) {
    const int d = inst.d;
    std::vector<cxd> x = inst.roots[inst.n - 1];
    x.insert(x.end(), inst.roots[inst.n].begin(), inst.roots[inst.n].end());

    cxd scale = 1.0;
    for (int i = 0; i < 2 * d; ++i) scale *= inst.delta2 * inst.scales[inst.n - 1] * inst.scales[inst.n];
    cxd vb = 1.0;
    for (int l = 0; l < 2 * d; ++l)
        for (int m = l + 1; m < 2 * d; ++m) vb *= (inst.betas[m] - inst.betas[l]);
    cxd vx = 1.0;
    for (int k = 0; k < 2 * d; ++k)
        for (int k2 = k + 1; k2 < 2 * d; ++k2) vx *= (x[k] - x[k2]);
    return scale * vb * vx;
}

MinorProductParts minor_product_formula(const ChartInstance& inst) {
    const int d = inst.d;
    auto vand_minor = [&](int base) {
        std::vector<std::vector<cxd>> m(d, std::vector<cxd>(d));
        for (int l = 0; l < d; ++l) {
            cxd p = 1.0;
            for (int j = 0; j < d; ++j) {
                p *= inst.betas[base + l];
                m[l][j] = p;
            }
        }
        return det_lu(std::move(m));
    };
    auto comp_at = [&](int i, cxd t) {
        cxd v = inst.scales[i];
        for (cxd th : inst.roots[i]) v *= (t - th);
        return v;
    };
    MinorProductParts parts;
    parts.t0 = vand_minor(0);
    parts.td = vand_minor(d);
    parts.pair_product = 1.0;
    for (int i = 0; i < d; ++i) {
        const cxd term = comp_at(inst.n - 1, inst.betas[d + i]) * comp_at(inst.n, inst.betas[i]) -
                         comp_at(inst.n - 1, inst.betas[i]) * comp_at(inst.n, inst.betas[d + i]);
        parts.pair_product *= term;
    }
    const double sign = (d % 2 == 0) ? 1.0 : -1.0;
    parts.total = sign * inst.delta2 * parts.t0 * parts.td * parts.pair_product;
    return parts;
}

ChartInstance random_chart_instance(int n, int d, Rng& rng, int max_attempts) {
    if (n < 4 || d < 1) throw precondition_error("chart instance needs n >= 4, d >= 1");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        ChartInstance inst;
        inst.n = n;
        inst.d = d;
        inst.scales.resize(n + 1);
        inst.roots.assign(n + 1, std::vector<cxd>(d));
        for (int i = 0; i <= n; ++i) {
            inst.scales[i] = rand_complex(rng);
            for (int j = 0; j < d; ++j) inst.roots[i][j] = rand_complex(rng);
        }
        inst.delta1 = rand_complex(rng);
        inst.delta2 = rand_complex(rng);
        inst.q = QuadricC::product_middle();

        bool theta_ok = true;
        for (int i = 0; i <= n && theta_ok; ++i)
            for (int j = 0; j < d && theta_ok; ++j)
                for (int j2 = j + 1; j2 < d; ++j2)
                    if (std::abs(inst.roots[i][j] - inst.roots[i][j2]) < 1e-8) theta_ok = false;
        if (!theta_ok) continue;

        const auto hp = h_poly(inst);
        double max_coeff = 0.0;
        for (const auto& c : hp) max_coeff = std::max(max_coeff, std::abs(c));
        auto roots = durand_kerner(hp);
        if (!roots) continue;

        double scale = 0.0;
        for (const auto& b : *roots) scale = std::max(scale, std::abs(b));
        bool beta_ok = true;
        for (size_t i = 0; i < roots->size() && beta_ok; ++i) {
            if (std::abs((*roots)[i]) < 1e-8 * std::max(scale, 1.0)) beta_ok = false;
            for (size_t j = i + 1; j < roots->size(); ++j)
                if (std::abs((*roots)[i] - (*roots)[j]) < 1e-8 * std::max(scale, 1.0)) beta_ok = false;
        }
        if (!beta_ok) continue;

        double resid = 0.0;
        for (const auto& b : *roots) resid = std::max(resid, std::abs(horner(hp, b)));
        inst.root_residual = resid / std::max(max_coeff, 1e-300);
        if (inst.root_residual > 1e-9) continue;

        inst.betas = std::move(*roots);
        return inst;
    }
    throw degeneracy_error("chart instance sampling kept producing degenerate root sets");
}

ChartReport verify_chart(int instance_count, int n, int d, Rng& rng) {
    ChartReport report;
    report.requested = instance_count;
    for (int i = 0; i < instance_count; ++i) {
        ChartInstanceResult res;
        ChartInstance inst;
        try {
            inst = random_chart_instance(n, d, rng);
        } catch (const degeneracy_error&) {
            res.skipped = true;
            ++report.skipped;
            report.instances.push_back(res);
            continue;
        }
        res.converged = true;
        ++report.converged;
        res.root_residual = inst.root_residual;
        res.det = chart_jacobian_det(inst);
        const cxd closed = chart_det_closed_form(inst);
        res.closed_form_rel_err = std::abs(std::abs(res.det) / std::abs(closed) - 1.0);
        res.nonzero = std::abs(res.det) > 0.0;
        const auto parts = minor_product_formula(inst);
        res.minor_product_ratio = res.det / parts.total;
        if (res.closed_form_rel_err < 1e-6) ++report.closed_form_pass;
        report.instances.push_back(res);
    }
    return report;
}

}  // namespace curvelab
