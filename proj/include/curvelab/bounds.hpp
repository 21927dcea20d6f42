#ifndef CURVELAB_BOUNDS_HPP
#define CURVELAB_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "curvelab/field.hpp"

namespace curvelab {

// Exact fraction for the degree bounds (values stay tiny).
struct Fraction {
    long long num = 0;
    long long den = 1;

    Fraction() = default;
    Fraction(long long n, long long d);

    long long floor() const;
    double approx() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num == b.num && a.den == b.den;
    }
};

enum class Regime { fano, calabi_yau, general_type };

// The five classification cases for hypersurfaces of general type; h at or
// below n+1 carries no case.
enum class CurveClass {
    no_rational_curves,    // (1) h above 2n-3
    lines_only_boundary,   // (2) h = 2n-3
    lines_only,            // (3) 3n/2-1 < h < 2n-3
    lines_and_conics,      // (4) h = 3n/2-1
    bounded_degree,        // (5) n+1 < h < 3n/2-1
    unbounded,             // h <= n+1, not of general type
};

struct ClassificationRow {
    int n = 0;
    int h = 0;
    Regime regime = Regime::fano;
    CurveClass curve_class = CurveClass::unbounded;
    // largest degree of a rational curve; nullopt means unbounded
    std::optional<long long> max_curve_degree;
    bool finitely_many_per_degree = false;  // the h = 2n-3 specialization
};

std::string regime_name(Regime r);
std::string curve_class_name(CurveClass c);

// (n+1)(d+1) - 1 - 3 >= hd + 1, the naive parameter count.
bool naive_count_holds(int n, int d, int h);

// (n+1-h)d + (n-1), the unobstructed dimension of the space of maps.
int expected_hom_dim(int n, int d, int h);

// n + 1 + (n-4)/d, the largest hypersurface degree carrying a degree-d
// rational curve; requires n >= 4.
Fraction max_hypersurface_degree(int n, int d);

ClassificationRow classify(int n, int h);

std::string classification_table_markdown(int n_lo, int n_hi);

}  // namespace curvelab

#endif
