#include "curvelab/bounds.hpp"

#include <numeric>
#include <sstream>

namespace curvelab {

Fraction::Fraction(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw precondition_error("fraction with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

long long Fraction::floor() const {
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

std::string Fraction::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::fano: return "fano";
        case Regime::calabi_yau: return "calabi_yau";
        case Regime::general_type: return "general_type";
    }
    return "?";
}

std::string curve_class_name(CurveClass c) {
    switch (c) {
        case CurveClass::no_rational_curves: return "no rational curves";
        case CurveClass::lines_only_boundary: return "lines only (top degree)";
        case CurveClass::lines_only: return "lines only";
        case CurveClass::lines_and_conics: return "lines and conics";
        case CurveClass::bounded_degree: return "bounded degree";
        case CurveClass::unbounded: return "unbounded";
    }
    return "?";
}

bool naive_count_holds(int n, int d, int h) {
    if (n < 1 || d < 1 || h < 1) throw precondition_error("naive_count_holds needs n,d,h >= 1");
    return static_cast<long long>(n + 1) * (d + 1) - 1 - 3 >= static_cast<long long>(h) * d + 1;
}

int expected_hom_dim(int n, int d, int h) { return (n + 1 - h) * d + (n - 1); }

Fraction max_hypersurface_degree(int n, int d) {
    if (n < 4) throw precondition_error("degree bound needs n >= 4");
    if (d < 1) throw precondition_error("degree bound needs d >= 1");
    return Fraction(static_cast<long long>(n + 1) * d + (n - 4), d);
}

ClassificationRow classify(int n, int h) {
    if (n < 4 || h < 1) throw precondition_error("classify needs n >= 4, h >= 1");
    ClassificationRow row;
    row.n = n;
    row.h = h;
    row.regime = h < n + 1 ? Regime::fano : (h == n + 1 ? Regime::calabi_yau : Regime::general_type);
    row.finitely_many_per_degree = (h == 2 * n - 3);

    if (row.regime != Regime::general_type) {
        row.curve_class = CurveClass::unbounded;
        row.max_curve_degree = std::nullopt;
        return row;
    }

    const Fraction bound(n - 4, h - n - 1);
    row.max_curve_degree = bound.floor();
    // case split on the exact value of (n-4)/(h-n-1)
    if (bound.num < bound.den) {                      // below 1, no curves at all
        row.curve_class = CurveClass::no_rational_curves;
        row.max_curve_degree = 0;
    } else if (bound.num == bound.den) {              // exactly 1: h = 2n-3
        row.curve_class = CurveClass::lines_only_boundary;
    } else if (bound.num < 2 * bound.den) {           // in (1, 2)
        row.curve_class = CurveClass::lines_only;
    } else if (bound.num == 2 * bound.den) {          // exactly 2: h = 3n/2 - 1
        row.curve_class = CurveClass::lines_and_conics;
    } else {
        row.curve_class = CurveClass::bounded_degree;
    }
    return row;
}

std::string classification_table_markdown(int n_lo, int n_hi) {
    std::ostringstream os;
    os << "| n | h | regime | rational curves | max degree |\n";
    os << "|---|---|--------|-----------------|------------|\n";
    for (int n = n_lo; n <= n_hi; ++n) {
        for (int h = 1; h <= 2 * n - 2; ++h) {
            const auto row = classify(n, h);
            os << "| " << n << " | " << h << " | " << regime_name(row.regime) << " | "
               << curve_class_name(row.curve_class) << " | "
               << (row.max_curve_degree ? std::to_string(*row.max_curve_degree) : std::string("unbounded"));
            if (row.finitely_many_per_degree) os << " (finitely many per degree)";
            os << " |\n";
        }
    }
    return os.str();
}

}  // namespace curvelab
