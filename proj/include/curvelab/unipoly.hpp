#ifndef CURVELAB_UNIPOLY_HPP
#define CURVELAB_UNIPOLY_HPP

#include <algorithm>
#include <ostream>
#include <vector>

#include "curvelab/field.hpp"

namespace curvelab {

// Dense univariate polynomial; empty coefficient vector is the zero
// polynomial, otherwise the leading coefficient is nonzero.
template <class K>
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(const K& a) { return UniPoly(std::vector<K>{a}); }
    static UniPoly monomial(const K& a, int e) {
        std::vector<K> c(e + 1, K::zero());
        c[e] = a;
        return UniPoly(std::move(c));
    }
    static UniPoly variable() { return monomial(K::one(), 1); }

    template <class Rng>
    static UniPoly random(int max_deg, Rng& rng) {
        std::vector<K> c(max_deg + 1);
        for (auto& x : c) x = K::random(rng);
        return UniPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const K& operator[](int i) const {
        static const K kzero = K::zero();
        if (i < 0 || i >= static_cast<int>(c_.size())) return kzero;
        return c_[i];
    }
    const std::vector<K>& coeffs() const { return c_; }
    const K& leading() const {
        if (is_zero()) throw precondition_error("zero polynomial has no leading coefficient");
        return c_.back();
    }

    K eval(const K& t) const {
        K r = K::zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
        return r;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<K> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * K::from_int(static_cast<int64_t>(i));
        return UniPoly(std::move(d));
    }

    // t -> t^k substitution
    UniPoly compose_power(int k) const {
        if (k < 1) throw precondition_error("compose_power needs k >= 1");
        if (is_zero()) return UniPoly();
        std::vector<K> d(static_cast<size_t>(degree()) * k + 1, K::zero());
        for (size_t i = 0; i < c_.size(); ++i) d[i * k] = c_[i];
        return UniPoly(std::move(d));
    }

    UniPoly shifted(int k) const {  // multiply by t^k
        if (is_zero()) return UniPoly();
        std::vector<K> d(c_.size() + k, K::zero());
        for (size_t i = 0; i < c_.size(); ++i) d[i + k] = c_[i];
        return UniPoly(std::move(d));
    }

    UniPoly operator-() const {
        std::vector<K> d(c_);
        for (auto& x : d) x = -x;
        return UniPoly(std::move(d));
    }
    UniPoly& operator+=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K::zero());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K::zero());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<K> d(a.c_.size() + b.c_.size() - 1, K::zero());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(d));
    }
    friend UniPoly operator*(const K& s, UniPoly a) {
        for (auto& x : a.c_) x = s * x;
        a.trim();
        return a;
    }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    // quotient/remainder, divisor must be nonzero
    std::pair<UniPoly, UniPoly> divrem(const UniPoly& b) const {
        if (b.is_zero()) throw precondition_error("division by zero polynomial");
        UniPoly r = *this;
        if (r.degree() < b.degree()) return {UniPoly(), r};
        std::vector<K> q(r.degree() - b.degree() + 1, K::zero());
        const K lb_inv = b.leading().inv();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            const int shift = r.degree() - b.degree();
            const K f = r.leading() * lb_inv;
            q[shift] = f;
            for (size_t i = 0; i < b.c_.size(); ++i) r.c_[shift + i] -= f * b.c_[i];
            r.trim();
        }
        return {UniPoly(std::move(q)), r};
    }

    UniPoly monic() const {
        if (is_zero()) return UniPoly();
        return leading().inv() * *this;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const UniPoly& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (int i = p.degree(); i >= 0; --i) {
            if (p.c_[i].is_zero()) continue;
            if (!first) os << " + ";
            os << p.c_[i];
            if (i > 0) os << "*t^" << i;
            first = false;
        }
        return os;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<K> c_;
};

// Monic gcd by Euclid's algorithm; errors on the (0, 0) input.
template <class K>
UniPoly<K> gcd_univariate(UniPoly<K> a, UniPoly<K> b) {
    if (a.is_zero() && b.is_zero()) throw precondition_error("gcd of two zero polynomials");
    while (!b.is_zero()) {
        auto [q, r] = a.divrem(b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

}  // namespace curvelab

#endif
