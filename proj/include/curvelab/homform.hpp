#ifndef CURVELAB_HOMFORM_HPP
#define CURVELAB_HOMFORM_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <vector>

#include "curvelab/unipoly.hpp"

namespace curvelab {

using Exponents = std::vector<uint16_t>;

// Sparse homogeneous form of total degree h in n+1 variables.  Only nonzero
// coefficients are stored; term order is the map's lexicographic order on
// exponent vectors, which fixes the canonical serialization order.
template <class K>
class HomForm {
  public:
    HomForm(int n, int h) : n_(n), h_(h) {
        if (n < 1 || h < 0) throw precondition_error("HomForm needs n >= 1, h >= 0");
    }

    int ambient_dim() const { return n_; }
    int degree() const { return h_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, K>& terms() const { return terms_; }

    void set_coeff(const Exponents& e, const K& v) {
        check_exponents(e);
        if (v.is_zero())
            terms_.erase(e);
        else
            terms_[e] = v;
    }
    void add_coeff(const Exponents& e, const K& v) {
        check_exponents(e);
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!v.is_zero()) terms_.emplace(e, v);
            return;
        }
        it->second += v;
        if (it->second.is_zero()) terms_.erase(it);
    }
    K coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? K::zero() : it->second;
    }

    HomForm operator-() const {
        HomForm r(n_, h_);
        for (const auto& [e, v] : terms_) r.terms_.emplace(e, -v);
        return r;
    }
    HomForm& operator+=(const HomForm& o) {
        require_same_shape(o);
        for (const auto& [e, v] : o.terms_) add_coeff(e, v);
        return *this;
    }
    HomForm& operator-=(const HomForm& o) {
        require_same_shape(o);
        for (const auto& [e, v] : o.terms_) add_coeff(e, -v);
        return *this;
    }
    friend HomForm operator+(HomForm a, const HomForm& b) { return a += b; }
    friend HomForm operator-(HomForm a, const HomForm& b) { return a -= b; }
    friend HomForm operator*(const K& s, const HomForm& f) {
        HomForm r(f.n_, f.h_);
        if (s.is_zero()) return r;
        for (const auto& [e, v] : f.terms_) r.terms_.emplace(e, s * v);
        return r;
    }
    friend HomForm operator*(const HomForm& a, const HomForm& b) {
        if (a.n_ != b.n_) throw dimension_error("form product: ambient dimensions differ");
        HomForm r(a.n_, a.h_ + b.h_);
        for (const auto& [ea, va] : a.terms_)
            for (const auto& [eb, vb] : b.terms_) {
                Exponents e(ea.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = static_cast<uint16_t>(ea[i] + eb[i]);
                r.add_coeff(e, va * vb);
            }
        return r;
    }

    friend bool operator==(const HomForm& a, const HomForm& b) {
        return a.n_ == b.n_ && a.h_ == b.h_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const HomForm& a, const HomForm& b) { return !(a == b); }

    // formal partial derivative with respect to z_i
    HomForm partial(int i) const {
        if (i < 0 || i > n_) throw precondition_error("partial: variable index out of range");
        HomForm r(n_, h_ > 0 ? h_ - 1 : 0);
        if (h_ == 0) return r;
        for (const auto& [e, v] : terms_) {
            if (e[i] == 0) continue;
            Exponents d = e;
            d[i] = static_cast<uint16_t>(d[i] - 1);
            r.add_coeff(d, K::from_int(e[i]) * v);
        }
        return r;
    }

    K eval(const std::vector<K>& point) const {
        if (static_cast<int>(point.size()) != n_ + 1)
            throw dimension_error("eval: point has wrong number of coordinates");
        K total = K::zero();
        for (const auto& [e, v] : terms_) {
            K m = v;
            for (int i = 0; i <= n_; ++i)
                for (int r = 0; r < e[i]; ++r) m *= point[i];
            total += m;
        }
        return total;
    }

    // Same evaluation over any commutative ring element type (jets, complex).
    template <class R>
    R eval_ring(const std::vector<R>& point, const R& zero, const std::function<R(const K&)>& lift) const {
        R total = zero;
        for (const auto& [e, v] : terms_) {
            R m = lift(v);
            for (int i = 0; i <= n_; ++i)
                for (int r = 0; r < e[i]; ++r) m = m * point[i];
            total = total + m;
        }
        return total;
    }

    template <class Rng>
    static HomForm random_dense(int n, int h, Rng& rng) {
        HomForm f(n, h);
        for_each_monomial(n, h, [&](const Exponents& e) { f.set_coeff(e, K::random(rng)); });
        return f;
    }

    // Visits all degree-h exponent vectors in the canonical (lexicographic,
    // first variable outermost) order.
    template <class Fn>
    static void for_each_monomial(int n, int h, Fn&& fn) {
        Exponents e(n + 1, 0);
        visit_rec(e, 0, h, fn);
    }

    static int64_t monomial_count(int n, int h) {
        // C(n+h, n)
        int64_t r = 1;
        for (int i = 1; i <= n; ++i) r = r * (h + i) / i;
        return r;
    }

  private:
    template <class Fn>
    static void visit_rec(Exponents& e, int pos, int rem, Fn& fn) {
        if (pos == static_cast<int>(e.size()) - 1) {
            e[pos] = static_cast<uint16_t>(rem);
            fn(const_cast<const Exponents&>(e));
            e[pos] = 0;
            return;
        }
        for (int v = rem; v >= 0; --v) {
            e[pos] = static_cast<uint16_t>(v);
            visit_rec(e, pos + 1, rem - v, fn);
        }
        e[pos] = 0;
    }

    void check_exponents(const Exponents& e) const {
        if (static_cast<int>(e.size()) != n_ + 1)
            throw dimension_error("exponent vector has wrong length");
        int sum = 0;
        for (auto x : e) sum += x;
        if (sum != h_) throw invariant_error("exponent vector does not sum to the form degree");
    }
    void require_same_shape(const HomForm& o) const {
        if (n_ != o.n_ || h_ != o.h_) throw dimension_error("form shapes differ");
    }

    int n_;
    int h_;
    std::map<Exponents, K> terms_;
};

}  // namespace curvelab

#endif
