#ifndef CURVELAB_FIELD_HPP
#define CURVELAB_FIELD_HPP

#include <cassert>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace curvelab {

struct math_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct dimension_error : math_error {
    using math_error::math_error;
};
struct precondition_error : math_error {
    using math_error::math_error;
};
struct degeneracy_error : math_error {
    using math_error::math_error;
};
struct invariant_error : math_error {
    using math_error::math_error;
};

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
    // operands are reduced mod p < 2^32, so the product fits in 64 bits
    return (a * b) % p;
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid far beyond 2^32.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline uint64_t& active_modulus() {
    thread_local uint64_t p = 0;
    return p;
}

}  // namespace detail

// Scoped runtime modulus for Fp, one per thread (workers install their own).
class FpContext {
  public:
    explicit FpContext(uint64_t p) : saved_(detail::active_modulus()) {
        if (p < 3 || p >= (uint64_t(1) << 32) || (p & 1) == 0 || !detail::is_prime_u64(p))
            throw precondition_error("field characteristic must be an odd prime < 2^32, got " + std::to_string(p));
        detail::active_modulus() = p;
    }
    FpContext(const FpContext&) = delete;
    FpContext& operator=(const FpContext&) = delete;
    ~FpContext() { detail::active_modulus() = saved_; }

    static uint64_t modulus() {
        assert(detail::active_modulus() != 0 && "no FpContext installed on this thread");
        return detail::active_modulus();
    }

  private:
    uint64_t saved_;
};

// Element of the prime field fixed by the enclosing FpContext.
class Fp {
  public:
    Fp() : v_(0) {}

    static Fp from_int(int64_t x) {
        const int64_t p = static_cast<int64_t>(FpContext::modulus());
        int64_t r = x % p;
        if (r < 0) r += p;
        return Fp(static_cast<uint64_t>(r));
    }
    static Fp from_rep(uint64_t rep) {
        if (rep >= FpContext::modulus()) throw precondition_error("field representative out of range");
        return Fp(rep);
    }
    static Fp zero() { return Fp(); }
    static Fp one() { return Fp(1 % FpContext::modulus()); }

    template <class Rng>
    static Fp random(Rng& rng) {
        return Fp(rng.next() % FpContext::modulus());
    }

    uint64_t rep() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator-() const {
        return v_ == 0 ? Fp() : Fp(FpContext::modulus() - v_);
    }
    Fp& operator+=(const Fp& o) {
        const uint64_t p = FpContext::modulus();
        v_ += o.v_;
        if (v_ >= p) v_ -= p;
        return *this;
    }
    Fp& operator-=(const Fp& o) {
        const uint64_t p = FpContext::modulus();
        v_ = (v_ >= o.v_) ? v_ - o.v_ : v_ + p - o.v_;
        return *this;
    }
    Fp& operator*=(const Fp& o) {
        v_ = detail::mulmod_u64(v_, o.v_, FpContext::modulus());
        return *this;
    }
    Fp inv() const {
        if (v_ == 0) throw math_error("division by zero in prime field");
        const uint64_t p = FpContext::modulus();
        return Fp(detail::powmod_u64(v_, p - 2, p));
    }
    Fp& operator/=(const Fp& o) { return *this *= o.inv(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Fp& a, const Fp& b) { return a.v_ != b.v_; }
    friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

    std::string str() const { return std::to_string(v_); }

  private:
    explicit Fp(uint64_t v) : v_(v) {}
    uint64_t v_;
};

// Arbitrary-precision rational scalar, for small confirmatory runs.
class Rat {
  public:
    Rat() : q_(0) {}
    explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    static Rat from_int(int64_t x) { return Rat(mpq_class(static_cast<long>(x))); }
    static Rat from_fraction(int64_t num, int64_t den) {
        if (den == 0) throw math_error("zero denominator");
        Rat r;
        r.q_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
        r.q_.canonicalize();
        return r;
    }
    static Rat from_string(const std::string& s) {
        Rat r;
        r.q_ = mpq_class(s);
        r.q_.canonicalize();
        return r;
    }
    static Rat zero() { return Rat(); }
    static Rat one() { return from_int(1); }

    template <class Rng>
    static Rat random(Rng& rng) {
        return from_int(static_cast<int64_t>(rng.next() % 199) - 99);
    }

    bool is_zero() const { return q_ == 0; }
    const mpq_class& value() const { return q_; }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat inv() const {
        if (is_zero()) throw math_error("division by zero in rational field");
        return Rat(mpq_class(1) / q_);
    }
    Rat& operator/=(const Rat& o) { return *this *= o.inv(); }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
    friend std::ostream& operator<<(std::ostream& os, const Rat& x) { return os << x.q_; }

    std::string str() const { return q_.get_str(); }

  private:
    mpq_class q_;
};

}  // namespace curvelab

#endif
