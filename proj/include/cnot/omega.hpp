#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cnot {

// Exact scalar (a0 + a1 w + a2 w^2 + a3 w^3) / 2^k with w = e^{i pi/4},
// w^4 = -1. {1, w, w^2, w^3} is a Z-basis of Z[w], so the zero test is
// component-wise. Canonical form: k = 0 or not all components even.
// Closed under the {CNOT,H,S,T} amplitude arithmetic: 1/sqrt2 = (w - w^3)/2.
class OmegaScalar {
public:
    using Int = boost::multiprecision::cpp_int;

    OmegaScalar() : a_{0, 0, 0, 0}, k_(0) {}
    OmegaScalar(Int a0, Int a1, Int a2, Int a3, unsigned k = 0)
        : a_{std::move(a0), std::move(a1), std::move(a2), std::move(a3)}, k_(k) {
        reduce();
    }
    static OmegaScalar integer(long long v) { return OmegaScalar(v, 0, 0, 0); }
    static OmegaScalar zero() { return OmegaScalar(); }
    static OmegaScalar one() { return integer(1); }
    static OmegaScalar i() { return OmegaScalar(0, 0, 1, 0); }
    static OmegaScalar omega() { return OmegaScalar(0, 1, 0, 0); }
    static OmegaScalar inv_sqrt2() { return OmegaScalar(0, 1, 0, -1, 1); }
    // w^p for any integer p >= 0
    static OmegaScalar omega_pow(unsigned p) {
        OmegaScalar r = one();
        for (unsigned t = 0; t < p % 8; ++t) r = r * omega();
        return r;
    }

    const Int& component(std::size_t i) const { return a_[i]; }
    unsigned denom_exp() const { return k_; }
    bool is_zero() const { return a_[0] == 0 && a_[1] == 0 && a_[2] == 0 && a_[3] == 0; }

    OmegaScalar operator+(const OmegaScalar& o) const {
        unsigned k = std::max(k_, o.k_);
        OmegaScalar r;
        for (std::size_t i = 0; i < 4; ++i)
            r.a_[i] = (a_[i] << (k - k_)) + (o.a_[i] << (k - o.k_));
        r.k_ = k;
        r.reduce();
        return r;
    }
    OmegaScalar operator-() const {
        OmegaScalar r = *this;
        for (auto& c : r.a_) c = -c;
        return r;
    }
    OmegaScalar operator-(const OmegaScalar& o) const { return *this + (-o); }
    OmegaScalar operator*(const OmegaScalar& o) const {
        OmegaScalar r;
        for (std::size_t i = 0; i < 4; ++i) {
            if (a_[i] == 0) continue;
            for (std::size_t j = 0; j < 4; ++j) {
                if (o.a_[j] == 0) continue;
                Int p = a_[i] * o.a_[j];
                std::size_t e = i + j;
                if (e >= 4) r.a_[e - 4] -= p;
                else r.a_[e] += p;
            }
        }
        r.k_ = k_ + o.k_;
        r.reduce();
        return r;
    }
    OmegaScalar& operator+=(const OmegaScalar& o) { return *this = *this + o; }
    OmegaScalar& operator-=(const OmegaScalar& o) { return *this = *this - o; }
    OmegaScalar& operator*=(const OmegaScalar& o) { return *this = *this * o; }

    bool operator==(const OmegaScalar& o) const { return a_ == o.a_ && k_ == o.k_; }

    // Exact division by a small positive integer; every component must be
    // divisible (used for table normalizations like 1/3 and 1/27).
    OmegaScalar div_exact(long long m) const {
        OmegaScalar r = *this;
        for (auto& c : r.a_) {
            if (c % m != 0) throw std::domain_error("OmegaScalar: inexact division by " + std::to_string(m));
            c /= m;
        }
        r.reduce();
        return r;
    }
    // Multiply by 2^{-e}.
    OmegaScalar shift_down(unsigned e) const {
        OmegaScalar r = *this;
        r.k_ += e;
        r.reduce();
        return r;
    }

    std::complex<double> to_complex() const {
        static const std::complex<double> w = std::polar(1.0, std::acos(-1.0) / 4.0);
        std::complex<double> v = static_cast<double>(a_[0]) + static_cast<double>(a_[1]) * w +
                                 static_cast<double>(a_[2]) * w * w + static_cast<double>(a_[3]) * w * w * w;
        return v / std::pow(2.0, static_cast<double>(k_));
    }

    std::string to_string() const {
        std::string s = "(" + a_[0].str() + "," + a_[1].str() + "," + a_[2].str() + "," + a_[3].str() + ")";
        if (k_ > 0) s += "/2^" + std::to_string(k_);
        return s;
    }

private:
    void reduce() {
        if (is_zero()) { k_ = 0; return; }
        while (k_ > 0 && a_[0] % 2 == 0 && a_[1] % 2 == 0 && a_[2] % 2 == 0 && a_[3] % 2 == 0) {
            for (auto& c : a_) c /= 2;
            --k_;
        }
    }

    std::array<Int, 4> a_;
    unsigned k_;
};

// Floating scalar backend: complex double with a documented zero threshold
// (1e-9 absolute on unit-norm states).
struct FloatScalar {
    std::complex<double> v{0.0, 0.0};

    FloatScalar() = default;
    FloatScalar(std::complex<double> z) : v(z) {}
    FloatScalar(double re) : v(re, 0.0) {}

    static FloatScalar integer(long long x) { return FloatScalar(static_cast<double>(x)); }
    static FloatScalar zero() { return FloatScalar(); }
    static FloatScalar one() { return FloatScalar(1.0); }
    static FloatScalar i() { return FloatScalar(std::complex<double>(0.0, 1.0)); }
    static FloatScalar inv_sqrt2() { return FloatScalar(1.0 / std::sqrt(2.0)); }
    static FloatScalar omega_pow(unsigned p) {
        return FloatScalar(std::polar(1.0, std::acos(-1.0) / 4.0 * static_cast<double>(p % 8)));
    }

    static constexpr double kZeroEps = 1e-9;
    bool is_zero() const { return std::abs(v) < kZeroEps; }

    FloatScalar operator+(const FloatScalar& o) const { return FloatScalar(v + o.v); }
    FloatScalar operator-(const FloatScalar& o) const { return FloatScalar(v - o.v); }
    FloatScalar operator-() const { return FloatScalar(-v); }
    FloatScalar operator*(const FloatScalar& o) const { return FloatScalar(v * o.v); }
    FloatScalar& operator+=(const FloatScalar& o) { v += o.v; return *this; }
    FloatScalar& operator-=(const FloatScalar& o) { v -= o.v; return *this; }
    FloatScalar& operator*=(const FloatScalar& o) { v *= o.v; return *this; }

    FloatScalar div_exact(long long m) const { return FloatScalar(v / static_cast<double>(m)); }
    FloatScalar shift_down(unsigned e) const { return FloatScalar(v / std::pow(2.0, e)); }
    std::complex<double> to_complex() const { return v; }
    std::string to_string() const {
        return "(" + std::to_string(v.real()) + (v.imag() < 0 ? "" : "+") + std::to_string(v.imag()) + "i)";
    }
};

}  // namespace cnot
