#pragma once

#include <complex>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace kln {

int euler_phi(int n);

// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1),
// stored as integer numerators over one positive common denominator.
class Cyclo {
public:
    Cyclo();
    Cyclo(long v);
    Cyclo(const mpq_class& q);
    // coeffs may be shorter than phi(order); the tail is zero.
    Cyclo(int order, const std::vector<mpq_class>& coeffs);

    static Cyclo zeta(int n, long k = 1);
    static Cyclo rational(long p, long q);

    int order() const { return n_; }
    std::vector<mpq_class> coeffs() const;

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    mpq_class to_rational() const;  // throws if not rational
    std::complex<double> to_complex() const;

    Cyclo embed(int m) const;  // order must divide m
    Cyclo conj(long k) const;  // Galois automorphism zeta -> zeta^k, gcd(k,n)=1
    Cyclo inverse() const;
    Cyclo pow(long e) const;

    Cyclo operator-() const;
    Cyclo& operator+=(const Cyclo& b);
    Cyclo& operator-=(const Cyclo& b);
    Cyclo& operator*=(const Cyclo& b);
    Cyclo& operator/=(const Cyclo& b);
    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
    friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
    friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }
    friend bool operator==(const Cyclo& a, const Cyclo& b);
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    // Canonical text, e.g. "3/4" or "(1/2 + zeta8^2)".
    std::string str() const;
    // Key that is stable once both sides share an order.
    std::string key() const;

private:
    void normalize();
    int n_ = 1;
    std::vector<mpz_class> num_;
    mpz_class den_ = 1;
};

enum class ArithOp { Add, Sub, Mul, Div };

Cyclo cyclo_make(int order, const std::vector<mpq_class>& coeffs);
Cyclo cyclo_arith(const Cyclo& a, const Cyclo& b, ArithOp op);
std::complex<double> cyclo_to_float(const Cyclo& a);

}  // namespace kln
