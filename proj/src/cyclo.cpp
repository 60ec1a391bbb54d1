#include "kleinian/cyclo.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kln {

int euler_phi(int n) {
    if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
    int r = n, m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            r -= r / p;
        }
    }
    if (m > 1) r -= r / m;
    return r;
}

namespace {

using ZPoly = std::vector<mpz_class>;

ZPoly zpoly_divexact(ZPoly a, const ZPoly& b) {
    // b monic; a divisible by b
    int db = (int)b.size() - 1;
    ZPoly q(a.size() - db, 0);
    for (int i = (int)a.size() - 1; i >= db; --i) {
        mpz_class c = a[i];
        q[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

struct Field {
    int n;
    int phi;
    ZPoly cyc;  // monic, degree phi
    // red[k] = x^k mod cyc, for 0 <= k < max(n, 2*phi-1)
    std::vector<ZPoly> red;
};

std::mutex field_mu;
std::map<int, std::unique_ptr<Field>> fields;

const ZPoly& cyclotomic_poly(int n);

const Field& field(int n) {
    {
        std::lock_guard<std::mutex> lk(field_mu);
        auto it = fields.find(n);
        if (it != fields.end()) return *it->second;
    }
    auto f = std::make_unique<Field>();
    f->n = n;
    f->phi = euler_phi(n);
    f->cyc = cyclotomic_poly(n);
    int top = std::max(n, 2 * f->phi - 1);
    f->red.resize(top);
    int p = f->phi;
    ZPoly cur(p, 0);
    cur[0] = 1;
    for (int k = 0; k < top; ++k) {
        f->red[k] = cur;
        // multiply by x and reduce
        mpz_class carry = cur[p - 1];
        for (int j = p - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (carry != 0)
            for (int j = 0; j < p; ++j) cur[j] -= carry * f->cyc[j];
    }
    std::lock_guard<std::mutex> lk(field_mu);
    auto [it, ok] = fields.emplace(n, std::move(f));
    return *it->second;
}

std::mutex cyc_mu;
std::map<int, ZPoly> cyc_cache;

const ZPoly& cyclotomic_poly(int n) {
    {
        std::lock_guard<std::mutex> lk(cyc_mu);
        auto it = cyc_cache.find(n);
        if (it != cyc_cache.end()) return it->second;
    }
    ZPoly a(n + 1, 0);
    a[0] = -1;
    a[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) a = zpoly_divexact(a, cyclotomic_poly(d));
    std::lock_guard<std::mutex> lk(cyc_mu);
    return cyc_cache.emplace(n, a).first->second;
}

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

}  // namespace

Cyclo::Cyclo() : n_(1), num_(1, 0), den_(1) {}

Cyclo::Cyclo(long v) : n_(1), num_(1, v), den_(1) {}

Cyclo::Cyclo(const mpq_class& q) : n_(1), num_(1, q.get_num()), den_(q.get_den()) { normalize(); }

Cyclo::Cyclo(int order, const std::vector<mpq_class>& coeffs) {
    if (order < 1) throw std::invalid_argument("cyclo: order must be positive");
    int p = euler_phi(order);
    if ((int)coeffs.size() > p) throw std::invalid_argument("cyclo: coefficient vector longer than phi(order)");
    n_ = order;
    mpz_class d = 1;
    for (auto& c : coeffs) d = lcm(d, mpz_class(c.get_den()));
    den_ = d;
    num_.assign(p, 0);
    for (size_t i = 0; i < coeffs.size(); ++i) num_[i] = coeffs[i].get_num() * (d / coeffs[i].get_den());
    normalize();
}

Cyclo Cyclo::zeta(int n, long k) {
    if (n < 1) throw std::invalid_argument("cyclo: order must be positive");
    const Field& f = field(n);
    long e = ((k % n) + n) % n;
    Cyclo r;
    r.n_ = n;
    r.num_ = f.red[e];
    r.den_ = 1;
    r.normalize();
    return r;
}

Cyclo Cyclo::rational(long p, long q) {
    if (q == 0) throw std::domain_error("cyclo: zero denominator");
    return Cyclo(mpq_class(p, q));
}

std::vector<mpq_class> Cyclo::coeffs() const {
    std::vector<mpq_class> r(num_.size());
    for (size_t i = 0; i < num_.size(); ++i) {
        r[i] = mpq_class(num_[i], den_);
        r[i].canonicalize();
    }
    return r;
}

void Cyclo::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    mpz_class g = den_;
    for (auto& c : num_) {
        if (g == 1) break;
        if (c != 0) g = gcd(g, c);
    }
    bool allzero = true;
    for (auto& c : num_)
        if (c != 0) { allzero = false; break; }
    if (allzero) {
        den_ = 1;
        return;
    }
    if (g != 1) {
        den_ /= g;
        for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
}

bool Cyclo::is_zero() const {
    for (auto& c : num_)
        if (c != 0) return false;
    return true;
}

bool Cyclo::is_one() const { return is_rational() && num_[0] == den_; }

bool Cyclo::is_rational() const {
    for (size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0) return false;
    return true;
}

mpq_class Cyclo::to_rational() const {
    if (!is_rational()) throw std::domain_error("cyclo: element is not rational");
    mpq_class q(num_[0], den_);
    q.canonicalize();
    return q;
}

std::complex<double> Cyclo::to_complex() const {
    long double re = 0, im = 0;
    const long double tau = 6.283185307179586476925286766559L;
    for (size_t j = 0; j < num_.size(); ++j) {
        if (num_[j] == 0) continue;
        mpq_class q(num_[j], den_);
        q.canonicalize();
        long double c = q.get_d();
        long double ang = tau * (long double)j / (long double)n_;
        re += c * cosl(ang);
        im += c * sinl(ang);
    }
    return {(double)re, (double)im};
}

Cyclo Cyclo::embed(int m) const {
    if (m % n_ != 0) throw std::invalid_argument("cyclo: embedding order must be a multiple");
    if (m == n_) return *this;
    const Field& f = field(m);
    int step = m / n_;
    Cyclo r;
    r.n_ = m;
    r.num_.assign(f.phi, 0);
    r.den_ = den_;
    for (size_t j = 0; j < num_.size(); ++j) {
        if (num_[j] == 0) continue;
        const ZPoly& row = f.red[(j * step) % m];
        for (int k = 0; k < f.phi; ++k)
            if (row[k] != 0) r.num_[k] += num_[j] * row[k];
    }
    r.normalize();
    return r;
}

Cyclo Cyclo::conj(long k) const {
    if (std::gcd(((k % n_) + n_) % n_, (long)n_) != 1 && n_ > 1)
        throw std::invalid_argument("cyclo: Galois exponent not a unit");
    if (n_ == 1) return *this;
    const Field& f = field(n_);
    Cyclo r;
    r.n_ = n_;
    r.num_.assign(f.phi, 0);
    r.den_ = den_;
    long kk = ((k % n_) + n_) % n_;
    for (size_t j = 0; j < num_.size(); ++j) {
        if (num_[j] == 0) continue;
        const ZPoly& row = f.red[(j * kk) % n_];
        for (int t = 0; t < f.phi; ++t)
            if (row[t] != 0) r.num_[t] += num_[j] * row[t];
    }
    r.normalize();
    return r;
}

Cyclo Cyclo::inverse() const {
    if (is_zero()) throw std::domain_error("cyclo: division by zero");
    if (n_ == 1) {
        Cyclo r;
        r.num_[0] = den_;
        r.den_ = num_[0];
        r.normalize();
        return r;
    }
    // a^{-1} = prod_{sigma != 1} sigma(a) / N(a)
    Cyclo prod(1);
    prod = prod.embed(n_);
    for (long k = 2; k < n_; ++k)
        if (std::gcd(k, (long)n_) == 1) prod *= conj(k);
    Cyclo norm = prod * (*this);
    mpq_class nq = norm.to_rational();
    Cyclo r = prod;
    r *= Cyclo(mpq_class(1) / nq);
    return r;
}

Cyclo Cyclo::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclo r = Cyclo(1).embed(n_), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& b) {
    if (b.n_ != n_) {
        int m = lcm_int(n_, b.n_);
        *this = embed(m);
        return *this += b.embed(m);
    }
    if (den_ == b.den_) {
        for (size_t i = 0; i < num_.size(); ++i) num_[i] += b.num_[i];
    } else {
        for (size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * b.den_ + b.num_[i] * den_;
        den_ *= b.den_;
    }
    normalize();
    return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& b) { return *this += -b; }

Cyclo& Cyclo::operator*=(const Cyclo& b) {
    if (b.n_ != n_) {
        int m = lcm_int(n_, b.n_);
        *this = embed(m);
        return *this *= b.embed(m);
    }
    if (n_ == 1) {
        num_[0] *= b.num_[0];
        den_ *= b.den_;
        normalize();
        return *this;
    }
    const Field& f = field(n_);
    int p = f.phi;
    std::vector<mpz_class> c(2 * p - 1, 0);
    for (int i = 0; i < p; ++i) {
        if (num_[i] == 0) continue;
        for (int j = 0; j < p; ++j)
            if (b.num_[j] != 0) c[i + j] += num_[i] * b.num_[j];
    }
    for (int k = 2 * p - 2; k >= p; --k) {
        if (c[k] == 0) continue;
        const ZPoly& row = f.red[k];
        for (int t = 0; t < p; ++t)
            if (row[t] != 0) c[t] += c[k] * row[t];
    }
    for (int i = 0; i < p; ++i) num_[i] = c[i];
    den_ *= b.den_;
    normalize();
    return *this;
}

Cyclo& Cyclo::operator/=(const Cyclo& b) { return *this *= b.inverse(); }

bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.n_ != b.n_) {
        int m = lcm_int(a.n_, b.n_);
        return a.embed(m) == b.embed(m);
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
}

std::string Cyclo::str() const {
    if (is_rational()) return to_rational().get_str();
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (size_t j = 0; j < num_.size(); ++j) {
        if (num_[j] == 0) continue;
        mpq_class q(num_[j], den_);
        q.canonicalize();
        bool neg = q < 0;
        if (neg) q = -q;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (j == 0) {
            os << q.get_str();
            continue;
        }
        if (q != 1) os << q.get_str() << "*";
        os << "zeta" << n_;
        if (j > 1) os << "^" << j;
    }
    os << ")";
    return os.str();
}

std::string Cyclo::key() const {
    std::string s = std::to_string(n_) + ":" + den_.get_str();
    for (auto& c : num_) s += "," + c.get_str();
    return s;
}

Cyclo cyclo_make(int order, const std::vector<mpq_class>& coeffs) { return Cyclo(order, coeffs); }

Cyclo cyclo_arith(const Cyclo& a, const Cyclo& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div: return a / b;
    }
    throw std::invalid_argument("cyclo_arith: unknown op");
}

std::complex<double> cyclo_to_float(const Cyclo& a) { return a.to_complex(); }

}  // namespace kln
