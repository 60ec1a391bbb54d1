#include "kleinian/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kln {

const std::vector<std::string>& uv_vars() {
    static const std::vector<std::string> v{"u", "v"};
    return v;
}
const std::vector<std::string>& xyz_vars() {
    static const std::vector<std::string> v{"x", "y", "z"};
    return v;
}
const std::vector<std::string>& t_vars() {
    static const std::vector<std::string> v{"t"};
    return v;
}

Poly::Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {
    if (vars_.empty() || vars_.size() > 3) throw std::invalid_argument("poly: between one and three variables");
}

Poly Poly::constant(const std::vector<std::string>& vars, const Cyclo& c) {
    Poly p(vars);
    p.add_term({0, 0, 0}, c);
    return p;
}

Poly Poly::var(const std::vector<std::string>& vars, const std::string& name) {
    Poly p(vars);
    Exp e{0, 0, 0};
    e[p.var_index(name)] = 1;
    p.add_term(e, Cyclo(1));
    return p;
}

Poly Poly::monomial(const std::vector<std::string>& vars, Exp e, const Cyclo& c) {
    Poly p(vars);
    p.add_term(e, c);
    return p;
}

int Poly::var_index(const std::string& name) const {
    for (int i = 0; i < nvars(); ++i)
        if (vars_[i] == name) return i;
    throw std::invalid_argument("poly: unknown variable '" + name + "'");
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exp{0, 0, 0});
}

Cyclo Poly::coeff(const Exp& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Cyclo(0) : it->second;
}

void Poly::add_term(const Exp& e, const Cyclo& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

int Poly::total_degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first[0] + terms_.rbegin()->first[1] + terms_.rbegin()->first[2];
}

int Poly::degree_in(int i) const {
    int d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
}

int Poly::conductor() const {
    int m = 1;
    for (auto& [e, c] : terms_) m = std::lcm(m, c.order());
    return m;
}

void Poly::check_compatible(const Poly& b) const {
    if (vars_ != b.vars_) throw std::invalid_argument("poly: variable sets differ");
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& b) {
    check_compatible(b);
    for (auto& [e, c] : b.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& b) {
    check_compatible(b);
    for (auto& [e, c] : b.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_compatible(b);
    Poly r(a.vars_);
    r.w_ = a.w_;
    for (auto& [ea, ca] : a.terms_)
        for (auto& [eb, cb] : b.terms_) r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
}

Poly& Poly::operator*=(const Poly& b) { return *this = *this * b; }

Poly& Poly::operator*=(const Cyclo& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, t] : terms_) t *= c;
    return *this;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (auto& [e, c] : a.terms_) {
        if (e != it->first || c != it->second) return false;
        ++it;
    }
    return true;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("poly: negative power");
    Poly r = constant(vars_, Cyclo(1)), b = *this;
    r.w_ = w_;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Poly Poly::diff(int i) const {
    if (i < 0 || i >= nvars()) throw std::invalid_argument("poly: variable index out of range");
    Poly r(vars_);
    r.w_ = w_;
    for (auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exp f = e;
        f[i] -= 1;
        r.add_term(f, c * Cyclo(e[i]));
    }
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
    if ((int)images.size() != nvars()) throw std::invalid_argument("poly: substitution arity mismatch");
    const auto& tv = images[0].vars();
    for (auto& im : images)
        if (im.vars() != tv) throw std::invalid_argument("poly: substitution images use different variables");
    std::vector<std::vector<Poly>> pw(nvars());
    for (int i = 0; i < nvars(); ++i) {
        int d = degree_in(i);
        pw[i].push_back(constant(tv, Cyclo(1)));
        for (int k = 1; k <= d; ++k) pw[i].push_back(pw[i].back() * images[i]);
    }
    Poly r(tv);
    r.w_ = images[0].w_;
    for (auto& [e, c] : terms_) {
        Poly m = pw[0][e[0]];
        for (int i = 1; i < nvars(); ++i)
            if (e[i]) m = m * pw[i][e[i]];
        m *= c;
        r += m;
    }
    return r;
}

Poly Poly::substitute(const std::map<std::string, Poly>& assignment) const {
    for (auto& [k, p] : assignment) var_index(k);
    std::vector<Poly> images;
    std::vector<std::string> tv;
    if (!assignment.empty()) tv = assignment.begin()->second.vars();
    for (int i = 0; i < nvars(); ++i) {
        auto it = assignment.find(vars_[i]);
        if (it != assignment.end()) {
            images.push_back(it->second);
        } else {
            if (tv.empty()) tv = vars_;
            images.push_back(var(tv, vars_[i]));
        }
    }
    return substitute(images);
}

Cyclo Poly::eval(const std::vector<Cyclo>& at) const {
    if ((int)at.size() != nvars()) throw std::invalid_argument("poly: evaluation arity mismatch");
    std::vector<std::map<int, Cyclo>> cache(nvars());
    Cyclo r(0);
    for (auto& [e, c] : terms_) {
        Cyclo m = c;
        for (int i = 0; i < nvars(); ++i) {
            if (!e[i]) continue;
            auto it = cache[i].find(e[i]);
            if (it == cache[i].end()) it = cache[i].emplace(e[i], at[i].pow(e[i])).first;
            m *= it->second;
        }
        r += m;
    }
    return r;
}

std::complex<double> Poly::eval(const std::vector<std::complex<double>>& at) const {
    if ((int)at.size() != nvars()) throw std::invalid_argument("poly: evaluation arity mismatch");
    std::complex<double> r = 0;
    for (auto& [e, c] : terms_) {
        std::complex<double> m = c.to_complex();
        for (int i = 0; i < nvars(); ++i)
            if (e[i]) m *= std::pow(at[i], e[i]);
        r += m;
    }
    return r;
}

std::vector<int> Poly::weighted_degrees(const Exp& w) const {
    std::set<int> s;
    for (auto& [e, c] : terms_) {
        int d = 0;
        for (int i = 0; i < nvars(); ++i) d += w[i] * e[i];
        s.insert(d);
    }
    return {s.begin(), s.end()};
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Exp& e = it->first;
        Cyclo c = it->second;
        bool neg = false;
        if (c.is_rational() && c.to_rational() < 0) {
            neg = true;
            c = -c;
        }
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool mono = e[0] + e[1] + e[2] > 0;
        bool unit = c.is_one();
        if (!unit || !mono) {
            os << c.str();
            if (mono) os << "*";
        }
        bool firstvar = true;
        for (int i = 0; i < nvars(); ++i) {
            if (!e[i]) continue;
            if (!firstvar) os << "*";
            firstvar = false;
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

Poly poly_arith(const Poly& f, const Poly& g, PolyOp op) {
    switch (op) {
        case PolyOp::Add: return f + g;
        case PolyOp::Sub: return f - g;
        case PolyOp::Mul: return f * g;
    }
    throw std::invalid_argument("poly_arith: unknown op");
}

Poly poly_diff(const Poly& f, const std::string& var) { return f.diff(var); }

Poly poly_substitute(const Poly& f, const std::map<std::string, Poly>& assignment) {
    return f.substitute(assignment);
}

int weighted_degree(const Poly& f, const Exp& w) {
    if (f.is_zero()) throw std::domain_error("weighted_degree: zero polynomial");
    auto ds = f.weighted_degrees(w);
    if (ds.size() != 1) {
        std::string msg = "weighted_degree: inhomogeneous, degrees";
        for (int d : ds) msg += " " + std::to_string(d);
        throw std::domain_error(msg);
    }
    return ds[0];
}

int weighted_degree(const Poly& f) { return weighted_degree(f, f.weights()); }

Poly poisson_bracket_uv(const Poly& f, const Poly& g) {
    if (f.vars() != uv_vars() || g.vars() != uv_vars())
        throw std::invalid_argument("poisson_bracket_uv: expects polynomials in u,v");
    return f.diff(0) * g.diff(1) - f.diff(1) * g.diff(0);
}

namespace {

struct Parser {
    const std::string& s;
    const std::vector<std::string>& vars;
    size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse error at column " + std::to_string(i + 1) + ": " + what);
    }
    Poly expr() {
        skip();
        Poly r(vars);
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            neg = s[i] == '-';
            ++i;
        }
        r = term();
        if (neg) r = -r;
        for (;;) {
            skip();
            if (i >= s.size() || (s[i] != '+' && s[i] != '-')) break;
            char op = s[i++];
            Poly t = term();
            if (op == '+')
                r += t;
            else
                r -= t;
        }
        return r;
    }
    Poly term() {
        Poly r = power();
        for (;;) {
            skip();
            if (i < s.size() && s[i] == '*') {
                ++i;
                r = r * power();
            } else if (i < s.size() && s[i] == '/') {
                ++i;
                skip();
                mpz_class d = integer();
                if (d == 0) fail("division by zero");
                r *= Cyclo(mpq_class(1, 1) / mpq_class(d));
            } else {
                break;
            }
        }
        return r;
    }
    Poly power() {
        Poly b = atom();
        skip();
        if (i < s.size() && s[i] == '^') {
            ++i;
            skip();
            mpz_class e = integer();
            if (e > 1000) fail("exponent too large");
            b = b.pow((int)e.get_si());
        }
        return b;
    }
    mpz_class integer() {
        skip();
        size_t st = i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (st == i) fail("expected integer");
        return mpz_class(s.substr(st, i - st));
    }
    Poly atom() {
        skip();
        if (i >= s.size()) fail("unexpected end of input");
        if (s[i] == '(') {
            ++i;
            Poly r = expr();
            skip();
            if (i >= s.size() || s[i] != ')') fail("expected ')'");
            ++i;
            return r;
        }
        if (s[i] == '-') {
            ++i;
            return -power();
        }
        if (std::isdigit((unsigned char)s[i])) return Poly::constant(vars, Cyclo(mpq_class(integer())));
        if (std::isalpha((unsigned char)s[i])) {
            size_t st = i;
            while (i < s.size() && std::isalnum((unsigned char)s[i])) ++i;
            std::string name = s.substr(st, i - st);
            if (std::find(vars.begin(), vars.end(), name) == vars.end()) {
                i = st;
                fail("unknown variable '" + name + "'");
            }
            return Poly::var(vars, name);
        }
        fail(std::string("unexpected character '") + s[i] + "'");
    }
};

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
    Parser p{text, vars};
    Poly r = p.expr();
    p.skip();
    if (p.i != text.size()) p.fail("trailing input");
    return r;
}

}  // namespace kln
