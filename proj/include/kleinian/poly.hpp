#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "kleinian/cyclo.hpp"

namespace kln {

using Exp = std::array<int, 3>;

// Graded-lex: total degree first, then lexicographic on the exponents.
struct GrLex {
    bool operator()(const Exp& a, const Exp& b) const {
        int da = a[0] + a[1] + a[2], db = b[0] + b[1] + b[2];
        if (da != db) return da < db;
        return a > b;
    }
};

// Polynomial in at most three named variables with cyclotomic coefficients.
class Poly {
public:
    using Terms = std::map<Exp, Cyclo, GrLex>;

    Poly() : vars_{"u", "v"} {}
    explicit Poly(std::vector<std::string> vars);

    static Poly constant(const std::vector<std::string>& vars, const Cyclo& c);
    static Poly var(const std::vector<std::string>& vars, const std::string& name);
    static Poly monomial(const std::vector<std::string>& vars, Exp e, const Cyclo& c);

    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return (int)vars_.size(); }
    int var_index(const std::string& name) const;  // throws on unknown name
    const Terms& terms() const { return terms_; }
    const Exp& weights() const { return w_; }
    Poly& set_weights(Exp w) {
        w_ = w;
        return *this;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Cyclo coeff(const Exp& e) const;
    void add_term(const Exp& e, const Cyclo& c);
    int total_degree() const;
    int degree_in(int i) const;
    int conductor() const;  // lcm of coefficient orders

    Poly operator-() const;
    Poly& operator+=(const Poly& b);
    Poly& operator-=(const Poly& b);
    Poly& operator*=(const Poly& b);
    Poly& operator*=(const Cyclo& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Cyclo& c) { return a *= c; }
    friend Poly operator*(const Cyclo& c, Poly a) { return a *= c; }
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    Poly pow(int e) const;

    Poly diff(int i) const;
    Poly diff(const std::string& name) const { return diff(var_index(name)); }

    // Replace variable i by images[i]; all images share one variable list.
    Poly substitute(const std::vector<Poly>& images) const;
    Poly substitute(const std::map<std::string, Poly>& assignment) const;

    Cyclo eval(const std::vector<Cyclo>& at) const;
    std::complex<double> eval(const std::vector<std::complex<double>>& at) const;

    // Distinct weighted degrees of the terms, ascending.
    std::vector<int> weighted_degrees(const Exp& w) const;
    std::vector<int> weighted_degrees() const { return weighted_degrees(w_); }

    std::string str() const;

private:
    void check_compatible(const Poly& b) const;
    std::vector<std::string> vars_;
    Terms terms_;
    Exp w_{1, 1, 1};
};

enum class PolyOp { Add, Sub, Mul };

Poly poly_arith(const Poly& f, const Poly& g, PolyOp op);
Poly poly_diff(const Poly& f, const std::string& var);
Poly poly_substitute(const Poly& f, const std::map<std::string, Poly>& assignment);

// Common weighted degree; throws std::domain_error listing the degrees found.
int weighted_degree(const Poly& f, const Exp& w);
int weighted_degree(const Poly& f);

// {f,g} = f_u g_v - f_v g_u on C[u,v].
Poly poisson_bracket_uv(const Poly& f, const Poly& g);

// Parses + - * ^ and parentheses over the given variables with rational constants.
Poly parse_poly(const std::string& text, const std::vector<std::string>& vars);

const std::vector<std::string>& uv_vars();
const std::vector<std::string>& xyz_vars();
const std::vector<std::string>& t_vars();

}  // namespace kln
