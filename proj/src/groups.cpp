#include "kleinian/groups.hpp"

#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace kln {

GammaType::GammaType(Family f, int rank) : family(f), n(rank) {
    switch (f) {
        case Family::A:
            if (n < 1) throw std::invalid_argument("A_n needs n >= 1");
            break;
        case Family::D:
            if (n < 4) throw std::invalid_argument("D_n needs n >= 4");
            break;
        case Family::E6: n = 6; break;
        case Family::E7: n = 7; break;
        case Family::E8: n = 8; break;
    }
}

GammaType GammaType::parse(const std::string& fam, int n) {
    std::string s = fam;
    for (auto& ch : s) ch = (char)std::toupper((unsigned char)ch);
    if (s == "E6") return {Family::E6, 6};
    if (s == "E7") return {Family::E7, 7};
    if (s == "E8") return {Family::E8, 8};
    if (s.size() > 1 && (s[0] == 'A' || s[0] == 'D')) {
        try {
            size_t pos = 0;
            n = std::stoi(s.substr(1), &pos);
            if (pos != s.size() - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("unknown type '" + fam + "'");
        }
        s = s.substr(0, 1);
    }
    if (s == "A") return {Family::A, n};
    if (s == "D") return {Family::D, n};
    throw std::invalid_argument("unknown type '" + fam + "'");
}

std::string GammaType::name() const {
    switch (family) {
        case Family::A: return "A" + std::to_string(n);
        case Family::D: return "D" + std::to_string(n);
        case Family::E6: return "E6";
        case Family::E7: return "E7";
        case Family::E8: return "E8";
    }
    return "?";
}

int GammaType::order() const {
    switch (family) {
        case Family::A: return n + 1;
        case Family::D: return 4 * (n - 2);
        case Family::E6: return 24;
        case Family::E7: return 48;
        case Family::E8: return 120;
    }
    return 0;
}

int GammaType::conductor() const {
    switch (family) {
        case Family::A: return n + 1;
        case Family::D: return 2 * (n - 2);
        case Family::E6:
        case Family::E7: return 8;
        case Family::E8: return 20;
    }
    return 1;
}

int GammaType::big_conductor() const {
    switch (family) {
        case Family::A: return 2 * (n + 1);
        case Family::D: return 4 * (n - 2);
        default: return conductor();
    }
}

SL2 SL2::operator*(const SL2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

SL2 SL2::inverse() const {
    Cyclo di = det().inverse();
    return {d * di, -b * di, -c * di, a * di};
}

std::string SL2::key(int order) const {
    return a.embed(order).key() + "|" + b.embed(order).key() + "|" + c.embed(order).key() + "|" +
           d.embed(order).key();
}

std::string SL2::str() const {
    return "[[" + a.str() + ", " + b.str() + "], [" + c.str() + ", " + d.str() + "]]";
}

namespace {

SL2 diag(const Cyclo& e) { return {e, Cyclo(0), Cyclo(0), e.inverse()}; }

}  // namespace

std::vector<SL2> printed_generators(const GammaType& g) {
    Cyclo i = Cyclo::zeta(4);
    Cyclo one(1), zero(0);
    switch (g.family) {
        case Family::A: return {diag(Cyclo::zeta(g.n + 1))};
        case Family::D: {
            Cyclo e = Cyclo::zeta(2 * (g.n - 2));
            return {diag(e), {zero, one, -one, zero}};
        }
        case Family::E6:
        case Family::E7: {
            Cyclo s = (one - i).inverse();
            SL2 t{s, s * i, s, -s * i};
            SL2 first = g.family == Family::E6 ? diag(i) : diag(Cyclo::zeta(8));
            return {first, {zero, i, i, zero}, t};
        }
        case Family::E8: {
            Cyclo e5 = Cyclo::zeta(5);
            Cyclo p = e5 - e5.pow(4), q = e5.pow(2) - e5.pow(3);
            Cyclo sqrt5 = e5 - e5.pow(2) - e5.pow(3) + e5.pow(4);
            Cyclo s = sqrt5.inverse();
            return {diag(Cyclo::zeta(10)), {zero, i, i, zero}, {s * p, s * q, s * q, -s * p}};
        }
    }
    return {};
}

std::vector<SL2> group_generators(const GammaType& g) {
    if (g.is_D() && g.n % 2 == 1) {
        Cyclo i = Cyclo::zeta(4);
        return {diag(Cyclo::zeta(2 * (g.n - 2))), {Cyclo(0), i, i, Cyclo(0)}};
    }
    if (g.family != Family::E8) return printed_generators(g);
    Cyclo e5 = Cyclo::zeta(5);
    Cyclo p = e5 - e5.pow(4), q = e5.pow(2) - e5.pow(3);
    Cyclo s = (e5 - e5.pow(2) - e5.pow(3) + e5.pow(4)).inverse();
    return {diag(Cyclo::zeta(10)), {Cyclo(0), Cyclo(1), Cyclo(-1), Cyclo(0)}, {-s * p, s * q, s * q, s * p}};
}

std::vector<SL2> closure(const std::vector<SL2>& gens, int order_hint, size_t bound) {
    std::vector<SL2> elems;
    std::unordered_set<std::string> seen;
    std::deque<SL2> queue;
    SL2 id;
    seen.insert(id.key(order_hint));
    elems.push_back(id);
    queue.push_back(id);
    while (!queue.empty()) {
        SL2 h = queue.front();
        queue.pop_front();
        for (auto& g : gens) {
            SL2 p = h * g;
            if (seen.insert(p.key(order_hint)).second) {
                elems.push_back(p);
                queue.push_back(p);
                if (elems.size() > bound) throw std::runtime_error("group closure exceeded safety bound");
            }
        }
    }
    return elems;
}

std::vector<SL2> group_elements(const GammaType& g) {
    return closure(group_generators(g), g.big_conductor() * 4 / std::gcd(g.big_conductor(), 4), 10 * g.order());
}

Poly group_act(const SL2& g, const Poly& f) {
    if (f.vars() != uv_vars()) throw std::invalid_argument("group_act: expects a polynomial in u,v");
    SL2 h = g.inverse();
    Poly u = Poly::var(uv_vars(), "u"), v = Poly::var(uv_vars(), "v");
    Poly nu = u * h.a + v * h.b;
    Poly nv = u * h.c + v * h.d;
    Poly r = f.substitute(std::vector<Poly>{nu, nv});
    r.set_weights(f.weights());
    return r;
}

bool contains(const std::vector<SL2>& group, const SL2& h, int order) {
    std::string k = h.key(order);
    for (auto& g : group)
        if (g.key(order) == k) return true;
    return false;
}

bool normalizes(const SL2& g, const std::vector<SL2>& group, int order) {
    SL2 gi = g.inverse();
    std::set<std::string> keys;
    for (auto& h : group) keys.insert(h.key(order));
    for (auto& h : group)
        if (!keys.count((g * h * gi).key(order))) return false;
    return true;
}

}  // namespace kln
