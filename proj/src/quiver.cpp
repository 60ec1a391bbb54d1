#include "kleinian/quiver.hpp"

#include <numeric>
#include <stdexcept>

#include "kleinian/involutions.hpp"
#include "kleinian/presentation.hpp"

namespace kln {

std::string Arrow::name() const { return std::to_string(head) + "<-" + std::to_string(tail); }

int QuiverSetting::find_arrow(int tail, int head) const {
    for (size_t a = 0; a < arrows.size(); ++a)
        if (arrows[a].tail == tail && arrows[a].head == head) return (int)a;
    throw std::invalid_argument("no arrow " + std::to_string(tail) + "->" + std::to_string(head) + " in " +
                                gamma.name());
}

int QuiverSetting::find_arrow(const std::string& name) const {
    for (size_t a = 0; a < arrows.size(); ++a)
        if (arrows[a].name() == name) return (int)a;
    throw std::invalid_argument("no arrow named " + name + " in " + gamma.name());
}

QuiverSetting build_setting(const GammaType& g) {
    QuiverSetting s;
    s.gamma = g;
    int n = g.n;
    auto chain = [&](int from, int to) {
        for (int i = from; i < to; ++i) s.arrows.push_back({i, i + 1});
    };
    switch (g.family) {
        case Family::A:
            s.delta.assign(n + 1, 1);
            for (int i = 0; i <= n; ++i) s.arrows.push_back({i, (i + 1) % (n + 1)});
            break;
        case Family::D:
            s.delta.assign(n + 1, 2);
            s.delta[0] = s.delta[1] = s.delta[n - 1] = s.delta[n] = 1;
            s.arrows.push_back({0, 2});
            s.arrows.push_back({1, 2});
            chain(2, n - 2);
            s.arrows.push_back({n - 2, n - 1});
            s.arrows.push_back({n - 2, n});
            break;
        case Family::E6:
            s.delta = {1, 2, 3, 2, 1, 2, 1};
            chain(0, 4);
            s.arrows.push_back({2, 5});
            s.arrows.push_back({5, 6});
            break;
        case Family::E7:
            s.delta = {1, 2, 3, 4, 3, 2, 1, 2};
            chain(0, 6);
            s.arrows.push_back({3, 7});
            break;
        case Family::E8:
            s.delta = {1, 2, 3, 4, 5, 6, 4, 2, 3};
            chain(0, 7);
            s.arrows.push_back({5, 8});
            break;
    }
    return s;
}

template <class T>
PointT<T> zero_point(const QuiverSetting& s) {
    PointT<T> p;
    for (auto& a : s.arrows) {
        p.B.emplace_back(s.delta[a.head], s.delta[a.tail]);
        p.Bs.emplace_back(s.delta[a.tail], s.delta[a.head]);
    }
    p.l0 = Mat<T>(s.delta[0], 1);
    p.k0 = Mat<T>(1, s.delta[0]);
    return p;
}

template <class T>
void check_shapes(const QuiverSetting& s, const PointT<T>& p) {
    auto bad = [&](const std::string& what) {
        throw std::invalid_argument("shape mismatch for " + what + " in " + s.gamma.name());
    };
    if (p.B.size() != s.arrows.size() || p.Bs.size() != s.arrows.size()) bad("arrow count");
    for (size_t a = 0; a < s.arrows.size(); ++a) {
        int h = s.delta[s.arrows[a].head], t = s.delta[s.arrows[a].tail];
        if (p.B[a].rows != h || p.B[a].cols != t) bad("B" + s.arrows[a].name());
        if (p.Bs[a].rows != t || p.Bs[a].cols != h) bad("B*" + s.arrows[a].name());
    }
    if (p.l0.rows != s.delta[0] || p.l0.cols != 1) bad("l0");
    if (p.k0.rows != 1 || p.k0.cols != s.delta[0]) bad("k0");
}

template <class T>
bool points_equal(const PointT<T>& p, const PointT<T>& q, double tol) {
    auto close = [&](const Mat<T>& a, const Mat<T>& b) {
        if (a.rows != b.rows || a.cols != b.cols) return false;
        return (a - b).is_zero(tol);
    };
    if (p.B.size() != q.B.size()) return false;
    for (size_t a = 0; a < p.B.size(); ++a)
        if (!close(p.B[a], q.B[a]) || !close(p.Bs[a], q.Bs[a])) return false;
    return close(p.l0, q.l0) && close(p.k0, q.k0);
}

template <class T>
std::vector<Mat<T>> moment_map(const QuiverSetting& s, const PointT<T>& p) {
    check_shapes(s, p);
    std::vector<Mat<T>> mu;
    for (int d : s.delta) mu.emplace_back(d, d);
    for (size_t a = 0; a < s.arrows.size(); ++a) {
        mu[s.arrows[a].head] += p.B[a] * p.Bs[a];
        mu[s.arrows[a].tail] -= p.Bs[a] * p.B[a];
    }
    mu[0] += p.l0 * p.k0;
    return mu;
}

template <class T>
T symplectic_pairing(const QuiverSetting& s, const PointT<T>& p, const PointT<T>& q) {
    check_shapes(s, p);
    check_shapes(s, q);
    T w(0);
    for (size_t a = 0; a < s.arrows.size(); ++a) {
        w += (p.B[a] * q.Bs[a]).trace();
        w -= (p.Bs[a] * q.B[a]).trace();
    }
    w += (p.l0 * q.k0).trace();
    w -= (p.k0 * q.l0).trace();
    return w;
}

template <class T>
PointT<T> gauge_act(const QuiverSetting& s, const std::vector<Mat<T>>& g, const PointT<T>& p) {
    check_shapes(s, p);
    if ((int)g.size() != s.vertices()) throw std::invalid_argument("gauge element has the wrong number of factors");
    std::vector<Mat<T>> ginv;
    for (auto& gi : g) ginv.push_back(mat_inverse(gi));
    PointT<T> q = p;
    for (size_t a = 0; a < s.arrows.size(); ++a) {
        int t = s.arrows[a].tail, h = s.arrows[a].head;
        q.B[a] = g[h] * p.B[a] * ginv[t];
        q.Bs[a] = g[t] * p.Bs[a] * ginv[h];
    }
    q.l0 = g[0] * p.l0;
    q.k0 = p.k0 * ginv[0];
    return q;
}

template <class T>
PointT<T> scale_point(const PointT<T>& p, const T& t) {
    T inv = entry_inverse(t);
    PointT<T> q = p;
    for (auto& m : q.B) m *= inv;
    for (auto& m : q.Bs) m *= inv;
    q.l0 *= inv;
    q.k0 *= inv;
    return q;
}

template <class T>
Mat<T> word_matrix(const QuiverSetting& s, const PointT<T>& p, const Word& w) {
    if (w.empty()) throw std::invalid_argument("empty word");
    auto letter = [&](const Letter& l) -> const Mat<T>& { return l.star ? p.Bs.at(l.arrow) : p.B.at(l.arrow); };
    Mat<T> m = letter(w[0]);
    for (size_t k = 1; k < w.size(); ++k) m = m * letter(w[k]);
    (void)s;
    return m;
}

template <class T>
T trace_word(const QuiverSetting& s, const PointT<T>& p, const Word& w) {
    return word_matrix(s, p, w).trace();
}

int omega_letters(const Word& w) {
    int c = 0;
    for (auto& l : w)
        if (!l.star) ++c;
    return c;
}

namespace {

// Columns of m spanning the same space as m, reduced to a basis.
Mat<Cyclo> column_basis(const Mat<Cyclo>& m) {
    Mat<Cyclo> out(m.rows, 0);
    int r = 0;
    for (int j = 0; j < m.cols; ++j) {
        Mat<Cyclo> trial(m.rows, out.cols + 1);
        for (int i = 0; i < m.rows; ++i) {
            for (int k = 0; k < out.cols; ++k) trial(i, k) = out(i, k);
            trial(i, out.cols) = m(i, j);
        }
        int rr = mat_rank(trial);
        if (rr > r) {
            out = trial;
            r = rr;
        }
    }
    return out;
}

Mat<Cyclo> hcat(const Mat<Cyclo>& a, const Mat<Cyclo>& b) {
    Mat<Cyclo> m(a.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) m(i, j) = a(i, j);
        for (int j = 0; j < b.cols; ++j) m(i, a.cols + j) = b(i, j);
    }
    return m;
}

template <class T>
Mat<T> outgoing_map(const QuiverSetting& s, const PointT<T>& p, int i) {
    std::vector<const Mat<T>*> blocks;
    for (size_t a = 0; a < s.arrows.size(); ++a) {
        if (s.arrows[a].tail == i) blocks.push_back(&p.B[a]);
        if (s.arrows[a].head == i) blocks.push_back(&p.Bs[a]);
    }
    int rows = 0;
    for (auto* b : blocks) rows += b->rows;
    Mat<T> m(rows, s.delta[i]);
    int r0 = 0;
    for (auto* b : blocks) {
        for (int r = 0; r < b->rows; ++r)
            for (int c = 0; c < b->cols; ++c) m(r0 + r, c) = (*b)(r, c);
        r0 += b->rows;
    }
    return m;
}

}  // namespace

bool is_semistable(const QuiverSetting& s, const ExactPoint& p) {
    check_shapes(s, p);
    std::vector<Mat<Cyclo>> span;
    for (int d : s.delta) span.emplace_back(d, 0);
    span[0] = column_basis(p.l0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t a = 0; a < s.arrows.size(); ++a) {
            int t = s.arrows[a].tail, h = s.arrows[a].head;
            for (int dir = 0; dir < 2; ++dir) {
                int from = dir ? h : t, to = dir ? t : h;
                if (span[from].cols == 0 || span[to].cols == s.delta[to]) continue;
                const Mat<Cyclo>& m = dir ? p.Bs[a] : p.B[a];
                Mat<Cyclo> grown = column_basis(hcat(span[to], m * span[from]));
                if (grown.cols > span[to].cols) {
                    span[to] = grown;
                    changed = true;
                }
            }
        }
    }
    for (int i = 0; i < s.vertices(); ++i)
        if (span[i].cols != s.delta[i]) return false;
    return true;
}

std::vector<int> exceptional_membership(const QuiverSetting& s, const ExactPoint& p) {
    if (!p.k0.is_zero()) throw std::invalid_argument("exceptional_membership needs k0 = 0");
    if (!is_semistable(s, p)) throw std::invalid_argument("exceptional_membership needs a semistable point");
    std::vector<int> out;
    for (int i = 1; i < s.vertices(); ++i)
        if (mat_rank(outgoing_map(s, p, i)) < s.delta[i]) out.push_back(i);
    return out;
}

std::vector<int> exceptional_membership(const QuiverSetting& s, const FloatPoint& p, double tol) {
    check_shapes(s, p);
    std::vector<int> out;
    for (int i = 1; i < s.vertices(); ++i)
        if (mat_rank(outgoing_map(s, p, i), tol) < s.delta[i]) out.push_back(i);
    return out;
}

TraceWords trace_words(const QuiverSetting& s) {
    auto B = [&](int t, int h) { return Letter{s.find_arrow(t, h), false}; };
    auto S = [&](int t, int h) { return Letter{s.find_arrow(t, h), true}; };
    auto cat = [](std::initializer_list<Word> parts) {
        Word w;
        for (auto& p : parts) w.insert(w.end(), p.begin(), p.end());
        return w;
    };
    auto power = [](const Word& w, int r) {
        Word out;
        for (int k = 0; k < r; ++k) out.insert(out.end(), w.begin(), w.end());
        return out;
    };
    TraceWords tw;
    int n = s.gamma.n;
    switch (s.gamma.family) {
        case Family::A: {
            for (int i = n; i >= 0; --i) tw.x.push_back(B(i, (i + 1) % (n + 1)));
            for (int i = 0; i <= n; ++i) tw.y.push_back(S(i, (i + 1) % (n + 1)));
            tw.z = {S(0, 1), B(0, 1)};
            for (int i = 1; i <= n; ++i)
                tw.aux.push_back({"z@" + std::to_string(i), {S(i, (i + 1) % (n + 1)), B(i, (i + 1) % (n + 1))}});
            break;
        }
        case Family::D: {
            Word up, down;
            for (int i = n - 3; i >= 2; --i) up.push_back(B(i, i + 1));
            for (int i = 2; i <= n - 3; ++i) down.push_back(S(i, i + 1));
            Word in = {S(0, 2)}, out = {B(0, 2)};
            Word leg_n = {S(n - 2, n), B(n - 2, n)}, leg_m = {S(n - 2, n - 1), B(n - 2, n - 1)};
            tw.x = {S(0, 2), B(1, 2), S(1, 2), B(0, 2)};
            tw.y = cat({in, down, leg_n, up, out});
            tw.z = cat({in, down, leg_n, leg_m, up, out});
            tw.aux.push_back({"y'", cat({in, down, leg_m, up, out})});
            tw.aux.push_back({"z'", cat({in, down, leg_m, leg_n, up, out})});
            if (n >= 5) {
                Word left = {S(2, 3), B(2, 3)}, right = {B(n - 3, n - 2), S(n - 3, n - 2)};
                for (int r = 1; r <= 3; ++r) {
                    std::string tag = "[" + std::to_string(r) + "]";
                    tw.aux.push_back({"loop1" + tag, cat({{S(1, 2)}, power(left, r), {B(1, 2)}})});
                    tw.aux.push_back({"loop0" + tag, cat({{S(0, 2)}, power(left, r), {B(0, 2)}})});
                    tw.aux.push_back(
                        {"loop" + std::to_string(n - 1) + tag, cat({{B(n - 2, n - 1)}, power(right, r), {S(n - 2, n - 1)}})});
                    tw.aux.push_back(
                        {"loop" + std::to_string(n) + tag, cat({{B(n - 2, n)}, power(right, r), {S(n - 2, n)}})});
                }
            }
            break;
        }
        case Family::E6: {
            Word in = {S(0, 1), S(1, 2)}, out = {B(1, 2), B(0, 1)};
            Word arm3 = {S(2, 3), S(3, 4), B(3, 4), B(2, 3)}, arm5 = {S(2, 5), S(5, 6), B(5, 6), B(2, 5)};
            tw.x = cat({in, {S(2, 3), B(2, 3)}, out});
            tw.y = cat({in, arm3, out});
            tw.z = cat({in, arm5, arm3, out});
            tw.aux.push_back({"x'", cat({in, {S(2, 5), B(2, 5)}, out})});
            tw.aux.push_back({"z'", cat({in, arm3, arm5, out})});
            break;
        }
        case Family::E7: {
            Word in = {S(0, 1), S(1, 2), S(2, 3)}, out = {B(2, 3), B(1, 2), B(0, 1)};
            Word L = {S(3, 4), B(3, 4)}, P = {S(3, 7), B(3, 7)};
            tw.x = cat({in, L, out});
            tw.y = cat({in, power(L, 3), out});
            tw.z = cat({in, power(L, 2), P, power(L, 3), out});
            break;
        }
        case Family::E8: {
            Word in = {S(0, 1), S(1, 2), S(2, 3), S(3, 4), S(4, 5)};
            Word out = {B(4, 5), B(3, 4), B(2, 3), B(1, 2), B(0, 1)};
            Word L = {S(5, 6), B(5, 6)}, E = {S(5, 8), B(5, 8)}, M = {B(4, 5), S(4, 5)};
            tw.x = cat({in, E, out});
            tw.y = cat({in, power(L, 2), E, power(L, 2), out});
            tw.z = cat({in, power(L, 2), power(M, 3), power(L, 2), E, power(L, 2), out});
            break;
        }
    }
    return tw;
}

template <class T>
Traces<T> trace_generators(const QuiverSetting& s, const PointT<T>& p) {
    check_shapes(s, p);
    TraceWords tw = trace_words(s);
    Traces<T> out;
    out.x = trace_word(s, p, tw.x);
    out.y = trace_word(s, p, tw.y);
    out.z = trace_word(s, p, tw.z);
    for (auto& [name, w] : tw.aux) out.aux[name] = trace_word(s, p, w);
    return out;
}

namespace {

template <class T>
T power(const T& v, int e) {
    T r(1);
    for (int k = 0; k < e; ++k) r *= v;
    return r;
}

template <class T>
T cast_scalar(const Cyclo& c) {
    if constexpr (std::is_same_v<T, Cyclo>)
        return c;
    else
        return cyclo_to_float(c);
}

double magnitude(const Cyclo& c) { return std::abs(cyclo_to_float(c)); }
double magnitude(const Complex& c) { return std::abs(c); }

template <class T>
T eval_xyz(const Poly& f, const T& x, const T& y, const T& z) {
    return f.eval(std::vector<T>{x, y, z});
}

}  // namespace

template <class T>
std::vector<Identity<T>> trace_identities(const QuiverSetting& s, const PointT<T>& p) {
    Traces<T> t = trace_generators(s, p);
    std::vector<Identity<T>> out;
    // Residual is the sum of the terms; the scale is the largest term magnitude, at least 1.
    auto add = [&](const std::string& name, const std::vector<T>& terms) {
        Identity<T> id{name, T(0), 1.0};
        for (auto& v : terms) {
            id.residual += v;
            id.scale = std::max(id.scale, magnitude(v));
        }
        out.push_back(id);
    };
    const Poly& F = presentation(s.gamma).relation;
    std::vector<T> mono;
    for (auto& [e, c] : F.terms()) mono.push_back(cast_scalar<T>(c) * power(t.x, e[0]) * power(t.y, e[1]) * power(t.z, e[2]));
    add("F(x,y,z)", mono);
    int n = s.gamma.n;
    switch (s.gamma.family) {
        case Family::A:
            for (int i = 1; i <= n; ++i) {
                std::string k = "z@" + std::to_string(i);
                add(k + " - z", {t.aux[k], -t.z});
            }
            break;
        case Family::D: {
            T y2 = t.aux["y'"], z2 = t.aux["z'"];
            if (n % 2 == 0) {
                add("y + y' - x^" + std::to_string((n - 2) / 2), {t.y, y2, -power(t.x, (n - 2) / 2)});
                add("z + z'", {t.z, z2});
            } else {
                add("y + y'", {t.y, y2});
                add("z + z' - x^" + std::to_string((n - 1) / 2), {t.z, z2, -power(t.x, (n - 1) / 2)});
            }
            add("z z' - x y y'", {t.z * z2, -(t.x * t.y * y2)});
            if (n >= 5)
                for (int r = 1; r <= 3; ++r) {
                    T want = r % 2 ? power(t.x, (r + 1) / 2) : T(0);
                    std::string tag = "[" + std::to_string(r) + "]";
                    for (std::string v : std::vector<std::string>{"1", "0", std::to_string(n - 1), std::to_string(n)})
                        add("loop" + v + tag + (r % 2 ? " - x^" + std::to_string((r + 1) / 2) : ""),
                            {t.aux["loop" + v + tag], -want});
                }
            break;
        }
        case Family::E6:
            add("x + x'", {t.x, t.aux["x'"]});
            add("z + z' + x^2", {t.z, t.aux["z'"], t.x * t.x});
            break;
        default: break;
    }
    return out;
}

int LiftSpec::symplectic_sign() const {
    Cyclo s = twist_B * twist_Bs;
    if (swap_dual) s = -s;
    if (s == Cyclo(1)) return 1;
    if (s == Cyclo(-1)) return -1;
    return 0;
}

LiftSpec identity_lift(const GammaType& g) {
    LiftSpec l;
    l.gamma = g;
    l.case_label = "id";
    int nv = build_setting(g).vertices();
    l.tau.resize(nv);
    std::iota(l.tau.begin(), l.tau.end(), 0);
    return l;
}

LiftSpec lift_catalog(const GammaType& g, const std::string& label) {
    find_involution(g, label);  // validates the case
    LiftSpec l = identity_lift(g);
    l.case_label = label;
    l.framing_sign = -1;
    l.twist_B = Cyclo(-1);
    int n = g.n;
    switch (g.family) {
        case Family::A:
            if (label == "I") {
                l.twist_B = Cyclo(1);
                l.swap_dual = true;
                for (int i = 1; i <= n; ++i) l.tau[i] = n + 1 - i;
            } else if (label == "III") {
                Cyclo e = Cyclo::zeta(2 * n + 2);
                l.twist_B = -e;
                l.twist_Bs = e.inverse();
                for (int i = 0; i <= n; ++i) l.square_gauge.push_back(e.pow(2 * i));
            }
            break;
        case Family::D:
            if (label == "II") std::swap(l.tau[n - 1], l.tau[n]);
            break;
        case Family::E6:
            if (label == "II") {
                std::swap(l.tau[3], l.tau[5]);
                std::swap(l.tau[4], l.tau[6]);
            }
            break;
        default: break;
    }
    return l;
}

std::vector<LiftSpec> lift_catalog(const GammaType& g) {
    std::vector<LiftSpec> out;
    for (auto& inv : involution_catalog(g)) out.push_back(lift_catalog(g, inv.case_label));
    return out;
}

template <class T>
PointT<T> apply_lift(const QuiverSetting& s, const LiftSpec& spec, const PointT<T>& p) {
    check_shapes(s, p);
    if (!(spec.gamma == s.gamma)) throw std::invalid_argument("lift and setting are for different types");
    T cB = cast_scalar<T>(spec.twist_B), cBs = cast_scalar<T>(spec.twist_Bs);
    PointT<T> q = p;
    for (size_t a = 0; a < s.arrows.size(); ++a) {
        int t = spec.tau[s.arrows[a].tail], h = spec.tau[s.arrows[a].head];
        if (spec.swap_dual) {
            int b = s.find_arrow(h, t);
            q.B[a] = p.Bs[b] * cB;
            q.Bs[a] = p.B[b] * cBs;
        } else {
            int b = s.find_arrow(t, h);
            q.B[a] = p.B[b] * cB;
            q.Bs[a] = p.Bs[b] * cBs;
        }
    }
    q.k0 = p.k0 * T(spec.framing_sign);
    check_shapes(s, q);
    return q;
}

namespace {

template <class T>
double residual_size(const T& v) {
    return entry_size(v);
}

template <class T>
bool small(const T& v, double tol) {
    return entry_is_zero(v, tol);
}

}  // namespace

template <class T>
LiftReport verify_lift(const LiftSpec& spec, const QuiverSetting& s, const std::vector<PointT<T>>& samples, double tol) {
    LiftReport r;
    std::array<Poly, 3> theta;
    if (spec.case_label == "id") {
        theta = {parse_poly("x", xyz_vars()), parse_poly("y", xyz_vars()), parse_poly("z", xyz_vars())};
    } else {
        theta = find_involution(s.gamma, spec.case_label).images;
    }
    T sign = T(spec.symplectic_sign());
    bool identity_tau = !spec.swap_dual;
    for (int i = 0; i < (int)spec.tau.size(); ++i)
        if (spec.tau[i] != i) identity_tau = false;
    TraceWords tw = trace_words(s);
    std::vector<std::pair<std::string, Word>> words = {{"x", tw.x}, {"y", tw.y}, {"z", tw.z}};
    words.insert(words.end(), tw.aux.begin(), tw.aux.end());
    r.parity_checked = identity_tau && s.gamma.family != Family::A;

    auto note = [&](bool& flag, const std::string& msg, double res) {
        r.max_residual = std::max(r.max_residual, res);
        if (flag) r.failures.push_back(msg);
        flag = false;
    };

    std::vector<PointT<T>> lifted;
    for (size_t k = 0; k < samples.size(); ++k) {
        const PointT<T>& u = samples[k];
        PointT<T> v = apply_lift(s, spec, u);
        lifted.push_back(v);
        std::string tag = " at sample " + std::to_string(k);

        auto mu_u = moment_map(s, u), mu_v = moment_map(s, v);
        bool on_fibre = true;
        for (auto& m : mu_u) on_fibre = on_fibre && m.is_zero(tol);
        for (int i = 0; i < s.vertices(); ++i) {
            Mat<T> d = mu_v[i] - mu_u[spec.tau[i]] * sign;
            r.max_residual = std::max(r.max_residual, d.max_abs());
            if (!d.is_zero(tol)) note(r.moment_relation, "moment map relation fails at vertex " + std::to_string(i) + tag, d.max_abs());
        }

        Traces<T> tu = trace_generators(s, u), tv = trace_generators(s, v);
        T got[3] = {tv.x, tv.y, tv.z};
        if (on_fibre) ++r.trace_samples;
        for (int i = 0; i < 3 && on_fibre; ++i) {
            T want = eval_xyz(theta[i], tu.x, tu.y, tu.z);
            double res = residual_size(T(got[i] - want));
            r.max_residual = std::max(r.max_residual, res);
            if (!small(T(got[i] - want), tol)) note(r.traces_match, std::string("trace ") + "xyz"[i] + " mismatch" + tag, res);
        }

        if (r.parity_checked) {
            T cB = cast_scalar<T>(spec.twist_B), cBs = cast_scalar<T>(spec.twist_Bs);
            for (auto& [name, w] : words) {
                int om = omega_letters(w);
                if (2 * om != (int)w.size()) note(r.parity, "word " + name + " is not half Omega", 0);
                T factor = power(cB, om) * power(cBs, (int)w.size() - om);
                T d = trace_word(s, v, w) - factor * trace_word(s, u, w);
                if (!small(d, tol)) note(r.parity, "sign prediction fails for " + name + tag, residual_size(d));
            }
        }

        PointT<T> back = apply_lift(s, spec, v);
        PointT<T> want = u;
        if (!spec.square_gauge.empty()) {
            std::vector<Mat<T>> g;
            for (int i = 0; i < s.vertices(); ++i)
                g.push_back(Mat<T>::identity(s.delta[i]) * cast_scalar<T>(spec.square_gauge[i]));
            want = gauge_act(s, g, u);
        }
        if (!points_equal(back, want, tol)) note(r.involutive, "lift is not involutive" + tag, 0);
    }
    for (size_t a = 0; a < samples.size(); ++a)
        for (size_t b = a + 1; b < samples.size(); ++b) {
            T d = symplectic_pairing(s, lifted[a], lifted[b]) - sign * symplectic_pairing(s, samples[a], samples[b]);
            if (!small(d, tol)) note(r.symplectic_relation, "symplectic relation fails", residual_size(d));
        }
    return r;
}

ExactPoint typeA_family_point(const QuiverSetting& s, const Cyclo& t) {
    if (!s.gamma.is_A()) throw std::invalid_argument("typeA_family_point needs type A");
    ExactPoint p = zero_point<Cyclo>(s);
    for (size_t a = 0; a < s.arrows.size(); ++a) {
        p.B[a](0, 0) = Cyclo(1);
        p.Bs[a](0, 0) = t;
    }
    p.l0(0, 0) = Cyclo(1);
    return p;
}

ExactPoint typeA_component_point(const QuiverSetting& s, int i, const Cyclo& c) {
    if (!s.gamma.is_A()) throw std::invalid_argument("typeA_component_point needs type A");
    int n = s.gamma.n;
    if (i < 1 || i > n) throw std::invalid_argument("vertex out of range");
    ExactPoint p = zero_point<Cyclo>(s);
    for (int j = 0; j <= n; ++j) {
        int a = s.find_arrow(j, (j + 1) % (n + 1));
        if (j < i) p.B[a](0, 0) = Cyclo(1);
        if (j > i) p.Bs[a](0, 0) = Cyclo(1);
        if (j == i) p.Bs[a](0, 0) = c;
    }
    p.l0(0, 0) = Cyclo(1);
    return p;
}

ExactPoint random_exact_point(const QuiverSetting& s, std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    ExactPoint p = zero_point<Cyclo>(s);
    auto fill = [&](Mat<Cyclo>& m) {
        for (auto& e : m.a) e = Cyclo(dist(rng));
    };
    for (auto& m : p.B) fill(m);
    for (auto& m : p.Bs) fill(m);
    fill(p.l0);
    fill(p.k0);
    return p;
}

std::vector<Mat<Cyclo>> random_gauge(const QuiverSetting& s, std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Mat<Cyclo>> g;
    for (int d : s.delta) {
        Mat<Cyclo> m(d, d);
        do {
            for (auto& e : m.a) e = Cyclo(dist(rng));
        } while (mat_rank(m) < d);
        g.push_back(m);
    }
    return g;
}

FloatPoint to_float(const ExactPoint& p) {
    auto conv = [](const Mat<Cyclo>& m) {
        Mat<Complex> f(m.rows, m.cols);
        for (size_t k = 0; k < m.a.size(); ++k) f.a[k] = cyclo_to_float(m.a[k]);
        return f;
    };
    FloatPoint q;
    for (auto& m : p.B) q.B.push_back(conv(m));
    for (auto& m : p.Bs) q.Bs.push_back(conv(m));
    q.l0 = conv(p.l0);
    q.k0 = conv(p.k0);
    return q;
}

namespace {

using nlohmann::json;

json entry_json(const Cyclo& c) {
    if (c.is_rational()) return c.to_rational().get_str();
    json coeffs = json::array();
    for (auto& q : c.coeffs()) coeffs.push_back(q.get_str());
    return json{{"order", c.order()}, {"coeffs", coeffs}};
}

json entry_json(const Complex& c) {
    if (c.imag() == 0) return c.real();
    return json::array({c.real(), c.imag()});
}

Cyclo entry_from(const json& j, Cyclo*) {
    if (j.is_string()) return Cyclo(mpq_class(j.get<std::string>()));
    if (j.is_number_integer()) return Cyclo(j.get<long>());
    if (j.is_object()) {
        std::vector<mpq_class> c;
        for (auto& e : j.at("coeffs")) c.emplace_back(e.get<std::string>());
        return cyclo_make(j.at("order").get<int>(), c);
    }
    throw std::invalid_argument("exact entries must be \"p/q\" strings or {order, coeffs} objects");
}

Complex entry_from(const json& j, Complex*) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw std::invalid_argument("float entries must be numbers or [re, im] pairs");
}

template <class T>
json mat_json(const Mat<T>& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(entry_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

template <class T>
Mat<T> mat_from(const json& j, int rows, int cols, const std::string& what) {
    if (!j.is_array() || (int)j.size() != rows) throw std::invalid_argument("wrong row count for " + what);
    Mat<T> m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || (int)j[i].size() != cols) throw std::invalid_argument("wrong column count for " + what);
        for (int c = 0; c < cols; ++c) m(i, c) = entry_from(j[i][c], (T*)nullptr);
    }
    return m;
}

template <class T>
json dump_point(const QuiverSetting& s, const PointT<T>& p, const char* field) {
    check_shapes(s, p);
    json j;
    j["type"] = s.gamma.name();
    j["field"] = field;
    for (size_t a = 0; a < s.arrows.size(); ++a) {
        j["B"][s.arrows[a].name()] = mat_json(p.B[a]);
        j["Bstar"][s.arrows[a].name()] = mat_json(p.Bs[a]);
    }
    j["l0"] = mat_json(p.l0);
    j["k0"] = mat_json(p.k0);
    return j;
}

template <class T>
PointT<T> parse_point(const QuiverSetting& s, const json& j) {
    if (j.contains("type") && j.at("type").get<std::string>() != s.gamma.name())
        throw std::invalid_argument("point is for type " + j.at("type").get<std::string>());
    PointT<T> p = zero_point<T>(s);
    for (size_t a = 0; a < s.arrows.size(); ++a) {
        std::string nm = s.arrows[a].name();
        if (j.contains("B") && j["B"].contains(nm)) p.B[a] = mat_from<T>(j["B"][nm], p.B[a].rows, p.B[a].cols, "B" + nm);
        if (j.contains("Bstar") && j["Bstar"].contains(nm))
            p.Bs[a] = mat_from<T>(j["Bstar"][nm], p.Bs[a].rows, p.Bs[a].cols, "B*" + nm);
    }
    if (j.contains("l0")) p.l0 = mat_from<T>(j["l0"], p.l0.rows, 1, "l0");
    if (j.contains("k0")) p.k0 = mat_from<T>(j["k0"], 1, p.k0.cols, "k0");
    return p;
}

}  // namespace

nlohmann::json point_to_json(const QuiverSetting& s, const ExactPoint& p) { return dump_point(s, p, "exact"); }
nlohmann::json point_to_json(const QuiverSetting& s, const FloatPoint& p) { return dump_point(s, p, "float"); }

ExactPoint exact_point_from_json(const QuiverSetting& s, const nlohmann::json& j) {
    if (j.value("field", "exact") != "exact") throw std::invalid_argument("expected an exact point");
    return parse_point<Cyclo>(s, j);
}

FloatPoint float_point_from_json(const QuiverSetting& s, const nlohmann::json& j) {
    if (j.value("field", "float") == "exact") return to_float(parse_point<Cyclo>(s, j));
    return parse_point<Complex>(s, j);
}

#define KLN_INSTANTIATE(T)                                                                                  \
    template PointT<T> zero_point<T>(const QuiverSetting&);                                                 \
    template void check_shapes<T>(const QuiverSetting&, const PointT<T>&);                                  \
    template bool points_equal<T>(const PointT<T>&, const PointT<T>&, double);                              \
    template std::vector<Mat<T>> moment_map<T>(const QuiverSetting&, const PointT<T>&);                     \
    template T symplectic_pairing<T>(const QuiverSetting&, const PointT<T>&, const PointT<T>&);             \
    template PointT<T> gauge_act<T>(const QuiverSetting&, const std::vector<Mat<T>>&, const PointT<T>&);    \
    template PointT<T> scale_point<T>(const PointT<T>&, const T&);                                          \
    template Mat<T> word_matrix<T>(const QuiverSetting&, const PointT<T>&, const Word&);                    \
    template T trace_word<T>(const QuiverSetting&, const PointT<T>&, const Word&);                          \
    template Traces<T> trace_generators<T>(const QuiverSetting&, const PointT<T>&);                         \
    template std::vector<Identity<T>> trace_identities<T>(const QuiverSetting&, const PointT<T>&);          \
    template PointT<T> apply_lift<T>(const QuiverSetting&, const LiftSpec&, const PointT<T>&);              \
    template LiftReport verify_lift<T>(const LiftSpec&, const QuiverSetting&, const std::vector<PointT<T>>&, \
                                       double);

KLN_INSTANTIATE(Cyclo)
KLN_INSTANTIATE(Complex)

}  // namespace kln
