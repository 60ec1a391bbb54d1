#include <stdexcept>

#include "kleinian/quiver.hpp"

namespace kln {

namespace {

void set(ExactPoint& p, const QuiverSetting& s, int t, int h, bool star, Mat<Cyclo> m) {
    int a = s.find_arrow(t, h);
    Mat<Cyclo>& dst = star ? p.Bs[a] : p.B[a];
    if (dst.rows != m.rows || dst.cols != m.cols) throw std::logic_error("table entry has the wrong shape");
    dst = std::move(m);
}

}  // namespace

ExactPoint tabulated_point(const QuiverSetting& s, int which) {
    ExactPoint p = zero_point<Cyclo>(s);
    p.l0(0, 0) = Cyclo(1);
    if (s.gamma.family == Family::E7 && which == 1) {
        set(p, s, 0, 1, false, {{0}, {1}});
        set(p, s, 0, 1, true, {{-8, 0}});
        set(p, s, 1, 2, false, {{1, 0}, {0, 0}, {0, 1}});
        set(p, s, 1, 2, true, {{0, 1, 0}, {-8, 0, 0}});
        set(p, s, 2, 3, false, {{2, 0, 0}, {-2, 1, 0}, {4, 0, 0}, {-4, 0, 1}});
        set(p, s, 2, 3, true, {{1, 1, 0, 0}, {-2, 0, 1, 0}, {-4, 0, 0, 0}});
        set(p, s, 3, 4, false, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
        set(p, s, 3, 4, true, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
        set(p, s, 4, 5, false, {{0, 1, 0}, {0, 0, 1}});
        set(p, s, 4, 5, true, {{1, 0}, {0, 1}, {0, 0}});
        set(p, s, 5, 6, false, {{0, 1}});
        set(p, s, 5, 6, true, {{1}, {0}});
        set(p, s, 3, 7, false, {{2, 1, 0, 0}, {4, 0, 0, 1}});
        set(p, s, 3, 7, true, {{1, 0}, {-2, 0}, {4, -1}, {-4, 0}});
        return p;
    }
    if (s.gamma.family == Family::E7 && which == 2) {
        set(p, s, 0, 1, false, {{0}, {1}});
        set(p, s, 0, 1, true, {{4, 0}});
        set(p, s, 1, 2, false, {{1, 0}, {0, 0}, {0, 1}});
        set(p, s, 1, 2, true, {{0, 1, 0}, {4, 0, 0}});
        set(p, s, 2, 3, false, {{-1, 0, 0}, {-2, 1, 0}, {-2, 0, 0}, {-4, 0, 1}});
        set(p, s, 2, 3, true, {{-2, 1, 0, 0}, {-2, 0, 1, 0}, {-4, 0, 0, 0}});
        set(p, s, 3, 4, false, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
        set(p, s, 3, 4, true, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
        set(p, s, 4, 5, false, {{0, 1, 0}, {0, 0, 1}});
        set(p, s, 4, 5, true, {{1, 0}, {0, 1}, {0, 0}});
        set(p, s, 5, 6, false, {{0, 1}});
        set(p, s, 5, 6, true, {{1}, {0}});
        set(p, s, 3, 7, false, {{-1, 1, 0, 0}, {-2, 0, 0, 1}});
        set(p, s, 3, 7, true, {{-2, 0}, {-2, 0}, {-2, -1}, {-4, 0}});
        return p;
    }
    if (s.gamma.family == Family::E8 && which == 1) {
        set(p, s, 0, 1, false, {{0}, {1}});
        set(p, s, 0, 1, true, {{32, 0}});
        set(p, s, 1, 2, false, {{1, 0}, {0, 0}, {0, 1}});
        set(p, s, 1, 2, true, {{0, 1, 0}, {32, 0, 0}});
        set(p, s, 2, 3, false, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}, {0, 0, 1}});
        set(p, s, 2, 3, true, {{0, 1, 0, 0}, {0, 0, 1, 0}, {32, 0, 0, 0}});
        set(p, s, 3, 4, false, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}});
        set(p, s, 3, 4, true, {{0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {32, 0, 0, 0, 0}});
        set(p, s, 4, 5, false, {{2, 0, 0, 0, 0}, {-2, 1, 0, 0, 0}, {4, 0, 1, 0, 0}, {8, 0, 0, 1, 0}, {-16, 0, 0, 0, 0}, {16, 0, 0, 0, 1}});
        set(p, s, 4, 5, true, {{1, 1, 0, 0, 0, 0}, {-2, 0, 1, 0, 0, 0}, {-4, 0, 0, 1, 0, 0}, {8, 0, 0, 0, 1, 0}, {16, 0, 0, 0, 0, 0}});
        set(p, s, 5, 6, false, {{0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}});
        set(p, s, 5, 6, true, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
        set(p, s, 6, 7, false, {{0, 1, 0, 0}, {0, 0, 0, 1}});
        set(p, s, 6, 7, true, {{1, 0}, {0, 0}, {0, 1}, {0, 0}});
        set(p, s, 5, 8, false, {{2, 1, 0, 0, 0, 0}, {-8, 0, 0, 1, 0, 0}, {-16, 0, 0, 0, 0, 1}});
        set(p, s, 5, 8, true, {{1, 0, 0}, {-2, 0, 0}, {4, 1, 0}, {8, 0, 0}, {-16, 0, -1}, {16, 0, 0}});
        return p;
    }
    if (s.gamma.family == Family::E8 && which == 2) {
        set(p, s, 0, 1, false, {{0}, {1}});
        set(p, s, 0, 1, true, {{8, 0}});
        set(p, s, 1, 2, false, {{1, 0}, {0, 0}, {0, 1}});
        set(p, s, 1, 2, true, {{0, 1, 0}, {8, 0, 0}});
        set(p, s, 2, 3, false, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}, {0, 0, 1}});
        set(p, s, 2, 3, true, {{0, 1, 0, 0}, {0, 0, 1, 0}, {8, 0, 0, 0}});
        set(p, s, 3, 4, false, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}});
        set(p, s, 3, 4, true, {{0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {8, 0, 0, 0, 0}});
        set(p, s, 4, 5, false, {{-1, 0, 0, 0, 0}, {-2, 1, 0, 0, 0}, {-2, 0, 1, 0, 0}, {-4, 0, 0, 1, 0}, {-4, 0, 0, 0, 0}, {-8, 0, 0, 0, 1}});
        set(p, s, 4, 5, true, {{-2, 1, 0, 0, 0, 0}, {-2, 0, 1, 0, 0, 0}, {-4, 0, 0, 1, 0, 0}, {-4, 0, 0, 0, 1, 0}, {-8, 0, 0, 0, 0, 0}});
        set(p, s, 5, 6, false, {{0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}});
        set(p, s, 5, 6, true, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
        set(p, s, 6, 7, false, {{0, 1, 0, 0}, {0, 0, 0, 1}});
        set(p, s, 6, 7, true, {{1, 0}, {0, 0}, {0, 1}, {0, 0}});
        set(p, s, 5, 8, false, {{-1, 1, 0, 0, 0, 0}, {-2, 0, 0, 1, 0, 0}, {-4, 0, 0, 0, 0, 1}});
        set(p, s, 5, 8, true, {{-2, 0, 0}, {-2, 0, 0}, {-2, 1, 0}, {-4, 0, 0}, {-4, 0, -1}, {-8, 0, 0}});
        return p;
    }
    throw std::invalid_argument("no tabulated point " + std::to_string(which) + " for type " + s.gamma.name());
}

}  // namespace kln
