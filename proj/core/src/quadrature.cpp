#include "friable/quadrature.hpp"

#include <cmath>

namespace friable {

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    double rel_tol;
    long   budget;
};

double simpson(double fa, double fm, double fb, double width) {
    return width / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(SimpsonState& st, double a, double b, double fa, double fm, double fb,
              double whole, double tol, int depth) {
    const double m  = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    st.budget -= 2;
    const double left  = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double err   = left + right - whole;
    const double goal  = std::max(tol, st.rel_tol * std::abs(left + right));
    if (depth >= 52 || st.budget <= 0 || std::abs(err) <= 15.0 * goal)
        return left + right + err / 15.0;
    return refine(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           refine(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_subdivisions) {
    if (!(a <= b))
        throw std::invalid_argument("adaptive_simpson: need a <= b");
    if (a == b)
        return 0.0;
    SimpsonState st{f, rel_tol, static_cast<long>(max_subdivisions)};
    const double m  = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    st.budget -= 3;
    const double whole = simpson(fa, fm, fb, b - a);
    return refine(st, a, b, fa, fm, fb, whole, abs_tol, 0);
}

} // namespace friable
