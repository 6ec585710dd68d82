#include "ut/numerics.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace ut {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 500;

void check_bracket(Bracket br, const char* who) {
    if (!std::isfinite(br.lo) || !std::isfinite(br.hi) || !(br.lo < br.hi))
        throw std::invalid_argument(std::string(who) + ": bracket must satisfy lo < hi and be finite");
}

}  // namespace

SolverReport minimize_scalar(const std::function<double(double)>& f, Bracket br,
                             double tol) {
    check_bracket(br, "minimize_scalar");
    if (!(tol > 0.0)) throw std::invalid_argument("minimize_scalar: tol must be > 0");

    const double golden = 0.3819660112501051;  // (3 - sqrt(5)) / 2
    double a = br.lo, b = br.hi;
    double x = a + golden * (b - a), w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;

    SolverReport rep;
    rep.tolerance_used = tol;
    int it = 0;
    for (; it < kMaxIter; ++it) {
        if (b - a <= tol) {
            rep.converged = true;
            break;
        }
        double m = 0.5 * (a + b);
        double etmp = e;
        bool took_parabola = false;
        if (std::fabs(etmp) > 0.25 * tol) {
            // parabola through (v, fv), (w, fw), (x, fx)
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p; else q = -q;
            if (std::fabs(p) < std::fabs(0.5 * q * etmp) && p > q * (a - x) &&
                p < q * (b - x)) {
                e = d;
                d = p / q;
                took_parabola = true;
            }
        }
        if (!took_parabola) {
            e = (x < m) ? b - x : a - x;
            d = golden * e;
        }
        if (std::fabs(d) < 0.25 * tol) d = std::copysign(0.25 * tol, d == 0.0 ? m - x : d);
        double u = x + d;
        double fu = f(u);
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    rep.argmin_or_root = x;
    rep.value = fx;
    rep.iterations = it;
    return rep;
}

SolverReport find_root(const std::function<double(double)>& f, Bracket br,
                       double tol) {
    check_bracket(br, "find_root");
    if (!(tol > 0.0)) throw std::invalid_argument("find_root: tol must be > 0");

    double a = br.lo, b = br.hi;
    double fa = f(a), fb = f(b);
    SolverReport rep;
    rep.tolerance_used = tol;
    if (fa == 0.0) {
        rep.argmin_or_root = a; rep.value = 0.0; rep.converged = true;
        return rep;
    }
    if (fb == 0.0) {
        rep.argmin_or_root = b; rep.value = 0.0; rep.converged = true;
        return rep;
    }
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument(
            "find_root: f(lo) and f(hi) have the same sign; expand the bracket");

    double c = a, fc = fa;
    double d = b - a, e = d;
    int it = 0;
    for (; it < kMaxIter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * kEps * std::fabs(b) + 0.5 * tol;
        double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) {
            rep.converged = true;
            break;
        }
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {  // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {  // inverse quadratic
                double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::fmin(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    rep.argmin_or_root = b;
    rep.value = fb;
    rep.iterations = it;
    return rep;
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("integrate: bounds must be finite");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("integrate: rel_tol must be > 0");
    if (lo == hi) return 0.0;
    if (lo > hi) return -integrate(f, hi, lo, rel_tol);

    struct Panel {
        double a, b, fa, fm, fb, s, tol;
    };
    auto simpson = [](double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    };

    double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    double s0 = simpson(lo, hi, fa, fm, fb);
    double tol0 = rel_tol * std::fmax(std::fabs(s0), 1e-300);

    std::vector<Panel> stack;
    stack.push_back({lo, hi, fa, fm, fb, s0, tol0});
    double result = 0.0;
    long long used = 0;
    const long long budget = 1LL << 15;

    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        if (++used > budget) {
            double best = result + p.s;
            for (const Panel& q : stack) best += q.s;
            throw quadrature_error("integrate: panel budget exhausted", best);
        }
        double m = 0.5 * (p.a + p.b);
        double lm = 0.5 * (p.a + m), rm = 0.5 * (m + p.b);
        double flm = f(lm), frm = f(rm);
        double sl = simpson(p.a, m, p.fa, flm, p.fm);
        double sr = simpson(m, p.b, p.fm, frm, p.fb);
        double s2 = sl + sr;
        bool no_midpoint = !(p.a < lm && lm < m && m < rm && rm < p.b);
        if (std::fabs(s2 - p.s) <= 15.0 * p.tol || no_midpoint) {
            result += s2 + (s2 - p.s) / 15.0;
        } else {
            stack.push_back({p.a, m, p.fa, flm, p.fm, sl, 0.5 * p.tol});
            stack.push_back({m, p.b, p.fm, frm, p.fb, sr, 0.5 * p.tol});
        }
    }
    return result;
}

double second_derivative(const std::function<double(double)>& f, double x, double h) {
    if (!std::isfinite(x) || !std::isfinite(h) || !(h > 0.0))
        throw std::invalid_argument("second_derivative: requires finite x and h > 0");
    double fm2 = f(x - 2.0 * h), fm1 = f(x - h), f0 = f(x);
    double fp1 = f(x + h), fp2 = f(x + 2.0 * h);
    double num = -fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2;
    if (!std::isfinite(num))
        throw std::runtime_error("second_derivative: non-finite function value");
    return num / (12.0 * h * h);
}

}  // namespace ut
