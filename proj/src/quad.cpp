#include "mordell/quad.hpp"

#include <algorithm>
#include <queue>
#include <vector>

namespace mordell {
namespace {

// G7K15 nodes/weights (QUADPACK). xgk are Kronrod abscissae on [0,1); the
// Gauss-7 rule sits on the odd-indexed ones.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEval {
    Complex integral;  // K15 estimate
    double err;        // QUADPACK-style error estimate
};

PanelEval gk15(const Integrand1D& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    Complex fv[15];
    const Complex fc = f(c);
    fv[14] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * xgk[i];
        fv[i] = f(c - dx);
        fv[7 + i] = f(c + dx);
    }
    evals += 15;

    Complex resg = wg[3] * fc;
    Complex resk = wgk[7] * fc;
    double resabs = wgk[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const Complex s = fv[i] + fv[7 + i];
        resk += wgk[i] * s;
        resabs += wgk[i] * (std::abs(fv[i]) + std::abs(fv[7 + i]));
        if (i % 2 == 1) resg += wg[i / 2] * s;
    }
    for (int i = 0; i < 15; ++i)
        if (!is_finite(fv[i])) throw NonFiniteError("integrate_1d: non-finite integrand value");

    const Complex reskh = resk * 0.5;
    double resasc = wgk[7] * std::abs(fc - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += wgk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[7 + i] - reskh));

    resasc *= std::abs(h);
    resabs *= std::abs(h);
    double err = std::abs(resk - resg) * std::abs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    err = std::max(err, round);
    return {resk * h, err};
}

struct Panel {
    double a, b, err;
    Complex val;
    bool operator<(const Panel& o) const { return err < o.err; }
};

}  // namespace

QuadratureResult integrate_1d(const Integrand1D& f, double a, double b, const Tolerance& tol) {
    tol.validate();
    if (!(a < b)) throw DomainError("integrate_1d: requires a < b");

    QuadratureResult res;
    long evals = 0;
    std::priority_queue<Panel> heap;

    PanelEval e0 = gk15(f, a, b, evals);
    Complex total = e0.integral;
    double err_active = e0.err;
    double err_frozen = 0.0;
    heap.push({a, b, e0.err, e0.integral});

    const double width_floor =
        4.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(a), std::abs(b), 1.0});

    while (true) {
        const double err_tot = err_active + err_frozen;
        if (err_tot <= tol.target(std::abs(total))) {
            res.converged = true;
            break;
        }
        if (heap.empty() || evals + 30 > tol.max_evals) break;

        Panel worst = heap.top();
        heap.pop();
        err_active -= worst.err;
        if (worst.b - worst.a < width_floor) {
            err_frozen += worst.err;  // cannot refine further in double
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        PanelEval l = gk15(f, worst.a, mid, evals);
        PanelEval r = gk15(f, mid, worst.b, evals);
        total += l.integral + r.integral - worst.val;
        err_active += l.err + r.err;
        heap.push({worst.a, mid, l.err, l.integral});
        heap.push({mid, worst.b, r.err, r.integral});
    }

    res.value = total;
    res.err_est = err_active + err_frozen;
    res.n_evals = evals;
    return res;
}

QuadratureResult integrate_halfline(const Integrand1D& f, double a, double decay_scale,
                                    const Tolerance& tol) {
    tol.validate();
    if (!(decay_scale > 0.0)) throw DomainError("integrate_halfline: decay_scale must be positive");

    // amplitude estimate for the exponential envelope
    constexpr double sample_mult[7] = {0.7, 1.3, 2.0, 3.0, 5.0, 8.0, 13.0};
    double C = 0.0;
    long sample_evals = 0;
    for (double s : sample_mult) {
        const double x = a + s * decay_scale;
        const Complex fx = f(x);
        ++sample_evals;
        if (!is_finite(fx)) throw NonFiniteError("integrate_halfline: non-finite sample");
        C = std::max(C, std::abs(fx) * std::exp(s));
    }
    if (C == 0.0) C = 1e-300;

    const double tail_goal = std::max(tol.abs_tol * 0.25, 1e-300);
    double T_len = decay_scale * std::max(5.0, std::log(C * decay_scale / tail_goal) + 3.0);

    QuadratureResult r;
    for (int pass = 0;; ++pass) {
        r = integrate_1d(f, a, a + T_len, tol.scaled(0.5, 0.5));
        const double tail = C * decay_scale * std::exp(-T_len / decay_scale);
        r.err_est += tail;
        r.n_evals += sample_evals;
        const double goal = tol.target(std::abs(r.value));
        if (r.err_est <= goal || pass >= 2 || r.n_evals >= tol.max_evals) {
            r.converged = r.err_est <= goal;
            break;
        }
        T_len *= 1.6;  // rel_tol demanded more than the abs-based tail guess
    }
    return r;
}

QuadratureResult integrate_plane_gaussian(const Integrand2D& f, double v, const QuadraticForm& Q,
                                          const Tolerance& tol) {
    tol.validate();
    if (!(v > 0.0)) throw DomainError("integrate_plane_gaussian: v must be positive");

    // 2 pi v Q(w) <= L confines the Gaussian mass; the box
    // |w1| <= sqrt(2 a3 L / (pi v D)), |w2 - c(w1)| <= sqrt(L/(2 pi v a3))
    // contains that ellipse (minimized over the other variable).
    const double tol_floor = std::max(std::min(tol.abs_tol > 0 ? tol.abs_tol : 1.0,
                                               tol.rel_tol > 0 ? tol.rel_tol : 1.0),
                                      1e-16);
    const double L = std::min(46.0, -std::log(tol_floor) + 8.0);
    const double R1 = std::sqrt(2.0 * Q.a3() * L / (kPi * v * Q.D()));
    const double W2 = std::sqrt(L / (2.0 * kPi * v * Q.a3()));

    long inner_evals = 0;
    double inner_err_max = 0.0;
    const Tolerance inner_tol = tol.scaled(1.0 / (8.0 * R1), 0.1);

    auto outer = [&](double w1) -> Complex {
        const double c = -Q.a2() * w1 / (2.0 * Q.a3());
        auto g = [&](double w2) -> Complex {
            return f(w1, w2) * std::exp(-2.0 * kPi * v * Q.eval(w1, w2));
        };
        QuadratureResult inner = integrate_1d(g, c - W2, c + W2, inner_tol);
        inner_evals += inner.n_evals;
        inner_err_max = std::max(inner_err_max, inner.err_est);
        return inner.value;
    };

    QuadratureResult r = integrate_1d(outer, -R1, R1, tol.scaled(0.5, 0.5));
    r.n_evals = inner_evals;

    // truncation: boundary level e^{-L} times sampled |f| on the box edge
    double fmax = 0.0;
    for (int i = 0; i <= 8; ++i) {
        const double w1 = -R1 + 2.0 * R1 * i / 8.0;
        const double c = -Q.a2() * w1 / (2.0 * Q.a3());
        fmax = std::max({fmax, std::abs(f(w1, c - W2)), std::abs(f(w1, c + W2))});
        fmax = std::max({fmax, std::abs(f(-R1, c + (2.0 * i / 8.0 - 1.0) * W2))});
    }
    r.n_evals += 27;
    const double tail = fmax * std::exp(-L) * (4.0 * R1 * W2 + 1.0);
    r.err_est += tail + 2.0 * R1 * inner_err_max;
    r.converged = r.err_est <= tol.target(std::abs(r.value)) && r.n_evals <= tol.max_evals;
    return r;
}

QuadratureResult integrate_wedge(const Integrand2D& f, double decay1, double decay2,
                                 const Tolerance& tol) {
    tol.validate();
    if (!(decay1 > 0.0) || !(decay2 > 0.0))
        throw DomainError("integrate_wedge: decay scales must be positive");

    // w2 = w1 + t; along w1 both exponentials stack
    const double d_outer = 1.0 / (1.0 / decay1 + 1.0 / decay2);
    const double outer_extent = d_outer * 40.0;
    const Tolerance inner_tol = tol.scaled(1.0 / (8.0 * outer_extent), 0.1);

    long inner_evals = 0;
    double inner_err_max = 0.0;
    auto outer = [&](double w1) -> Complex {
        auto g = [&](double t) -> Complex { return f(w1, w1 + t); };
        QuadratureResult inner = integrate_halfline(g, 0.0, decay2, inner_tol);
        inner_evals += inner.n_evals;
        inner_err_max = std::max(inner_err_max, inner.err_est);
        return inner.value;
    };

    QuadratureResult r = integrate_halfline(outer, 0.0, d_outer, tol.scaled(0.5, 0.5));
    r.n_evals = inner_evals;
    r.err_est += outer_extent * inner_err_max;
    r.converged = r.err_est <= tol.target(std::abs(r.value)) && r.n_evals <= tol.max_evals;
    return r;
}

}  // namespace mordell
