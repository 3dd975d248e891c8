#include "obcalc/contact_verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace obcalc {

SmoothFn flat_exp() {
    return SmoothFn{[](double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; },
                    [](double x) { return x > 0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }};
}

SmoothFn smoothstep() {
    SmoothFn f = flat_exp();
    auto value = [f](double x) {
        double a = f(x), b = f(1.0 - x);
        return a / (a + b);
    };
    auto deriv = [f](double x) {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        double a = f(x), b = f(1.0 - x);
        double da = f.d(x), db = -f.d(1.0 - x);
        double den = a + b;
        return (da * den - a * (da + db)) / (den * den);
    };
    return SmoothFn{value, deriv};
}

namespace {

// Decreasing from 1 at x = 0 to 0 at x = 1, flat at 1, slope -1 at 0.
SmoothFn flat_drop() {
    auto value = [](double x) {
        if (x >= 1.0) return 0.0;
        if (x <= 0.0) return std::exp(1.0 - 1.0 / (1.0 - x));
        return std::exp(1.0 - 1.0 / (1.0 - x));
    };
    auto deriv = [value](double x) {
        if (x >= 1.0) return 0.0;
        double e = value(x);
        double d = 1.0 - x;
        return -e / (d * d);
    };
    return SmoothFn{value, deriv};
}

}  // namespace

LutzPair default_lutz_pair() {
    const double kappa = 0.5;
    SmoothFn h1{[kappa](double r) { return 1.0 - kappa * std::exp(-1.0 / (r * r)); },
                [kappa](double r) {
                    if (r <= 0.0) return 0.0;
                    return -kappa * std::exp(-1.0 / (r * r)) * 2.0 / (r * r * r);
                }};
    // r^2 up to rho, then a monotone blend into the constant cap rho_hi^2.
    const double rho = 0.9, rho_hi = 1.1;
    const double cap = rho_hi * rho_hi;
    SmoothFn s = smoothstep();
    SmoothFn h2{[=](double r) {
                    if (r <= rho) return r * r;
                    if (r >= rho_hi) return cap;
                    double x = (r - rho) / (rho_hi - rho);
                    double w = s(x);
                    return (1.0 - w) * r * r + w * cap;
                },
                [=](double r) {
                    if (r <= rho) return 2.0 * r;
                    if (r >= rho_hi) return 0.0;
                    double x = (r - rho) / (rho_hi - rho);
                    double w = s(x), dw = s.d(x) / (rho_hi - rho);
                    return (1.0 - w) * 2.0 * r + dw * (cap - r * r);
                }};
    return LutzPair{h1, h2, 1.2};
}

LutzPair default_binding_pair() {
    LutzPair p = default_lutz_pair();
    const double kappa = 0.35;
    p.h1 = SmoothFn{[kappa](double r) { return 1.0 - kappa * std::exp(-1.0 / (r * r)); },
                    [kappa](double r) {
                        if (r <= 0.0) return 0.0;
                        return -kappa * std::exp(-1.0 / (r * r)) * 2.0 / (r * r * r);
                    }};
    return p;
}

PushOffProfile default_profile() {
    PushOffProfile p;
    SmoothFn s = smoothstep();
    SmoothFn drop = flat_drop();
    const double e1 = p.eps1, e3 = p.eps3, de = e3 - e1;
    p.f = SmoothFn{[=](double r) { return s((r - e1) / de) * r; },
                   [=](double r) { return s.d((r - e1) / de) * r / de + s((r - e1) / de); }};
    const double e2 = p.eps2, c = p.c;
    p.h = SmoothFn{[=](double r) { return c * (1.0 - drop(r / e2)); },
                   [=](double r) { return -c * drop.d(r / e2) / e2; }};
    const double w = 0.15;
    p.u = SmoothFn{[=](double r) { return s((r - (c - w)) / w) * s((c + w - r) / w); },
                   [=](double r) {
                       return s.d((r - (c - w)) / w) / w * s((c + w - r) / w) -
                              s((r - (c - w)) / w) * s.d((c + w - r) / w) / w;
                   }};
    const double eu = 0.15;
    p.utilde = [=](double rp, double r) {
        double a = s((r - c) / eu);
        double b = s((r - (c - eu)) / eu);
        double ct = s(rp / eu);
        return 1.0 - (1.0 - a) * (1.0 - b * ct);
    };
    return p;
}

void validate_profile(const PushOffProfile& p) {
    if (!(0.0 < p.eps1 && p.eps1 < p.eps2 && p.eps2 < p.eps3 && p.eps3 < p.c &&
          p.c < p.r_max))
        throw ProfileError("profile constants must satisfy 0 < eps1 < eps2 < eps3 < c < r_max");
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
        double r = p.r_max * i / n;
        if (r <= p.eps1 && std::abs(p.f(r)) > 1e-12)
            throw ProfileError("f must vanish on [0, eps1]");
        if (r >= p.eps3 && std::abs(p.f(r) - r) > 1e-9)
            throw ProfileError("f must equal the identity beyond eps3");
        if (p.f.d(r) < -1e-12) throw ProfileError("f must be monotone");
        if (p.h.d(r) < -1e-12) throw ProfileError("h must be monotone");
        if (r >= p.eps2 && std::abs(p.h(r) - p.c) > 1e-9)
            throw ProfileError("h must be constant c beyond eps2");
        if (r > 0.01 && r <= 0.9 * p.eps2 && p.h.d(r) <= 0.0)
            throw ProfileError("h must climb strictly on (0, eps2)");
        double u = p.u(r);
        if (u < -1e-12 || u > 1.0 + 1e-12) throw ProfileError("u must stay in [0, 1]");
    }
    if (std::abs(p.h(0.0)) > 1e-12) throw ProfileError("h(0) must be 0");
    if (std::abs(p.u(p.c) - 1.0) > 1e-9) throw ProfileError("u(c) must be 1");
    if (p.u(0.0) > 1e-12 || p.u(p.r_max) > 1e-12)
        throw ProfileError("u must vanish near 0 and past c + eps");
    if (p.utilde(p.eps1 / 4, p.c / 4) > 1e-9)
        throw ProfileError("utilde must vanish near the binding");
    if (std::abs(p.utilde(p.r_max, p.c) - 1.0) > 1e-9)
        throw ProfileError("utilde must be 1 on { r' >= eps, r = c }");
}

std::string PositivityReport::to_text() const {
    std::ostringstream os;
    os.precision(12);
    os << "report " << name << "\n";
    os << "  grid: " << grid << "\n";
    os << "  min: " << min_value << " at (";
    for (std::size_t i = 0; i < argmin.size(); ++i) os << (i ? ", " : "") << argmin[i];
    os << ")\n";
    for (const auto& [k, v] : term_min) os << "  min " << k << ": " << v << "\n";
    for (const auto& [k, v] : notes) os << "  " << k << ": " << v << "\n";
    os << "  tolerance: " << tolerance << "\n";
    os << "  margin: " << margin << "\n";
    os << "  pass: " << (pass ? "yes" : "no") << "\n";
    return os.str();
}

std::string PositivityReport::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["grid"] = grid;
    j["min"] = min_value;
    j["argmin"] = argmin;
    for (const auto& [k, v] : term_min) j["term_min"][k] = v;
    for (const auto& [k, v] : notes) j["notes"][k] = v;
    j["tolerance"] = tolerance;
    j["margin"] = margin;
    j["pass"] = pass;
    return j.dump(2);
}

PositivityReport validate_lutz_pair(const LutzPair& pair, GridSpec grid) {
    if (grid.n < 64) throw GridError("lutz pair validation needs at least 64 samples");
    PositivityReport rep;
    rep.name = "lutz-pair";
    rep.tolerance = grid.tol;
    std::ostringstream gs;
    gs << grid.n << " points on (0, " << pair.r_max << "]";
    rep.grid = gs.str();

    bool ok = std::abs(pair.h1(0.0) - 1.0) <= grid.tol;
    rep.notes.emplace_back("h1(0)", pair.h1(0.0));

    double wron_min = 0.0, wron_arg = 0.0;
    bool first = true;
    double ratio_lo = 0.0, ratio_hi = 0.0;
    bool ratio_first = true;
    double flat_excess = 0.0;
    for (long long i = 1; i <= grid.n; ++i) {
        double r = pair.r_max * static_cast<double>(i) / static_cast<double>(grid.n);
        double h1 = pair.h1(r), h2 = pair.h2(r);
        double d1 = pair.h1.d(r), d2 = pair.h2.d(r);
        if (h1 <= 0.0) ok = false;
        // h1 strictly decreasing for r > 0; below r ~ 0.04 the flat decay
        // underflows double precision, so strictness is checked where the
        // derivative is resolvable at all.
        if (d1 > 0.0) ok = false;
        if (r >= 0.05 && d1 >= 0.0) ok = false;
        if (d2 < -grid.tol) ok = false;  // h2 non-decreasing
        double wron = h1 * d2 - d1 * h2;
        if (first || wron < wron_min) {
            wron_min = wron;
            wron_arg = r;
            first = false;
        }
        if (r <= 0.1) {
            double ratio = h2 / (r * r);
            if (ratio_first) {
                ratio_lo = ratio_hi = ratio;
                ratio_first = false;
            }
            ratio_lo = std::min(ratio_lo, ratio);
            ratio_hi = std::max(ratio_hi, ratio);
        }
        // Flatness of h1 at 0: |h1'| decays faster than any power.
        if (r <= 0.15) flat_excess = std::max(flat_excess, std::abs(d1) - r * r * r * r);
    }
    rep.min_value = wron_min;
    rep.argmin = {wron_arg};
    rep.notes.emplace_back("h2/r^2 min near 0", ratio_lo);
    rep.notes.emplace_back("h2/r^2 max near 0", ratio_hi);
    rep.notes.emplace_back("h1 flatness excess", flat_excess);
    if (ratio_first || ratio_lo < 0.1 || ratio_hi > 10.0) ok = false;
    if (flat_excess > 0.0) ok = false;
    rep.margin = wron_min - grid.tol;
    rep.pass = ok && wron_min > grid.tol;
    return rep;
}

namespace {

void require_radial_grid(const PushOffProfile& p, long long n) {
    double spacing = std::min({p.eps1, p.eps2 - p.eps1, p.eps3 - p.eps2, p.c - p.eps3,
                               p.r_max - p.c});
    double step = p.r_max / static_cast<double>(n);
    if (step > spacing / 4.0)
        throw GridError("grid too coarse: step exceeds a quarter of the profile spacing");
}

}  // namespace

PositivityReport verify_pushoff_contact(const LutzPair& ambient, const LutzPair& binding,
                                        const PushOffProfile& prof, int n_dim, GridSpec grid) {
    if (!(0.0 < prof.eps1 && prof.eps1 < prof.eps2 && prof.eps2 < prof.eps3 &&
          prof.eps3 < prof.c && prof.c < prof.r_max))
        throw ProfileError("profile constants must satisfy 0 < eps1 < eps2 < eps3 < c < r_max");
    require_radial_grid(prof, grid.n);

    PositivityReport rep;
    rep.name = "pushoff-contact";
    rep.tolerance = grid.tol;
    std::ostringstream gs;
    gs << grid.n << " points on (0, " << prof.r_max << "], n = " << n_dim;
    rep.grid = gs.str();

    double wmin = 0.0, warg = 0.0;
    double amin = 0.0, bmin = 0.0, cmin = 0.0;
    bool abc_ok = true, identity_ok = true, limit_ok = true;
    bool first = true;
    for (long long i = 1; i <= grid.n; ++i) {
        double rp = prof.r_max * static_cast<double>(i) / static_cast<double>(grid.n);
        double f = prof.f(rp), df = prof.f.d(rp);
        double h = prof.h(rp), dh = prof.h.d(rp);
        double g1 = binding.h1(f), dg1 = binding.h1.d(f) * df;
        double g2 = binding.h2(f), dg2 = binding.h2.d(f) * df;
        double h1 = ambient.h1(h), dh1 = ambient.h1.d(h) * dh;
        double h2 = ambient.h2(h), dh2 = ambient.h2.d(h) * dh;

        double lam = h1 * g1;
        double dlam = dh1 * g1 + h1 * dg1;
        double mu = h1 * g2 + h2;
        double dmu = dh1 * g2 + h1 * dg2 + dh2;
        double w = lam * dmu - dlam * mu;

        double A = h1 * h1 * (g1 * dg2 - dg1 * g2);
        double B = h1 * (dh2 * g1 - dg1 * h2);
        double C = -dh1 * g1 * h2;
        if (std::abs(A + B + C - w) > 1e-9 * std::max(1.0, std::abs(w))) identity_ok = false;
        if (A < -grid.tol || B < -grid.tol || C < -grid.tol) abc_ok = false;
        if (std::max({A, B, C}) <= grid.tol) abc_ok = false;

        if (first || w < wmin) {
            wmin = w;
            warg = rp;
        }
        if (first) {
            amin = A;
            bmin = B;
            cmin = C;
            first = false;
        } else {
            amin = std::min(amin, A);
            bmin = std::min(bmin, B);
            cmin = std::min(cmin, C);
        }

        // Where f vanishes the quantity must reduce to the proof's
        // expression h' ((h1 h2' - h1' h2) o h).
        if (rp < prof.eps1) {
            double reduced = dh * (ambient.h1(h) * ambient.h2.d(h) - ambient.h1.d(h) * ambient.h2(h));
            if (std::abs(w - reduced) > 1e-9 * std::max(1.0, std::abs(w))) limit_ok = false;
        }
    }
    rep.min_value = wmin;
    rep.argmin = {warg};
    rep.term_min["A"] = amin;
    rep.term_min["B"] = bmin;
    rep.term_min["C"] = cmin;

    double away1 = std::pow(ambient.h1(prof.c), n_dim);
    double away2 = ambient.h2(prof.c);
    rep.notes.emplace_back("h1(c)^n", away1);
    rep.notes.emplace_back("h2(c)", away2);
    rep.notes.emplace_back("A+B+C identity holds", identity_ok ? 1.0 : 0.0);
    rep.notes.emplace_back("small-r' reduction holds", limit_ok ? 1.0 : 0.0);
    rep.notes.emplace_back("A,B,C pointwise condition holds", abc_ok ? 1.0 : 0.0);

    rep.margin = wmin - grid.tol;
    rep.pass = wmin > grid.tol && abc_ok && identity_ok && limit_ok && away1 > grid.tol &&
               away2 > grid.tol;
    return rep;
}

PositivityReport verify_framing_homotopy(const PushOffProfile& prof, GridSpec grid) {
    if (grid.n < 10000) throw GridError("framing homotopy grid must have at least 10^4 samples");
    PositivityReport rep;
    rep.name = "framing-homotopy";
    rep.tolerance = grid.tol;

    // Split the sample budget over (theta, t, h, r, r') without ever
    // undershooting it; theta keeps the axis points 0, pi/2, pi, 3pi/2 on
    // the grid and the t/h counts stay odd so t = 1/2 is sampled.
    const long long ntheta = 40;
    const long long rest = (grid.n + ntheta - 1) / ntheta;
    long long nr = std::max<long long>(
        3, std::llround(std::pow(static_cast<double>(rest), 0.25)));
    const long long nrp = nr;
    long long nt = std::max<long long>(
        3, static_cast<long long>(
               std::ceil(std::sqrt(static_cast<double>(rest) / static_cast<double>(nr * nrp)))));
    if (nt % 2 == 0) ++nt;
    long long nh = nt;
    while (ntheta * nt * nh * nr * nrp < grid.n) {
        nt += 2;
        nh = nt;
    }
    std::ostringstream gs;
    gs << ntheta << " x " << nt << " x " << nh << " x " << nr << " x " << nrp << " = "
       << ntheta * nt * nh * nr * nrp << " samples in (theta, t, h, r, r')";
    rep.grid = gs.str();
    rep.notes.emplace_back("samples", static_cast<double>(ntheta * nt * nh * nr * nrp));

    const double r_lo = 0.05;
    auto rval = [&](long long i, long long n) {
        return r_lo + (prof.r_max - r_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    };

    double d1min = 0.0, d2min = 0.0;
    std::vector<double> arg1, arg2;
    double obstruction_min = 0.0;
    std::vector<double> ob_arg{0.0, 0.0, 0.0};  // (h, r, r') at the obstruction minimum
    bool ob_first = true;
    double axis_gap = 0.0;  // |v1 - v2| at sin(theta) = 0 should be exactly |cos| = 1
    bool axis_first = true;
    double h0_min = 0.0;
    bool h0_first = true, first1 = true, first2 = true;

    for (long long it = 0; it < ntheta; ++it) {
        double theta = 2.0 * M_PI * static_cast<double>(it) / static_cast<double>(ntheta);
        double ct = std::cos(theta), st = std::sin(theta);
        // Clean up the axis values so the analytic certificates are exact.
        if (it % (ntheta / 4) == 0) {
            ct = std::round(ct);
            st = std::round(st);
        }
        for (long long jt = 0; jt < nt; ++jt) {
            double t = static_cast<double>(jt) / static_cast<double>(nt - 1);
            for (long long kh = 0; kh < nh; ++kh) {
                double h = static_cast<double>(kh) / static_cast<double>(nh - 1);
                for (long long ir = 0; ir < nr; ++ir) {
                    double r = rval(ir, nr);
                    for (long long irp = 0; irp < nrp; ++irp) {
                        double rp = rval(irp, nrp);
                        double coef = 1.0 - t + t * st * st;
                        double v1 = (1.0 - h + h * t) * ct;
                        double v2 = -coef * h * ct;
                        double v3 = -(1.0 - h) * st / r;
                        double v4 = coef * h * st / rp;
                        if (t >= 0.5) {
                            double d = std::sqrt(v1 * v1 + (v3 - v4) * (v3 - v4) / 2.0);
                            if (first1 || d < d1min) {
                                d1min = d;
                                arg1 = {theta, t, h, r, rp};
                                first1 = false;
                            }
                        }
                        if (t <= 0.5) {
                            double d = std::sqrt((v1 - v2) * (v1 - v2) / 2.0 +
                                                 (v3 - v4) * (v3 - v4) / 2.0);
                            if (first2 || d < d2min) {
                                d2min = d;
                                arg2 = {theta, t, h, r, rp};
                                first2 = false;
                            }
                        }
                        if (ct == 0.0 && t >= 0.5) {
                            // Proof obstruction at theta = pi/2, 3pi/2.
                            double ob = (1.0 - h) / r + h / rp;
                            if (ob_first || ob < obstruction_min) {
                                obstruction_min = ob;
                                ob_arg = {h, r, rp};
                                ob_first = false;
                            }
                        }
                        if (st == 0.0 && t <= 0.5) {
                            double gap = std::abs(v1 - v2);
                            if (axis_first || gap < axis_gap) {
                                axis_gap = gap;
                                axis_first = false;
                            }
                        }
                        if (h == 0.0) {
                            // F_0 = cos theta d_r - (1/r) sin theta d_theta.
                            double d = std::sqrt(v1 * v1 + (v3 - v4) * (v3 - v4) / 2.0);
                            if (h0_first || d < h0_min) {
                                h0_min = d;
                                h0_first = false;
                            }
                        }
                    }
                }
            }
        }
    }
    rep.min_value = std::min(d1min, d2min);
    rep.argmin = rep.min_value == d1min ? arg1 : arg2;
    rep.term_min["case t>=1/2 distance"] = d1min;
    rep.term_min["case t<=1/2 distance"] = d2min;
    rep.notes.emplace_back("obstruction (1/r)(1-h)+(1/r')h min at theta=pi/2", obstruction_min);
    rep.notes.emplace_back("obstruction argmin h", ob_arg[0]);
    rep.notes.emplace_back("obstruction argmin r", ob_arg[1]);
    rep.notes.emplace_back("obstruction argmin r'", ob_arg[2]);
    rep.notes.emplace_back("|v1-v2| at sin(theta)=0 (proof: 1 = 0 contradiction)", axis_gap);
    rep.notes.emplace_back("F_0 slice (h = 0) min distance", h0_min);
    rep.margin = rep.min_value - grid.tol;
    rep.pass = rep.min_value > grid.tol && obstruction_min > grid.tol &&
               std::abs(axis_gap - 1.0) <= 1e-9 && h0_min > grid.tol;
    return rep;
}

double f1_tangency_distance(const PushOffProfile& prof, double r_prime, double theta) {
    double f = prof.f(r_prime), df = prof.f.d(r_prime);
    double h = prof.h(r_prime), dh = prof.h.d(r_prime);
    double cth = std::cos(theta), sth = std::sin(theta);
    // Tangent directions of the push-off in cartesian (x', y', x, y); the
    // binding directions are orthogonal to everything below.
    double V1[4] = {df * cth, df * sth, dh * cth, dh * sth};
    double V2[4] = {-f * sth, f * cth, -h * sth, h * cth};
    double ut = prof.utilde(r_prime, h);
    double kappa = -(1.0 - ut + ut * sth * sth);
    double F[4] = {kappa, 0.0, ut * cth * cth, ut * cth * sth};

    auto norm2 = [](const double* v) {
        return v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
    };
    auto dotv = [](const double* a, const double* b) {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
    };
    double res[4] = {F[0], F[1], F[2], F[3]};
    double n1 = norm2(V1);
    if (n1 > 1e-30) {
        double p = dotv(res, V1) / n1;
        for (int k = 0; k < 4; ++k) res[k] -= p * V1[k];
    }
    double W2[4] = {V2[0], V2[1], V2[2], V2[3]};
    if (n1 > 1e-30) {
        double p = dotv(V2, V1) / n1;
        for (int k = 0; k < 4; ++k) W2[k] -= p * V1[k];
    }
    double n2 = norm2(W2);
    if (n2 > 1e-30) {
        double p = dotv(res, W2) / n2;
        for (int k = 0; k < 4; ++k) res[k] -= p * W2[k];
    }
    return std::sqrt(norm2(res));
}

PositivityReport verify_f1_nontangent(const PushOffProfile& prof, GridSpec grid) {
    validate_profile(prof);
    if (grid.n < 1000) throw GridError("f1 nontangency grid must have at least 10^3 samples");
    PositivityReport rep;
    rep.name = "f1-nontangent";
    rep.tolerance = grid.tol;

    const long long nrp = std::max<long long>(64, grid.n / 64);
    const long long nth = 64;
    std::ostringstream gs;
    gs << nrp << " x " << nth << " in (r', theta')";
    rep.grid = gs.str();

    double dmin = 0.0;
    std::vector<double> argmin;
    bool first = true;
    double near_binding = 0.0;
    bool nb_first = true;
    for (long long i = 1; i <= nrp; ++i) {
        double rp = prof.r_max * static_cast<double>(i) / static_cast<double>(nrp);
        for (long long j = 0; j < nth; ++j) {
            double th = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(nth);
            double d = f1_tangency_distance(prof, rp, th);
            if (first || d < dmin) {
                dmin = d;
                argmin = {rp, th};
                first = false;
            }
            if (rp <= prof.eps1 && (nb_first || d < near_binding)) {
                near_binding = d;
                nb_first = false;
            }
        }
    }
    rep.min_value = dmin;
    rep.argmin = argmin;
    rep.notes.emplace_back("near-binding slice min distance (F1 = -d_x')", near_binding);
    rep.margin = dmin - grid.tol;
    rep.pass = dmin > grid.tol;
    return rep;
}

}  // namespace obcalc
