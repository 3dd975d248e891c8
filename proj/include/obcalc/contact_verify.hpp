#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace obcalc {

struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GridError : VerifyError {
    using VerifyError::VerifyError;
};
struct ProfileError : VerifyError {
    using VerifyError::VerifyError;
};

/// Scalar function with a closed-form first derivative.
struct SmoothFn {
    std::function<double(double)> value;
    std::function<double(double)> deriv;

    double operator()(double x) const { return value(x); }
    double d(double x) const { return deriv(x); }
};

// Flat building blocks (all derived from exp(-1/x)).
SmoothFn flat_exp();    // 0 for x <= 0, exp(-1/x) beyond
SmoothFn smoothstep();  // 0 for x <= 0, 1 for x >= 1, strictly increasing between

/// Radial profile pair (h1, h2) modelling a contact form h1 a_B + h2 dtheta
/// near a binding: h1(0) = 1 with all derivatives flat at 0 and h1' < 0 for
/// r > 0; h2 vanishes like r^2, is monotone, and caps to a constant.
struct LutzPair {
    SmoothFn h1, h2;
    double r_max = 1.2;
};

LutzPair default_lutz_pair();
LutzPair default_binding_pair();

/// Push-off shape data: f interpolates 0 -> identity across [eps1, eps3],
/// h climbs to the push-off depth c by eps2 and stays there, u is the bump
/// driving the boundary-region twist, utilde the framing cutoff in (r', r).
struct PushOffProfile {
    SmoothFn f, h, u;
    std::function<double(double, double)> utilde;
    double eps1 = 0.2, eps2 = 0.4, eps3 = 0.6, c = 0.8, r_max = 1.2;
};

PushOffProfile default_profile();

/// Throws ProfileError when the constants or sampled shape conditions fail.
void validate_profile(const PushOffProfile& p);

struct GridSpec {
    long long n = 10000;
    double tol = 1e-6;
};

/// Outcome of one grid certification. pass <=> min_value > tolerance and
/// every side condition listed in notes holds.
struct PositivityReport {
    std::string name;
    std::string grid;
    double min_value = 0.0;
    std::vector<double> argmin;
    std::map<std::string, double> term_min;  // e.g. the A/B/C decomposition minima
    std::vector<std::pair<std::string, double>> notes;
    double tolerance = 0.0;
    bool pass = false;
    double margin = 0.0;

    std::string to_text() const;
    std::string to_json() const;
};

/// Grid check (with n/4-point sanity on the pair conditions) that
/// (h1, h2) is a valid Lutz pair; min_value is the Wronskian minimum
/// h1 h2' - h1' h2 over r > 0.
PositivityReport validate_lutz_pair(const LutzPair& pair, GridSpec grid);

/// Certifies the push-off contact condition: lambda mu' - lambda' mu > 0 on
/// a grid over (0, r_max], with the A/B/C decomposition non-negative and
/// somewhere positive pointwise, the small-r' reduction to
/// h' ((h1 h2' - h1' h2) o h), and the away-from-binding factors
/// h1(c)^n, h2(c) reported. n_dim is the exponent n of the ambient check.
PositivityReport verify_pushoff_contact(const LutzPair& ambient, const LutzPair& binding,
                                        const PushOffProfile& prof, int n_dim, GridSpec grid);

/// Certifies that the homotopy F_h = (1-h) F_0 + h F_1 stays away from the
/// two tangency normal forms of the intermediate push-off over a grid in
/// (theta, t, h, r, r').
PositivityReport verify_framing_homotopy(const PushOffProfile& prof, GridSpec grid);

/// Distance of the framing F1 from the tangent space of the push-off at
/// the point of parameters (r', theta'), computed from the embedding g.
double f1_tangency_distance(const PushOffProfile& prof, double r_prime, double theta);

/// Certifies that the framing F1 is nowhere tangent to the push-off, using
/// tangent data sampled from the defining embedding g.
PositivityReport verify_f1_nontangent(const PushOffProfile& prof, GridSpec grid);

}  // namespace obcalc
