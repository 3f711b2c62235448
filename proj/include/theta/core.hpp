#pragma once

#include <complex>

#include "theta/errors.hpp"

namespace theta {

// Comparison policy for classification decisions. `relative` is the half-width
// of the boundary band, measured on log|kappa|. `sigma_atol` is the gap below
// which sigma - sigma_prime counts as zero.
struct Tolerance {
    double relative = 1e-9;
    double sigma_atol = 1e-300;
};

/// kappa is stored either as a plain value or as an exact multiple of the
/// boundary bound sqrt(sigma'/sigma) * exp{-(beta-beta')^2 / (4(sigma-sigma'))}.
/// The latter keeps the boundary locus representable without rounding.
class KappaSpec {
public:
    enum class Kind { Explicit, BoundaryMultiple };

    KappaSpec() = default;

    static KappaSpec explicit_value(double v);
    /// ratio in (0,1], sign +1 or -1; legal only for params with 0 < sigma' < sigma.
    static KappaSpec boundary_multiple(double ratio, int sign);

    Kind kind() const noexcept { return kind_; }
    bool is_explicit() const noexcept { return kind_ == Kind::Explicit; }
    bool is_zero() const noexcept { return kind_ == Kind::Explicit && value_ == 0.0; }

    double value() const;  // Explicit only
    double ratio() const;  // BoundaryMultiple only
    int sign() const;      // BoundaryMultiple only

private:
    Kind kind_ = Kind::Explicit;
    double value_ = 0.0;
    double ratio_ = 0.0;
    int sign_ = 1;
};

/// Five-parameter representation of a characteristic function
///   f(s,0) = exp{-sigma s^2 + i beta s}
///   f(s,1) = kappa exp{-sigma' s^2 + i beta' s}.
struct ThetaParams {
    double sigma = 0.0;
    double sigma_prime = 0.0;
    double beta = 0.0;
    double beta_prime = 0.0;
    KappaSpec kappa{};
};

/// Convenience constructor with a plain kappa value.
ThetaParams make_params(double sigma, double sigma_prime, double beta,
                        double beta_prime, double kappa);

enum class Classification {
    Invalid,
    DegenerateAtom,  // sigma = sigma' = 0, |kappa| = 1: point mass
    GaussZ2,         // sigma = sigma', beta = beta', kappa != 0
    GaussHaarLine,   // kappa = 0: gaussian convolved with Haar on Z(2)
    Interior,        // 0 < sigma' < sigma, 0 < |kappa| < bound
    Boundary,        // 0 < sigma' < sigma, |kappa| = bound
};

/// Stable lowercase name ("gauss_z2", "boundary", ...), used in JSON output.
const char* classification_name(Classification c);

/// Element (t, k) of R x Z(2).
struct GroupElement {
    double t = 0.0;
    int k = 0;
};

GroupElement group_add(const GroupElement& x, const GroupElement& y);

/// Point mass E_x as ThetaParams: (0, 0, t, t, kappa = (-1)^k).
ThetaParams point_mass(const GroupElement& x);

/// log of sup{|kappa| admissible for (sigma, sigma', beta, beta')}, i.e. the
/// minimum over t of the right side of the measure inequality. Requires
/// 0 < sigma' < sigma; throws DomainError otherwise.
double log_boundary_bound(const ThetaParams& p, const Tolerance& tol = {});

/// exp(log_boundary_bound), evaluated in log domain and exponentiated last.
double boundary_bound(const ThetaParams& p, const Tolerance& tol = {});

/// Arg-min t0 = (sigma beta' - sigma' beta) / (sigma - sigma') of the bound
/// inequality's right side. Same precondition as log_boundary_bound.
double boundary_argmin_t(const ThetaParams& p, const Tolerance& tol = {});

/// Sign of kappa: -1, 0 or +1.
int kappa_sign(const ThetaParams& p);

/// log|kappa|; -infinity when kappa = 0. Resolves boundary multiples in log
/// domain so the result never underflows.
double log_abs_kappa(const ThetaParams& p, const Tolerance& tol = {});

/// kappa as a plain double. Boundary multiples of a very small bound may
/// underflow; decisions should use log_abs_kappa instead.
double resolve_kappa(const ThetaParams& p, const Tolerance& tol = {});

/// Decide the unique classification variant. Invalid is a value, not an error.
Classification classify(const ThetaParams& p, const Tolerance& tol = {});

/// kappa = 0 normalization: (sigma, sigma', beta, beta', 0) and
/// (sigma, sigma, beta, beta, 0) have the same characteristic function; the
/// second form is canonical. Identity for kappa != 0.
ThetaParams canonicalize(const ThetaParams& p);

/// Convolution as parameter arithmetic: components add, kappa multiplies.
/// Throws DomainError if either input classifies Invalid. An exact
/// boundary-multiple kappa survives convolution only against a point mass;
/// otherwise kappa is resolved to an explicit value.
ThetaParams convolve(const ThetaParams& p, const ThetaParams& q,
                     const Tolerance& tol = {});

/// Characteristic function value at (s, l), l in {0,1}.
std::complex<double> char_fn(const ThetaParams& p, double s, int l,
                             const Tolerance& tol = {});

/// Multiplication by the character (0,1) of Z(2): flips the sign of kappa.
ThetaParams negate_kappa(const ThetaParams& p);

}  // namespace theta
