#include "theta/core.hpp"

#include <cmath>
#include <limits>

namespace theta {

KappaSpec KappaSpec::explicit_value(double v) {
    KappaSpec k;
    k.kind_ = Kind::Explicit;
    k.value_ = (v == 0.0) ? 0.0 : v;  // normalize -0.0
    return k;
}

KappaSpec KappaSpec::boundary_multiple(double ratio, int sign) {
    KappaSpec k;
    k.kind_ = Kind::BoundaryMultiple;
    k.ratio_ = ratio;
    k.sign_ = sign;
    return k;
}

double KappaSpec::value() const {
    if (kind_ != Kind::Explicit) throw InternalError("KappaSpec: not an explicit value");
    return value_;
}

double KappaSpec::ratio() const {
    if (kind_ != Kind::BoundaryMultiple) throw InternalError("KappaSpec: not a boundary multiple");
    return ratio_;
}

int KappaSpec::sign() const {
    if (kind_ != Kind::BoundaryMultiple) throw InternalError("KappaSpec: not a boundary multiple");
    return sign_;
}

ThetaParams make_params(double sigma, double sigma_prime, double beta,
                        double beta_prime, double kappa) {
    return ThetaParams{sigma, sigma_prime, beta, beta_prime,
                       KappaSpec::explicit_value(kappa)};
}

const char* classification_name(Classification c) {
    switch (c) {
        case Classification::Invalid: return "invalid";
        case Classification::DegenerateAtom: return "degenerate_atom";
        case Classification::GaussZ2: return "gauss_z2";
        case Classification::GaussHaarLine: return "gauss_haar_line";
        case Classification::Interior: return "interior";
        case Classification::Boundary: return "boundary";
    }
    return "invalid";
}

GroupElement group_add(const GroupElement& x, const GroupElement& y) {
    return GroupElement{x.t + y.t, (x.k + y.k) & 1};
}

ThetaParams point_mass(const GroupElement& x) {
    return make_params(0.0, 0.0, x.t, x.t, (x.k & 1) ? -1.0 : 1.0);
}

namespace {

bool fields_finite(const ThetaParams& p) {
    return std::isfinite(p.sigma) && std::isfinite(p.sigma_prime) &&
           std::isfinite(p.beta) && std::isfinite(p.beta_prime);
}

// Requires 0 < sigma' < sigma with gap >= sigma_atol; callers check.
double log_bound_unchecked(const ThetaParams& p) {
    const double d = p.beta - p.beta_prime;
    return 0.5 * (std::log(p.sigma_prime) - std::log(p.sigma)) -
           d * d / (4.0 * (p.sigma - p.sigma_prime));
}

bool bound_domain_ok(const ThetaParams& p, const Tolerance& tol) {
    return p.sigma_prime > 0.0 && p.sigma_prime < p.sigma &&
           p.sigma - p.sigma_prime >= tol.sigma_atol;
}

}  // namespace

double log_boundary_bound(const ThetaParams& p, const Tolerance& tol) {
    if (!fields_finite(p) || !bound_domain_ok(p, tol))
        throw DomainError("boundary bound requires 0 < sigma' < sigma");
    return log_bound_unchecked(p);
}

double boundary_bound(const ThetaParams& p, const Tolerance& tol) {
    return std::exp(log_boundary_bound(p, tol));
}

double boundary_argmin_t(const ThetaParams& p, const Tolerance& tol) {
    if (!fields_finite(p) || !bound_domain_ok(p, tol))
        throw DomainError("boundary arg-min requires 0 < sigma' < sigma");
    return (p.sigma * p.beta_prime - p.sigma_prime * p.beta) /
           (p.sigma - p.sigma_prime);
}

int kappa_sign(const ThetaParams& p) {
    if (p.kappa.is_explicit()) {
        const double v = p.kappa.value();
        return (v > 0.0) - (v < 0.0);
    }
    return p.kappa.sign();
}

double log_abs_kappa(const ThetaParams& p, const Tolerance& tol) {
    if (p.kappa.is_explicit()) {
        const double v = std::abs(p.kappa.value());
        return v == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(v);
    }
    return std::log(p.kappa.ratio()) + log_boundary_bound(p, tol);
}

double resolve_kappa(const ThetaParams& p, const Tolerance& tol) {
    if (p.kappa.is_explicit()) return p.kappa.value();
    return static_cast<double>(p.kappa.sign()) * std::exp(log_abs_kappa(p, tol));
}

Classification classify(const ThetaParams& p, const Tolerance& tol) {
    if (!fields_finite(p)) return Classification::Invalid;
    if (p.sigma < 0.0 || p.sigma_prime < 0.0) return Classification::Invalid;

    if (!p.kappa.is_explicit()) {
        const double r = p.kappa.ratio();
        if (!(r > 0.0) || r > 1.0 || !std::isfinite(r)) return Classification::Invalid;
        if (p.kappa.sign() != 1 && p.kappa.sign() != -1) return Classification::Invalid;
        if (!bound_domain_ok(p, tol)) return Classification::Invalid;
        // log|kappa| = log(r) + log(bound) <= log(bound): never beyond the bound.
        return std::log(r) >= -tol.relative ? Classification::Boundary
                                            : Classification::Interior;
    }

    const double v = p.kappa.value();
    if (!std::isfinite(v)) return Classification::Invalid;
    if (v == 0.0) return Classification::GaussHaarLine;

    if (p.sigma_prime > p.sigma) return Classification::Invalid;
    const double logk = std::log(std::abs(v));

    if (p.sigma - p.sigma_prime < tol.sigma_atol) {
        if (p.beta != p.beta_prime) return Classification::Invalid;
        if (logk > tol.relative) return Classification::Invalid;
        if (p.sigma == 0.0 && std::abs(logk) <= tol.relative)
            return Classification::DegenerateAtom;
        return Classification::GaussZ2;
    }

    if (p.sigma_prime == 0.0) return Classification::Invalid;
    const double logB = log_bound_unchecked(p);
    if (logk > logB + tol.relative) return Classification::Invalid;
    if (logk >= logB - tol.relative) return Classification::Boundary;
    return Classification::Interior;
}

ThetaParams canonicalize(const ThetaParams& p) {
    if (p.kappa.is_zero()) {
        ThetaParams q = p;
        q.sigma_prime = q.sigma;
        q.beta_prime = q.beta;
        q.kappa = KappaSpec::explicit_value(0.0);
        return q;
    }
    return p;
}

ThetaParams convolve(const ThetaParams& p, const ThetaParams& q, const Tolerance& tol) {
    const Classification cp = classify(p, tol);
    const Classification cq = classify(q, tol);
    if (cp == Classification::Invalid || cq == Classification::Invalid)
        throw DomainError("convolve requires non-Invalid inputs");

    const ThetaParams a = canonicalize(p);
    const ThetaParams b = canonicalize(q);

    ThetaParams r;
    r.sigma = a.sigma + b.sigma;
    r.sigma_prime = a.sigma_prime + b.sigma_prime;
    r.beta = a.beta + b.beta;
    r.beta_prime = a.beta_prime + b.beta_prime;

    // A point mass leaves sigma, sigma' and beta - beta' unchanged and scales
    // kappa by exactly +-1, so an exact boundary multiple survives it.
    const bool b_is_unit_atom =
        cq == Classification::DegenerateAtom && std::abs(resolve_kappa(b, tol)) == 1.0;
    const bool a_is_unit_atom =
        cp == Classification::DegenerateAtom && std::abs(resolve_kappa(a, tol)) == 1.0;

    if (!a.kappa.is_explicit() && b_is_unit_atom) {
        r.kappa = KappaSpec::boundary_multiple(a.kappa.ratio(),
                                               a.kappa.sign() * kappa_sign(b));
    } else if (!b.kappa.is_explicit() && a_is_unit_atom) {
        r.kappa = KappaSpec::boundary_multiple(b.kappa.ratio(),
                                               b.kappa.sign() * kappa_sign(a));
    } else {
        r.kappa = KappaSpec::explicit_value(resolve_kappa(a, tol) * resolve_kappa(b, tol));
    }
    return canonicalize(r);
}

std::complex<double> char_fn(const ThetaParams& p, double s, int l, const Tolerance& tol) {
    if (l != 0 && l != 1) throw DomainError("character index l must be 0 or 1");
    if (classify(p, tol) == Classification::Invalid)
        throw DomainError("char_fn requires non-Invalid params");
    if (l == 0) return std::polar(std::exp(-p.sigma * s * s), p.beta * s);
    const double k = resolve_kappa(p, tol);
    if (k == 0.0) return {0.0, 0.0};
    return k * std::polar(std::exp(-p.sigma_prime * s * s), p.beta_prime * s);
}

ThetaParams negate_kappa(const ThetaParams& p) {
    ThetaParams q = p;
    if (p.kappa.is_explicit()) {
        const double v = p.kappa.value();
        q.kappa = KappaSpec::explicit_value(v == 0.0 ? 0.0 : -v);
    } else {
        q.kappa = KappaSpec::boundary_multiple(p.kappa.ratio(), -p.kappa.sign());
    }
    return q;
}

}  // namespace theta
