#include "theta/arithmetic.hpp"

#include <algorithm>
#include <cmath>

namespace theta {

ThetaParams embed(const GaussianFactor& g) {
    return make_params(g.a, g.a, g.shift, g.shift, 1.0);
}

ThetaParams embed(const Z2Distribution& z) {
    return make_params(0.0, 0.0, 0.0, 0.0, z.mass0 - z.mass1);
}

ThetaParams reconvolve(const Factorization& f, const Tolerance& tol) {
    ThetaParams acc = point_mass(GroupElement{0.0, 0});
    for (const ThetaParams& x : f.factors) acc = convolve(acc, x, tol);
    if (f.gaussian) acc = convolve(acc, embed(*f.gaussian), tol);
    if (f.z2) acc = convolve(acc, embed(*f.z2), tol);
    return acc;
}

namespace {

Classification classify_or_throw(const ThetaParams& p, const Tolerance& tol,
                                 const char* op) {
    const Classification c = classify(p, tol);
    if (c == Classification::Invalid)
        throw DomainError(std::string(op) + " requires non-Invalid params");
    return c;
}

}  // namespace

bool is_infinitely_divisible(const ThetaParams& p, const Tolerance& tol) {
    switch (classify_or_throw(p, tol, "is_infinitely_divisible")) {
        case Classification::GaussZ2:
        case Classification::GaussHaarLine:
        case Classification::DegenerateAtom:
            return true;
        default:
            return false;
    }
}

NthRoot nth_root(const ThetaParams& p, unsigned n, const Tolerance& tol) {
    if (n == 0) throw DomainError("nth_root requires n >= 1");
    if (!is_infinitely_divisible(p, tol))
        throw NotInfinitelyDivisible(
            "nth_root: no n-th roots exist for every n when sigma' < sigma");
    const ThetaParams q = canonicalize(p);
    const double kap = std::clamp(resolve_kappa(q, tol), -1.0, 1.0);
    const double root_kappa =
        kap == 0.0 ? 0.0 : std::pow(std::abs(kap), 1.0 / static_cast<double>(n));
    const double nn = static_cast<double>(n);
    NthRoot out;
    out.root = make_params(q.sigma / nn, q.sigma / nn, q.beta / nn, q.beta / nn,
                           root_kappa);
    out.shift = GroupElement{0.0, kap < 0.0 ? 1 : 0};
    return out;
}

bool is_indecomposable(const ThetaParams& p, const Tolerance& tol) {
    return classify_or_throw(p, tol, "is_indecomposable") ==
           Classification::Boundary;
}

bool has_indecomposable_factor(const ThetaParams& p, const Tolerance& tol) {
    switch (classify_or_throw(p, tol, "has_indecomposable_factor")) {
        case Classification::Interior:
        case Classification::Boundary:
            return true;
        case Classification::GaussHaarLine:
            return p.sigma > 0.0;
        default:  // GaussZ2, DegenerateAtom
            return false;
    }
}

Factorization max_gaussian_factor(const ThetaParams& p, const Tolerance& tol) {
    if (classify(p, tol) != Classification::Interior)
        throw NotInterior("max_gaussian_factor requires an Interior distribution");

    // r = |kappa| / bound in (0,1). The gaussian part and nu's parameters are
    // rational in r^2 and sigma'/sigma, which avoids underflow of kappa^2 and
    // b^2 themselves and makes the boundary identity for nu hold by
    // construction:
    //   nu_sigma  = (sigma - sigma') / D,  D = 1 - r^2 sigma'/sigma
    //   nu_sigma' = sigma' r^2 (1 - sigma'/sigma) / D
    const double r2 =
        std::exp(2.0 * (log_abs_kappa(p, tol) - log_boundary_bound(p, tol)));
    if (r2 == 0.0)
        throw ConstructionFailure(
            "max_gaussian_factor: kappa too far below the bound to represent nu");
    const double ratio = p.sigma_prime / p.sigma;
    const double denom = 1.0 - r2 * ratio;
    const double nu_sigma = (p.sigma - p.sigma_prime) / denom;
    const double nu_sigma_prime = p.sigma_prime * r2 * (1.0 - ratio) / denom;
    const double a = p.sigma - nu_sigma;
    if (!(a > 0.0) || !(a < p.sigma_prime) || !(nu_sigma_prime > 0.0))
        throw InternalError("max_gaussian_factor: gaussian part outside (0, sigma')");

    Factorization f;
    f.factors.push_back(ThetaParams{
        nu_sigma, nu_sigma_prime, p.beta, p.beta_prime,
        KappaSpec::boundary_multiple(1.0, kappa_sign(p))});
    f.gaussian = GaussianFactor{a, 0.0};
    return f;
}

Factorization factor_chain(const ThetaParams& p, std::size_t n, const Tolerance& tol) {
    if (n == 0) throw DomainError("factor_chain requires n >= 1");
    if (classify(p, tol) != Classification::Interior)
        throw NotInterior("factor_chain requires an Interior distribution");

    Factorization out;
    ThetaParams rem = p;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double slack = log_boundary_bound(rem, tol) - log_abs_kappa(rem, tol);
        const double target = std::min(10.0 * tol.relative, 0.5 * slack);
        double s1 = std::min(rem.sigma - rem.sigma_prime, rem.sigma_prime) / 4.0;
        double eta = 0.125;

        bool placed = false;
        for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
            const double sp1 = s1 * (1.0 - eta);
            ThetaParams res{rem.sigma - s1, rem.sigma_prime - sp1, rem.beta,
                            rem.beta_prime, KappaSpec{}};
            // residual kappa = kappa / kappa1 with kappa1 = sqrt(1 - eta)
            const double log_abs_res =
                log_abs_kappa(rem, tol) - 0.5 * std::log1p(-eta);
            res.kappa = KappaSpec::explicit_value(
                static_cast<double>(kappa_sign(rem)) * std::exp(log_abs_res));

            if (res.sigma_prime > 0.0 &&
                classify(res, tol) == Classification::Interior &&
                log_boundary_bound(res, tol) - log_abs_kappa(res, tol) >= target) {
                out.factors.push_back(ThetaParams{
                    s1, sp1, 0.0, 0.0, KappaSpec::boundary_multiple(1.0, 1)});
                rem = res;
                placed = true;
            } else {
                s1 *= 0.5;
                eta *= 0.5;
            }
        }
        if (!placed)
            throw ConstructionFailure("factor_chain: shrink schedule exhausted");
    }

    Factorization tail = max_gaussian_factor(rem, tol);
    out.factors.push_back(tail.factors.front());
    out.gaussian = tail.gaussian;
    return out;
}

Factorization lambda_pi_decomposition(const ThetaParams& p, const Tolerance& tol) {
    if (classify(p, tol) != Classification::Interior)
        throw NotInterior("lambda_pi_decomposition requires an Interior distribution");
    const double kappa_pi =
        std::exp(log_abs_kappa(p, tol) - log_boundary_bound(p, tol));
    Factorization f;
    f.factors.push_back(ThetaParams{
        p.sigma, p.sigma_prime, p.beta, p.beta_prime,
        KappaSpec::boundary_multiple(1.0, kappa_sign(p))});
    f.z2 = Z2Distribution{0.5 * (1.0 + kappa_pi), 0.5 * (1.0 - kappa_pi)};
    return f;
}

}  // namespace theta
