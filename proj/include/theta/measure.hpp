#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "theta/core.hpp"

namespace theta {

struct SamplePoint {
    double t = 0.0;
    int k = 0;
};

/// Distribution on Z(2): masses at 0 and 1. kappa_pi = mass0 - mass1 is its
/// characteristic function value at l = 1.
struct Z2Distribution {
    double mass0 = 1.0;
    double mass1 = 0.0;

    double kappa() const noexcept { return mass0 - mass1; }
};

/// Gaussian density rho_a(x) = exp{-x^2/(4a)} / (2 sqrt(pi a)), the density
/// whose characteristic function is exp{-a s^2} (variance 2a). Requires a > 0.
double gaussian_rho(double a, double x);

/// Lebesgue density of the component measure on R x {k}:
///   (1/2) rho_sigma(t - beta) + (-1)^k (kappa/2) rho_sigma'(t - beta').
/// Defined only for absolutely continuous valid params (sigma > 0); throws
/// DomainError for atoms (DegenerateAtom, sigma = 0) and Invalid input.
/// Values are >= 0 up to rounding; tiny negative noise is clamped to 0.
double density(const ThetaParams& p, double t, int k, const Tolerance& tol = {});

/// Mass of R x {k}: (1 + (-1)^k kappa) / 2.
double component_mass(const ThetaParams& p, int k, const Tolerance& tol = {});

/// n i.i.d. draws, deterministic for a given seed. The marginal over R is the
/// sigma-gaussian shifted by beta (the kappa terms cancel); k is then drawn
/// from the exact conditional (1 - kappa rho_sigma'(t-beta')/rho_sigma(t-beta))/2.
/// Conditional probabilities within 1e-12 outside [0,1] are clamped; anything
/// further out throws InternalError.
std::vector<SamplePoint> sample(const ThetaParams& p, std::size_t n,
                                std::uint64_t seed, const Tolerance& tol = {});

/// Monte-Carlo average of the character e^{its}(-1)^{kl} over the samples.
/// Throws EmptyInput on an empty list.
std::complex<double> empirical_char_fn(std::span<const SamplePoint> samples,
                                       double s, int l);

/// Component mass recomputed by adaptive quadrature of the density over the
/// union of 14-standard-deviation windows around beta and beta'. Independent
/// cross-check of component_mass; requires sigma > 0.
double quadrature_mass(const ThetaParams& p, int k, const Tolerance& tol = {});

}  // namespace theta
