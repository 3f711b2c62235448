#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "theta/core.hpp"
#include "theta/measure.hpp"

namespace theta {

/// Gaussian distribution on R viewed as a factor: char fn exp{-a s^2 + i shift s}.
struct GaussianFactor {
    double a = 0.0;
    double shift = 0.0;
};

/// Gaussian embedded in R x Z(2): both branches equal, kappa = 1.
ThetaParams embed(const GaussianFactor& g);

/// Z(2) distribution embedded in R x Z(2): (0, 0, 0, 0, mass0 - mass1).
ThetaParams embed(const Z2Distribution& z);

struct Factorization {
    std::vector<ThetaParams> factors;
    std::optional<GaussianFactor> gaussian;
    std::optional<Z2Distribution> z2;
};

/// Convolution of every part of a factorization, in listed order.
ThetaParams reconvolve(const Factorization& f, const Tolerance& tol = {});

/// True iff the distribution is infinitely divisible (allowing group-element
/// shifts), i.e. sigma = sigma' and beta = beta' after canonicalization.
bool is_infinitely_divisible(const ThetaParams& p, const Tolerance& tol = {});

struct NthRoot {
    ThetaParams root;
    GroupElement shift;
};

/// mu_n with mu = mu_n^{*n} * E_shift. Throws NotInfinitelyDivisible for
/// Interior/Boundary inputs: |kappa|^{1/n} <= sqrt(sigma'/sigma) fails for
/// large n whenever sigma' < sigma.
NthRoot nth_root(const ThetaParams& p, unsigned n, const Tolerance& tol = {});

/// True iff the distribution is indecomposable: exactly the Boundary class.
bool is_indecomposable(const ThetaParams& p, const Tolerance& tol = {});

/// False exactly for GaussZ2, DegenerateAtom, and the atomic Haar line
/// (kappa = 0, sigma = 0); true for Interior, Boundary, and the nondegenerate
/// Haar line.
bool has_indecomposable_factor(const ThetaParams& p, const Tolerance& tol = {});

/// Split an Interior distribution as nu * gamma with nu indecomposable
/// (Boundary) and gamma the maximal Gaussian factor:
///   b = exp{-(beta-beta')^2 / (4(sigma-sigma'))}
///   a = (sigma kappa^2 - sigma' b^2) / (kappa^2 - b^2), 0 < a < sigma'.
/// Throws NotInterior for other classifications.
Factorization max_gaussian_factor(const ThetaParams& p, const Tolerance& tol = {});

/// Split an Interior distribution into n indecomposable (Boundary) factors
/// plus a nondegenerate Gaussian. Factors carry zero shifts; the input shifts
/// stay in the residual. Throws NotInterior for other classifications.
Factorization factor_chain(const ThetaParams& p, std::size_t n,
                           const Tolerance& tol = {});

/// Split an Interior distribution as lambda * pi with lambda the boundary
/// distribution sharing p's shape parameters and pi on Z(2) with
/// kappa_pi = |kappa| / bound. Throws NotInterior.
Factorization lambda_pi_decomposition(const ThetaParams& p,
                                      const Tolerance& tol = {});

}  // namespace theta
