#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

#include "theta/core.hpp"

namespace theta {

enum class Verdict { Consistent, Inconsistent };

/// Output of the brute-force verifiers. Fields that do not apply to a given
/// check are NaN. min_slack is measured on the log scale: for the grid
/// verifier it is min_t log(RHS(t)) - log|kappa| of the measure inequality
/// (+infinity when kappa = 0); for the split search it is the smallest
/// certification margin log|kappa| - log(max attainable |kappa1 kappa2|).
struct VerificationReport {
    double min_slack = std::numeric_limits<double>::quiet_NaN();
    double argmin_t = std::numeric_limits<double>::quiet_NaN();
    double t0_analytic = std::numeric_limits<double>::quiet_NaN();
    double mass_error = std::numeric_limits<double>::quiet_NaN();
    double max_charfn_dev = std::numeric_limits<double>::quiet_NaN();
    Verdict verdict = Verdict::Inconsistent;
    std::uint64_t seed = 0;
    std::size_t grid_points = 0;
    std::size_t n = 0;
};

const char* verdict_name(Verdict v);

/// Signed density of the R x {k} component evaluated directly from the
/// parametric form, with no validity requirement. This is the oracle's own
/// route; it shares nothing with theta::density beyond the defining formula.
double signed_component_density(const ThetaParams& p, double t, int k,
                                const Tolerance& tol = {});

/// Grid/minimization verification of the measure criterion. Scans the
/// positivity slack of the binding component on a grid (extended until it
/// provably brackets the global minimum), refines the minimizer, and
/// cross-checks total mass and the characteristic function by quadrature.
/// Consistent iff the grid finding matches classify(p) and every recorded
/// deviation is within tolerance. Requires sigma > 0 and sigma' > 0; atoms
/// are rejected with DomainError.
VerificationReport verify_measure_grid(const ThetaParams& p,
                                       std::size_t grid_points = 4096,
                                       const Tolerance& tol = {});

/// Monte-Carlo verification of convolution: samples n points from p and q,
/// adds them in the group, and compares the empirical characteristic function
/// of the sums against char_fn(convolve(p, q)) on a 16-point grid.
/// Consistent iff the maximum deviation is <= 6/sqrt(n).
VerificationReport verify_convolution_mc(const ThetaParams& p,
                                         const ThetaParams& q, std::size_t n,
                                         std::uint64_t seed,
                                         const Tolerance& tol = {});

/// Split search for a Boundary distribution: generates random admissible
/// parameter splits (both proof sub-cases: one factor supported on a single
/// gaussian shape, and both factors with sigma'_i < sigma_i) and certifies
/// for each that the kappa constraint is unsatisfiable, i.e. the maximum
/// attainable |kappa1 kappa2| falls strictly below |kappa|. Consistent iff
/// every trial certifies. Requires a Boundary input.
VerificationReport verify_indecomposability_search(const ThetaParams& p,
                                                   std::size_t trials,
                                                   std::uint64_t seed,
                                                   const Tolerance& tol = {});

}  // namespace theta
