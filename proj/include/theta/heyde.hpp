#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "theta/core.hpp"

namespace theta {

/// Configuration for the conditional-symmetry check of the linear forms
/// L1 = sum a_j xi_j, L2 = sum b_j xi_j. Automorphisms of R x Z(2) act as
/// (t, k) -> (c t, k), so the coefficients are nonzero reals.
struct HeydeConfig {
    std::vector<ThetaParams> dists;
    std::vector<double> a;
    std::vector<double> b;
};

/// Throws DomainError unless n >= 2, sizes match, all coefficients are
/// nonzero finite reals, and every distribution classifies non-Invalid.
void validate(const HeydeConfig& cfg, const Tolerance& tol = {});

/// Advisory hypothesis of the underlying theorem:
/// b_i a_i^{-1} + b_j a_j^{-1} != 0 for all i, j. (The i = j instances are
/// automatically nonzero, so including them changes nothing.)
bool hypothesis_ok(const HeydeConfig& cfg);

/// 17 equispaced points over [-4/sqrt(sbar), 4/sqrt(sbar)] with sbar the
/// smallest positive variance parameter among the dists (1 if none).
std::vector<double> default_s_grid(const HeydeConfig& cfg, std::size_t points = 17);

/// Max over the grid square and both character parities of
///   | prod_j f_j(a_j s1 + b_j s2, l) - prod_j f_j(a_j s1 - b_j s2, l) |.
/// Zero exactly when the conditional distribution of L2 given L1 is symmetric
/// on the tested characters.
double symmetry_defect(const HeydeConfig& cfg, std::span<const double> s_grid,
                       const Tolerance& tol = {});

/// Same check over the rectangle s1_grid x s2_grid; rescaling all a_j by c
/// leaves this invariant once s1_grid is divided by c.
double symmetry_defect(const HeydeConfig& cfg, std::span<const double> s1_grid,
                       std::span<const double> s2_grid, const Tolerance& tol = {});

}  // namespace theta
