#include "theta/heyde.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace theta {

void validate(const HeydeConfig& cfg, const Tolerance& tol) {
    const std::size_t n = cfg.dists.size();
    if (n < 2) throw DomainError("heyde: need at least two distributions");
    if (cfg.a.size() != n || cfg.b.size() != n)
        throw DomainError("heyde: coefficient lists must match the number of distributions");
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(cfg.a[j]) || cfg.a[j] == 0.0 ||
            !std::isfinite(cfg.b[j]) || cfg.b[j] == 0.0)
            throw DomainError("heyde: coefficients must be nonzero reals");
        if (classify(cfg.dists[j], tol) == Classification::Invalid)
            throw DomainError("heyde: all distributions must be non-Invalid");
    }
}

bool hypothesis_ok(const HeydeConfig& cfg) {
    const std::size_t n = cfg.dists.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (cfg.b[i] / cfg.a[i] + cfg.b[j] / cfg.a[j] == 0.0) return false;
    return true;
}

std::vector<double> default_s_grid(const HeydeConfig& cfg, std::size_t points) {
    double sbar = std::numeric_limits<double>::infinity();
    for (const ThetaParams& d : cfg.dists) {
        if (d.sigma > 0.0) sbar = std::min(sbar, d.sigma);
        if (d.sigma_prime > 0.0) sbar = std::min(sbar, d.sigma_prime);
    }
    if (!std::isfinite(sbar)) sbar = 1.0;
    const double smax = 4.0 / std::sqrt(sbar);
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = 0.0;
        return grid;
    }
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = -smax + 2.0 * smax * static_cast<double>(i) /
                              static_cast<double>(points - 1);
    return grid;
}

double symmetry_defect(const HeydeConfig& cfg, std::span<const double> s_grid,
                       const Tolerance& tol) {
    return symmetry_defect(cfg, s_grid, s_grid, tol);
}

double symmetry_defect(const HeydeConfig& cfg, std::span<const double> s1_grid,
                       std::span<const double> s2_grid, const Tolerance& tol) {
    validate(cfg, tol);
    if (s1_grid.empty() || s2_grid.empty()) throw EmptyInput("heyde: empty s grid");

    const std::size_t n = cfg.dists.size();
    double defect = 0.0;
    for (double s1 : s1_grid) {
        for (double s2 : s2_grid) {
            for (int l : {0, 1}) {
                std::complex<double> lhs{1.0, 0.0};
                std::complex<double> rhs{1.0, 0.0};
                for (std::size_t j = 0; j < n; ++j) {
                    lhs *= char_fn(cfg.dists[j], cfg.a[j] * s1 + cfg.b[j] * s2, l, tol);
                    rhs *= char_fn(cfg.dists[j], cfg.a[j] * s1 - cfg.b[j] * s2, l, tol);
                }
                defect = std::max(defect, std::abs(lhs - rhs));
            }
        }
    }
    return defect;
}

}  // namespace theta
