#include "theta/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace theta {

namespace {

constexpr double kWindowSigmas = 14.0;   // gaussian tail beyond this < 1e-40
constexpr double kProbClamp = 1e-12;

bool has_density(Classification c, const ThetaParams& canonical) {
    switch (c) {
        case Classification::GaussZ2:
        case Classification::GaussHaarLine:
            return canonical.sigma > 0.0;
        case Classification::Interior:
        case Classification::Boundary:
            return true;
        default:
            return false;
    }
}

// Union of the windows around beta and beta', split at every window edge so
// a component much narrower than the other window keeps its own segment.
std::vector<std::pair<double, double>> density_windows(const ThetaParams& p) {
    const double w0 = kWindowSigmas * std::sqrt(p.sigma);
    const double w1 = kWindowSigmas * std::sqrt(p.sigma_prime);
    const std::pair<double, double> a{p.beta - w0, p.beta + w0};
    const std::pair<double, double> b{p.beta_prime - w1, p.beta_prime + w1};
    std::array<double, 4> edges{a.first, a.second, b.first, b.second};
    std::sort(edges.begin(), edges.end());
    std::vector<std::pair<double, double>> segs;
    for (int i = 0; i < 3; ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        if (lo >= hi) continue;
        const double mid = 0.5 * (lo + hi);
        const bool inside = (mid >= a.first && mid <= a.second) ||
                            (mid >= b.first && mid <= b.second);
        if (inside) segs.emplace_back(lo, hi);
    }
    return segs;
}

}  // namespace

double gaussian_rho(double a, double x) {
    if (!(a > 0.0)) throw DomainError("gaussian_rho requires a > 0");
    return std::exp(-x * x / (4.0 * a)) / (2.0 * std::sqrt(M_PI * a));
}

double density(const ThetaParams& p, double t, int k, const Tolerance& tol) {
    if (k != 0 && k != 1) throw DomainError("component index k must be 0 or 1");
    const Classification c = classify(p, tol);
    const ThetaParams q = canonicalize(p);
    if (!has_density(c, q))
        throw DomainError("density undefined: params are invalid or purely atomic");

    const double g0 = 0.5 * gaussian_rho(q.sigma, t - q.beta);
    const double kap = resolve_kappa(q, tol);
    if (kap == 0.0) return g0;

    const double g1 = 0.5 * kap * gaussian_rho(q.sigma_prime, t - q.beta_prime);
    const double v = (k == 0) ? g0 + g1 : g0 - g1;
    if (v >= 0.0) return v;

    const double scale = g0 + std::abs(g1);
    if (v >= -(1e-15 + 1e-12 * scale)) return 0.0;
    throw InternalError("negative density for params classified valid");
}

double component_mass(const ThetaParams& p, int k, const Tolerance& tol) {
    if (k != 0 && k != 1) throw DomainError("component index k must be 0 or 1");
    if (classify(p, tol) == Classification::Invalid)
        throw DomainError("component_mass requires non-Invalid params");
    const double kap = std::clamp(resolve_kappa(p, tol), -1.0, 1.0);
    const double m = (k == 0) ? 0.5 * (1.0 + kap) : 0.5 * (1.0 - kap);
    return std::clamp(m, 0.0, 1.0);
}

std::vector<SamplePoint> sample(const ThetaParams& p, std::size_t n,
                                std::uint64_t seed, const Tolerance& tol) {
    const Classification c = classify(p, tol);
    if (c == Classification::Invalid)
        throw DomainError("sample requires non-Invalid params");
    const ThetaParams q = canonicalize(p);

    std::vector<SamplePoint> out;
    out.reserve(n);

    if (c == Classification::DegenerateAtom) {
        const int k = kappa_sign(q) < 0 ? 1 : 0;
        out.assign(n, SamplePoint{q.beta, k});
        return out;
    }

    std::mt19937_64 eng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    const double kap = std::clamp(resolve_kappa(q, tol), -1.0, 1.0);
    const double log_abs_k = log_abs_kappa(q, tol);
    const int sign_k = kappa_sign(q);
    const double sd = std::sqrt(2.0 * q.sigma);

    for (std::size_t i = 0; i < n; ++i) {
        const double t = q.sigma > 0.0 ? q.beta + sd * normal(eng) : q.beta;
        double p1;
        if (kap == 0.0) {
            p1 = 0.5;
        } else if (q.sigma == 0.0) {
            p1 = 0.5 * (1.0 - kap);
        } else {
            // kappa * rho_sigma'(t-beta')/rho_sigma(t-beta), assembled from a
            // single exponent so the ratio alone can never overflow.
            const double dt0 = t - q.beta;
            const double dt1 = t - q.beta_prime;
            const double log_ratio = 0.5 * (std::log(q.sigma) - std::log(q.sigma_prime)) +
                                     dt0 * dt0 / (4.0 * q.sigma) -
                                     dt1 * dt1 / (4.0 * q.sigma_prime);
            p1 = 0.5 * (1.0 - sign_k * std::exp(log_abs_k + log_ratio));
        }
        if (p1 < -kProbClamp || p1 > 1.0 + kProbClamp)
            throw InternalError("conditional probability out of range: misclassified params");
        p1 = std::clamp(p1, 0.0, 1.0);
        const int k = unif(eng) < p1 ? 1 : 0;
        out.push_back(SamplePoint{t, k});
    }
    return out;
}

std::complex<double> empirical_char_fn(std::span<const SamplePoint> samples,
                                       double s, int l) {
    if (l != 0 && l != 1) throw DomainError("character index l must be 0 or 1");
    if (samples.empty()) throw EmptyInput("empirical_char_fn: no samples");
    std::complex<double> acc{0.0, 0.0};
    for (const SamplePoint& x : samples) {
        double sgn = (l == 1 && (x.k & 1)) ? -1.0 : 1.0;
        acc += sgn * std::polar(1.0, x.t * s);
    }
    return acc / static_cast<double>(samples.size());
}

double quadrature_mass(const ThetaParams& p, int k, const Tolerance& tol) {
    const Classification c = classify(p, tol);
    const ThetaParams q = canonicalize(p);
    if (!has_density(c, q))
        throw DomainError("quadrature_mass requires an absolutely continuous valid distribution");

    using quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    auto f = [&](double t) { return density(q, t, k, tol); };
    double total = 0.0;
    for (const auto& [lo, hi] : density_windows(q))
        total += quad::integrate(f, lo, hi, 14, 1e-10);
    return total;
}

}  // namespace theta
