#include "theta/json_io.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace theta {

using nlohmann::json;

namespace {

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw std::runtime_error(std::string("expected a number field '") + key + "'");
    return j.at(key).get<double>();
}

}  // namespace

json params_to_json(const ThetaParams& p) {
    json k;
    if (p.kappa.is_explicit())
        k = json{{"explicit", p.kappa.value()}};
    else
        k = json{{"boundary_ratio", p.kappa.ratio()}, {"sign", p.kappa.sign()}};
    return json{
        {"sigma", p.sigma},
        {"sigma_prime", p.sigma_prime},
        {"beta", p.beta},
        {"beta_prime", p.beta_prime},
        {"kappa", std::move(k)},
    };
}

ThetaParams params_from_json(const json& j) {
    if (!j.is_object()) throw std::runtime_error("params: expected an object");
    ThetaParams p;
    p.sigma = require_number(j, "sigma");
    p.sigma_prime = require_number(j, "sigma_prime");
    p.beta = require_number(j, "beta");
    p.beta_prime = require_number(j, "beta_prime");
    if (!j.contains("kappa") || !j.at("kappa").is_object())
        throw std::runtime_error("params: expected an object field 'kappa'");
    const json& k = j.at("kappa");
    if (k.contains("explicit")) {
        p.kappa = KappaSpec::explicit_value(require_number(k, "explicit"));
    } else if (k.contains("boundary_ratio")) {
        const double ratio = require_number(k, "boundary_ratio");
        if (!k.contains("sign") || !k.at("sign").is_number_integer())
            throw std::runtime_error("params: boundary kappa needs an integer 'sign'");
        const int sign = k.at("sign").get<int>();
        if (sign != 1 && sign != -1)
            throw std::runtime_error("params: 'sign' must be 1 or -1");
        p.kappa = KappaSpec::boundary_multiple(ratio, sign);
    } else {
        throw std::runtime_error("params: 'kappa' must carry 'explicit' or 'boundary_ratio'");
    }
    return p;
}

json group_element_to_json(const GroupElement& x) {
    return json{{"t", x.t}, {"k", x.k}};
}

json factorization_to_json(const Factorization& f) {
    json factors = json::array();
    for (const ThetaParams& p : f.factors) factors.push_back(params_to_json(p));
    json g = nullptr;
    json z = nullptr;
    if (f.gaussian) g = json{{"a", f.gaussian->a}, {"shift", f.gaussian->shift}};
    if (f.z2) z = json{{"mass0", f.z2->mass0}, {"mass1", f.z2->mass1}};
    return json{{"factors", std::move(factors)},
                {"gaussian", std::move(g)},
                {"z2", std::move(z)}};
}

json report_to_json(const VerificationReport& r) {
    auto num = [](double v) -> json {
        if (std::isfinite(v)) return v;
        return nullptr;  // +-inf and NaN have no JSON literal
    };
    return json{
        {"min_slack", num(r.min_slack)},
        {"argmin_t", num(r.argmin_t)},
        {"t0_analytic", num(r.t0_analytic)},
        {"mass_error", num(r.mass_error)},
        {"max_charfn_dev", num(r.max_charfn_dev)},
        {"verdict", verdict_name(r.verdict)},
        {"seed", r.seed},
        {"grid_points", r.grid_points},
        {"n", r.n},
    };
}

HeydeConfig heyde_config_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dists") || !j.at("dists").is_array() ||
        !j.contains("a") || !j.at("a").is_array() || !j.contains("b") ||
        !j.at("b").is_array())
        throw std::runtime_error(
            "heyde config: expected {\"dists\": [...], \"a\": [...], \"b\": [...]}");
    HeydeConfig cfg;
    for (const json& d : j.at("dists")) cfg.dists.push_back(params_from_json(d));
    for (const json& x : j.at("a")) {
        if (!x.is_number()) throw std::runtime_error("heyde config: 'a' must contain numbers");
        cfg.a.push_back(x.get<double>());
    }
    for (const json& x : j.at("b")) {
        if (!x.is_number()) throw std::runtime_error("heyde config: 'b' must contain numbers");
        cfg.b.push_back(x.get<double>());
    }
    return cfg;
}

}  // namespace theta
