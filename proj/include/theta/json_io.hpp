#pragma once

#include <json.hpp>

#include "theta/arithmetic.hpp"
#include "theta/core.hpp"
#include "theta/heyde.hpp"
#include "theta/measure.hpp"
#include "theta/oracle.hpp"

namespace theta {

// Canonical encodings. Objects serialize with sorted keys and shortest
// round-trip number literals (nlohmann defaults), so output is byte-stable.
//
//   ThetaParams: {"sigma": n, "sigma_prime": n, "beta": n, "beta_prime": n,
//                 "kappa": {"explicit": n} | {"boundary_ratio": n, "sign": +-1}}
//   Factorization: {"factors": [...], "gaussian": {"a": n, "shift": n} | null,
//                   "z2": {"mass0": n, "mass1": n} | null}
//   VerificationReport: all fields, plus seed / grid size / count used;
//                       non-finite values encode as null.
//   HeydeConfig: {"dists": [...], "a": [...], "b": [...]}

nlohmann::json params_to_json(const ThetaParams& p);
ThetaParams params_from_json(const nlohmann::json& j);

nlohmann::json group_element_to_json(const GroupElement& x);

nlohmann::json factorization_to_json(const Factorization& f);

nlohmann::json report_to_json(const VerificationReport& r);

HeydeConfig heyde_config_from_json(const nlohmann::json& j);

}  // namespace theta
