#pragma once

// JSON forms of the library's values. Parsing failures of any kind surface as
// InputError.

#include <nlohmann/json.hpp>

#include "permlike/certificate.hpp"
#include "permlike/certify.hpp"
#include "permlike/cyclooracle.hpp"
#include "permlike/permsim.hpp"
#include "permlike/structure.hpp"

namespace permlike {

using nlohmann::json;

class InputError : public Error {
 public:
  using Error::Error;
};

/// The default phase modulus s * p^n, with s the prime-to-p part of ord(r).
i64 default_modulus(i64 p, int n, const Residue& r);

json to_json(const MonoMatrix& x);
MonoMatrix mono_from_json(const json& j);

/// {p, n, r, M, phases: [{orbit_rep, exp}]}, or {..., generator} when the
/// group was not built from orbit phases.
json to_json(const GroupSpec& g);
/// Accepts either form; missing phases default to 0 and a missing M to
/// default_modulus.
GroupSpec group_from_json(const json& j);

json to_json(const OrbitPartition& part);
json to_json(const UnitOrderDecomp& dec);
json to_json(const CycleType& t);
json to_json(const CycleFactors& f);
json to_json(const SpectrumFailure& f);
json to_json(const GroupVerdict& v);
json to_json(const RestrictionReport& r);
json to_json(const VerificationResult& v);
json to_json(const Certificate& c);
/// Reads back the fields needed for verification: group, f_coords,
/// f_modulus, perm_images; anything else is optional.
Certificate certificate_from_json(const json& j);

/// Parses text, mapping any JSON or schema error to InputError.
json parse_json(const std::string& text);

}  // namespace permlike
