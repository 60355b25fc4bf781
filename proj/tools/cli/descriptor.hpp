#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

#include "nabla/connection.hpp"
#include "nabla/curves.hpp"
#include "nabla/newton.hpp"
#include "nabla/radius.hpp"

namespace nabla::cli {

using nlohmann::json;

inline constexpr const char* kReportSchema = "nabla-radius/1";

class SchemaError : public Error {
 public:
  using Error::Error;
};

struct ModuleDescriptor {
  ConnectionModule module;
  std::optional<std::string> label;
};

/// A single Laurent polynomial, for the lemma subcommand.
struct PolyDescriptor {
  LaurentPoly poly;
  std::optional<std::string> label;
};

/// Reads {"prime","n","m","rank","matrices","label"?}.  Unknown keys such
/// as "expected" are ignored.
ModuleDescriptor parse_module_descriptor(const json& doc);

/// Reads {"prime","n","m","poly","label"?}.
PolyDescriptor parse_poly_descriptor(const json& doc);

Signature parse_signature(const json& doc);
LaurentPoly poly_from_json(const json& terms, const Signature& sig);

json poly_to_json(const LaurentPoly& f);
json module_to_json(const ConnectionModule& module, const std::optional<std::string>& label = std::nullopt);

/// SHA-256 (hex) of the compact dump of `doc`.
std::string descriptor_hash(const json& doc);

json exponent_to_json(const Exponent& e);
Exponent exponent_from_string(const std::string& text);

json to_json(const CurvatureViolation& v);
json to_json(const RadiusReport& report);
json to_json(const Verdict& verdict);
json to_json(const TaylorReport& report);
json to_json(const WitnessSearchResult& result, std::size_t depth, std::size_t trials, std::uint64_t seed);
json to_json(const DominantTerm& dom);
json to_json(const DominanceCertificate& cert);

}  // namespace nabla::cli
