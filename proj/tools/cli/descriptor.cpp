#include "descriptor.hpp"

#include <openssl/evp.h>

#include <cstdio>

namespace nabla::cli {

namespace {

const json& require(const json& doc, const char* key) {
  if (!doc.is_object()) throw SchemaError("descriptor must be a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t require_int(const json& doc, const char* key, std::int64_t min_value) {
  const json& v = require(doc, key);
  if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
  auto x = v.get<std::int64_t>();
  if (x < min_value) throw SchemaError(std::string("field '") + key + "' must be >= " + std::to_string(min_value));
  return x;
}

std::optional<std::string> optional_label(const json& doc) {
  auto it = doc.find("label");
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw SchemaError("field 'label' must be a string");
  return it->get<std::string>();
}

json size_or_null(const std::optional<std::size_t>& v, std::size_t offset = 0) {
  return v ? json(*v + offset) : json(nullptr);
}

json exponents_json(const std::vector<LogNorm>& norms) {
  json out = json::array();
  for (const auto& n : norms) out.push_back(exponent_to_json(n.exponent()));
  return out;
}

}  // namespace

Signature parse_signature(const json& doc) {
  auto p = require_int(doc, "prime", 2);
  if (p > 0xFFFFFFFFLL) throw SchemaError("prime too large");
  Signature sig;
  try {
    sig.prime = Prime(static_cast<std::uint32_t>(p));
  } catch (const Error& e) {
    throw SchemaError(e.what());
  }
  sig.annulus_vars = static_cast<std::size_t>(require_int(doc, "n", 0));
  sig.disc_vars = static_cast<std::size_t>(require_int(doc, "m", 0));
  if (sig.nvars() == 0) throw SchemaError("need n + m >= 1");
  return sig;
}

LaurentPoly poly_from_json(const json& terms, const Signature& sig) {
  if (!terms.is_array()) throw SchemaError("a Laurent polynomial must be a list of {exps, coeff} records");
  LaurentPoly f(sig);
  for (const auto& term : terms) {
    const json& exps = require(term, "exps");
    const json& coeff = require(term, "coeff");
    if (!exps.is_array() || exps.size() != sig.nvars()) {
      throw SchemaError("'exps' must list " + std::to_string(sig.nvars()) + " integers");
    }
    ExponentVector e;
    for (const auto& x : exps) {
      if (!x.is_number_integer()) throw SchemaError("'exps' entries must be integers");
      auto v = x.get<std::int64_t>();
      if (v < -(1LL << 30) || v > (1LL << 30)) throw SchemaError("exponent out of range");
      e.push_back(static_cast<int>(v));
    }
    if (!coeff.is_string()) throw SchemaError("'coeff' must be a \"num/den\" string");
    try {
      f.add_term(e, parse_rational(coeff.get<std::string>()));
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& err) {
      throw SchemaError(err.what());
    }
  }
  return f;
}

ModuleDescriptor parse_module_descriptor(const json& doc) {
  Signature sig = parse_signature(doc);
  auto rank = static_cast<std::size_t>(require_int(doc, "rank", 1));
  const json& matrices = require(doc, "matrices");
  if (!matrices.is_array() || matrices.size() != sig.nvars()) {
    throw SchemaError("'matrices' must hold n + m = " + std::to_string(sig.nvars()) + " matrices");
  }
  std::vector<PolyMatrix> ms;
  for (const auto& mj : matrices) {
    if (!mj.is_array() || mj.size() != rank) throw SchemaError("each matrix must have 'rank' rows");
    PolyMatrix m(sig, rank);
    for (std::size_t r = 0; r < rank; ++r) {
      if (!mj[r].is_array() || mj[r].size() != rank) throw SchemaError("each matrix row must have 'rank' entries");
      for (std::size_t c = 0; c < rank; ++c) m(r, c) = poly_from_json(mj[r][c], sig);
    }
    ms.push_back(std::move(m));
  }
  return {ConnectionModule(sig, rank, std::move(ms)), optional_label(doc)};
}

PolyDescriptor parse_poly_descriptor(const json& doc) {
  Signature sig = parse_signature(doc);
  return {poly_from_json(require(doc, "poly"), sig), optional_label(doc)};
}

json poly_to_json(const LaurentPoly& f) {
  json out = json::array();
  for (const auto& [e, c] : f.terms()) out.push_back({{"exps", e}, {"coeff", format_rational(c)}});
  return out;
}

json module_to_json(const ConnectionModule& module, const std::optional<std::string>& label) {
  const auto& sig = module.signature();
  json matrices = json::array();
  for (const auto& m : module.matrices()) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rank(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.rank(); ++c) row.push_back(poly_to_json(m(r, c)));
      rows.push_back(std::move(row));
    }
    matrices.push_back(std::move(rows));
  }
  json doc = {{"prime", sig.prime.value()},
              {"n", sig.annulus_vars},
              {"m", sig.disc_vars},
              {"rank", module.rank()},
              {"matrices", std::move(matrices)}};
  if (label) doc["label"] = *label;
  return doc;
}

std::string descriptor_hash(const json& doc) {
  const std::string bytes = doc.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int k = 0; k < len; ++k) {
    std::snprintf(buf, sizeof buf, "%02x", digest[k]);
    hex += buf;
  }
  return hex;
}

json exponent_to_json(const Exponent& e) { return e.str(); }

Exponent exponent_from_string(const std::string& text) {
  if (text == "inf") return Exponent::infinity();
  return Exponent(parse_rational(text));
}

json to_json(const CurvatureViolation& v) {
  json rows = json::array();
  for (std::size_t r = 0; r < v.curvature.rank(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < v.curvature.rank(); ++c) row.push_back(poly_to_json(v.curvature(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"i", v.i + 1}, {"j", v.j + 1}, {"curvature", std::move(rows)}};
}

json to_json(const RadiusReport& report) {
  json rho = json::array();
  for (const auto& r : report.rho.entries()) rho.push_back(exponent_to_json(r.exponent()));
  json dirs = json::array();
  for (const auto& d : report.directions) {
    dirs.push_back({{"direction", d.direction + 1},
                    {"window_begin", d.window_begin},
                    {"window_exponents", exponents_json(d.window)},
                    {"point_exponent", exponent_to_json(d.point.exponent())},
                    {"stability", format_rational(d.stability)},
                    {"exact", d.exact},
                    {"vanishing_depth", size_or_null(d.vanishing_depth)}});
  }
  return {{"rho", std::move(rho)},
          {"depth", report.depth},
          {"window", format_rational(report.window_fraction)},
          {"ir_exponent", exponent_to_json(report.ir.exponent())},
          {"exact", report.exact},
          {"directions", std::move(dirs)}};
}

json to_json(const Verdict& verdict) {
  return {{"verdict", to_string(verdict.kind)},
          {"rationale", verdict.rationale},
          {"witness_direction", size_or_null(verdict.witness_direction, 1)},
          {"report", to_json(verdict.report)}};
}

json to_json(const TaylorReport& report) {
  json seqs = json::array();
  for (const auto& s : report.sequences) {
    json values = json::array();
    for (const auto& e : s.exponents) values.push_back(exponent_to_json(e));
    seqs.push_back({{"direction", s.direction + 1},
                    {"basis", s.basis + 1},
                    {"outcome", to_string(s.outcome)},
                    {"early_tail_min", exponent_to_json(s.early_tail_min)},
                    {"late_tail_min", exponent_to_json(s.late_tail_min)},
                    {"exponents", std::move(values)}});
  }
  return {{"outcome", to_string(report.outcome)},
          {"eta", exponent_to_json(report.eta.exponent())},
          {"lambda", exponent_to_json(report.lambda.exponent())},
          {"bound", report.bound},
          {"witness_direction", size_or_null(report.witness_direction, 1)},
          {"witness_basis", size_or_null(report.witness_basis, 1)},
          {"witness_index", size_or_null(report.witness_index)},
          {"sequences", std::move(seqs)}};
}

json to_json(const WitnessSearchResult& result, std::size_t depth, std::size_t trials, std::uint64_t seed) {
  json witness = nullptr;
  if (result.witness) {
    const auto& w = *result.witness;
    json coords = json::array();
    for (const auto& c : w.point.coordinates()) coords.push_back(format_rational(c));
    witness = {{"direction", w.direction + 1},
               {"coordinates", std::move(coords)},
               {"trial", w.trial},
               {"ir_full_exponent", exponent_to_json(w.full.ir.exponent())},
               {"ir_curve_exponent", exponent_to_json(w.curve.ir.exponent())},
               {"curve_stability", format_rational(w.curve.directions.front().stability)},
               {"depth", depth},
               {"seed", seed}};
  }
  return {{"full_verdict", to_json(result.full_verdict)},
          {"witness", std::move(witness)},
          {"trials", trials},
          {"trials_run", result.trials_run},
          {"seed", seed},
          {"depth", depth}};
}

json to_json(const DominantTerm& dom) {
  return {{"a_set", dom.a_set}, {"b_set", dom.b_set}, {"n0", dom.n0}};
}

json to_json(const DominanceCertificate& cert) {
  return {{"n0", cert.n0},
          {"interval", {format_rational(cert.interval.alpha_exponent()), format_rational(cert.interval.beta_exponent())}},
          {"sup_norm_exponent", exponent_to_json(cert.sup_norm.exponent())},
          {"margin", exponent_to_json(cert.margin)},
          {"branch", cert.from_a_set ? "A" : "B"}};
}

}  // namespace nabla::cli
