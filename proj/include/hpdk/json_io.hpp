#pragma once

// JSON and CSV surfaces: exponent-set specs, coefficient models, point sets,
// Gram matrices and annihilation witnesses.  Parsers reject unknown fields.

#include "hpdk/construction.hpp"
#include "hpdk/exponents.hpp"
#include "hpdk/kernel.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <initializer_list>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hpdk {

using json = nlohmann::json;

/// Malformed or schema-violating input.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io {

namespace detail {

inline void require_object(const json& j, std::string_view what) {
  if (!j.is_object()) throw input_error(std::string(what) + " must be a JSON object");
}

inline void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed,
                           std::string_view what) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto a : allowed) known = known || key == a;
    if (!known) throw input_error("unknown field \"" + key + "\" in " + std::string(what));
  }
}

inline std::int64_t integer(const json& j, std::string_view what) {
  if (!j.is_number_integer()) throw input_error(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

inline double number(const json& j, std::string_view what) {
  if (!j.is_number()) throw input_error(std::string(what) + " must be a number");
  return j.get<double>();
}

inline ExponentPair pair(const json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 2) throw input_error(std::string(what) + " must be [k, l]");
  return {integer(j[0], what), integer(j[1], what)};
}

inline complex cplx(const json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 2) throw input_error(std::string(what) + " must be [re, im]");
  return {number(j[0], what), number(j[1], what)};
}

inline json cplx_json(complex z) { return json::array({z.real(), z.imag()}); }

inline const json& field(const json& j, const char* name, std::string_view what) {
  const auto it = j.find(name);
  if (it == j.end()) throw input_error(std::string(what) + " is missing \"" + name + "\"");
  return *it;
}

inline ExponentSetSpec spec_fields(const json& j) {
  ExponentSetSpec spec;
  if (const auto it = j.find("points"); it != j.end()) {
    if (!it->is_array()) throw input_error("\"points\" must be an array");
    for (const auto& p : *it) spec.points.push_back(pair(p, "exponent point"));
  }
  if (const auto it = j.find("families"); it != j.end()) {
    if (!it->is_array()) throw input_error("\"families\" must be an array");
    for (const auto& f : *it) {
      require_object(f, "family");
      reject_unknown(f, {"start", "step"}, "family");
      spec.families.push_back(
          {pair(field(f, "start", "family"), "start"), pair(field(f, "step", "family"), "step")});
    }
  }
  if (const auto it = j.find("require_origin"); it != j.end()) {
    if (!it->is_boolean()) throw input_error("\"require_origin\" must be a boolean");
    spec.require_origin = it->get<bool>();
  }
  try {
    validate_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw input_error(e.what());
  }
  return spec;
}

}  // namespace detail

/// {"points":[[k,l],...],"families":[{"start":[k0,l0],"step":[dk,dl]},...],
///  "require_origin":true}
[[nodiscard]] inline ExponentSetSpec spec_from_json(const json& j) {
  detail::require_object(j, "exponent set");
  detail::reject_unknown(j, {"points", "families", "require_origin"}, "exponent set");
  return detail::spec_fields(j);
}

[[nodiscard]] inline json spec_to_json(const ExponentSetSpec& spec) {
  json j;
  j["points"] = json::array();
  for (const auto& e : spec.points) j["points"].push_back({e.k, e.l});
  j["families"] = json::array();
  for (const auto& f : spec.families) {
    j["families"].push_back(
        {{"start", {f.start.k, f.start.l}}, {"step", {f.step.k, f.step.l}}});
  }
  j["require_origin"] = spec.require_origin;
  return j;
}

/// Spec fields plus "point_weights":[[k,l,w],...] and
/// "family_weights":[{"w":..,"rho":..},...] aligned by family index.
[[nodiscard]] inline CoefficientModel model_from_json(const json& j) {
  detail::require_object(j, "model");
  detail::reject_unknown(
      j, {"points", "families", "require_origin", "point_weights", "family_weights"}, "model");
  ExponentSetSpec spec = detail::spec_fields(j);
  WeightRule rule;
  if (const auto it = j.find("point_weights"); it != j.end()) {
    if (!it->is_array()) throw input_error("\"point_weights\" must be an array");
    for (const auto& pw : *it) {
      if (!pw.is_array() || pw.size() != 3) throw input_error("point weight must be [k, l, w]");
      const ExponentPair e{detail::integer(pw[0], "k"), detail::integer(pw[1], "l")};
      if (!rule.point_weights.emplace(e, detail::number(pw[2], "w")).second) {
        throw input_error("duplicate point weight");
      }
    }
  }
  if (const auto it = j.find("family_weights"); it != j.end()) {
    if (!it->is_array()) throw input_error("\"family_weights\" must be an array");
    for (const auto& fw : *it) {
      detail::require_object(fw, "family weight");
      detail::reject_unknown(fw, {"w", "rho"}, "family weight");
      rule.family_weights.push_back({detail::number(detail::field(fw, "w", "family weight"), "w"),
                                     detail::number(detail::field(fw, "rho", "family weight"), "rho")});
    }
  }
  try {
    return {std::move(spec), std::move(rule)};
  } catch (const std::invalid_argument& e) {
    throw input_error(e.what());
  }
}

[[nodiscard]] inline json model_to_json(const CoefficientModel& model) {
  json j = spec_to_json(model.spec());
  j["point_weights"] = json::array();
  for (const auto& e : model.spec().points) {
    j["point_weights"].push_back({e.k, e.l, model.rule().point_weights.at(e)});
  }
  j["family_weights"] = json::array();
  for (const auto& fw : model.rule().family_weights) {
    j["family_weights"].push_back({{"w", fw.w}, {"rho", fw.rho}});
  }
  return j;
}

/// {"dimension": m, "points": [[[re,im], ... m entries], ...]}; "dimension"
/// is optional when at least one point is given.
[[nodiscard]] inline ComplexPointSet points_from_json(const json& j) {
  detail::require_object(j, "point set");
  detail::reject_unknown(j, {"dimension", "points"}, "point set");
  const json& pts = detail::field(j, "points", "point set");
  if (!pts.is_array()) throw input_error("\"points\" must be an array");
  std::int64_t dim = 0;
  if (const auto it = j.find("dimension"); it != j.end()) {
    dim = detail::integer(*it, "dimension");
    if (dim < 1) throw input_error("dimension must be positive");
  } else if (!pts.empty() && pts[0].is_array()) {
    dim = static_cast<std::int64_t>(pts[0].size());
  }
  if (dim < 1) throw input_error("point set needs a positive dimension");
  std::vector<CVector> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if (!p.is_array() || static_cast<std::int64_t>(p.size()) != dim) {
      throw input_error("point " + std::to_string(i) + " does not have " + std::to_string(dim) +
                        " coordinates");
    }
    CVector v(dim);
    for (std::int64_t c = 0; c < dim; ++c) v[c] = detail::cplx(p[static_cast<std::size_t>(c)], "coordinate");
    out.push_back(std::move(v));
  }
  return {dim, std::move(out)};
}

[[nodiscard]] inline json points_to_json(const ComplexPointSet& pts) {
  json j;
  j["dimension"] = pts.dimension();
  j["points"] = json::array();
  for (const auto& p : pts.points()) {
    json row = json::array();
    for (Eigen::Index c = 0; c < p.size(); ++c) row.push_back(detail::cplx_json(p[c]));
    j["points"].push_back(std::move(row));
  }
  return j;
}

[[nodiscard]] inline json vector_to_json(const std::vector<complex>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(detail::cplx_json(z));
  return out;
}

[[nodiscard]] inline json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(detail::cplx_json(v[i]));
  return out;
}

[[nodiscard]] inline json matrix_to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(detail::cplx_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

[[nodiscard]] inline json gram_to_json(const GramMatrix& g) {
  json j;
  j["size"] = g.size();
  j["entries"] = matrix_to_json(g.entries);
  j["hermitian_defect"] = g.hermitian_defect;
  if (g.min_eigenvalue) j["min_eigenvalue"] = *g.min_eigenvalue;
  if (g.psd_verdict) j["psd_verdict"] = to_string(*g.psd_verdict);
  return j;
}

/// One line per row: re,im,re,im,...
[[nodiscard]] inline std::string gram_to_csv(const GramMatrix& g) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (Eigen::Index r = 0; r < g.entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < g.entries.cols(); ++c) {
      if (c > 0) os << ',';
      os << g.entries(r, c).real() << ',' << g.entries(r, c).imag();
    }
    os << '\n';
  }
  return os.str();
}

/// {"p":..,"q":..,"thetas":[..],"points":[[re,im],..],"coeffs":[[re,im],..],
///  "max_residual":..}
[[nodiscard]] inline json witness_to_json(const AnnihilationWitness& w) {
  json j;
  j["p"] = w.p;
  j["q"] = w.q;
  j["thetas"] = w.thetas;
  j["points"] = vector_to_json(w.points);
  j["coeffs"] = vector_to_json(w.coeffs);
  j["max_residual"] = w.max_residual;
  return j;
}

[[nodiscard]] inline AnnihilationWitness witness_from_json(const json& j) {
  detail::require_object(j, "witness");
  detail::reject_unknown(j, {"p", "q", "thetas", "points", "coeffs", "max_residual"}, "witness");
  AnnihilationWitness w;
  w.p = detail::integer(detail::field(j, "p", "witness"), "p");
  w.q = detail::integer(detail::field(j, "q", "witness"), "q");
  for (const auto& t : detail::field(j, "thetas", "witness")) w.thetas.push_back(detail::number(t, "theta"));
  for (const auto& z : detail::field(j, "points", "witness")) w.points.push_back(detail::cplx(z, "point"));
  for (const auto& z : detail::field(j, "coeffs", "witness")) w.coeffs.push_back(detail::cplx(z, "coeff"));
  w.max_residual = detail::number(detail::field(j, "max_residual", "witness"), "max_residual");
  if (w.points.size() != w.coeffs.size()) throw input_error("witness points and coeffs differ in length");
  return w;
}

/// 64-bit FNV-1a, hex encoded.
[[nodiscard]] inline std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace io
}  // namespace hpdk
