#pragma once

#include <set>
#include <string>
#include <string_view>

#include "json.hpp"

#include "plf/hopf_spec.hpp"

namespace plf {

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json &obj, std::initializer_list<std::string_view> allowed, const std::string &where) {
  for (const auto &[key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed)
      ok = ok || key == a;
    if (!ok)
      throw InputError(where + ": unknown field \"" + key + "\"");
  }
}

inline const json &require(const json &obj, const char *key, const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw InputError(where + ": missing field \"" + key + "\"");
  return *it;
}

inline int require_int(const json &obj, const char *key, const std::string &where) {
  const json &v = require(obj, key, where);
  if (!v.is_number_integer())
    throw InputError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

inline Rational parse_coeff(const json &v, const std::string &where) {
  if (v.is_number_integer())
    return Rational(v.get<long>());
  if (!v.is_string())
    throw InputError(where + ": coefficient must be a string \"p/q\" or an integer");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const InputError &e) {
    throw InputError(where + ": " + e.what());
  }
}

inline json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
}

inline std::vector<Generator> parse_generators(const json &list, const std::string &where) {
  if (!list.is_array())
    throw InputError(where + ": expected a list");
  std::vector<Generator> out;
  for (std::size_t n = 0; n < list.size(); ++n) {
    std::string at = where + "[" + std::to_string(n) + "]";
    const json &g = list[n];
    if (!g.is_object())
      throw InputError(at + ": expected an object");
    reject_unknown_keys(g, {"id", "degree", "label"}, at);
    Generator gen{require_int(g, "id", at), require_int(g, "degree", at), {}};
    if (auto it = g.find("label"); it != g.end()) {
      if (!it->is_string())
        throw InputError(at + ".label: expected a string");
      gen.label = it->get<std::string>();
    }
    out.push_back(std::move(gen));
  }
  return out;
}

inline json generators_json(const std::vector<Generator> &gens) {
  json out = json::array();
  for (const auto &g : gens) {
    json j = {{"id", g.id}, {"degree", g.degree}};
    if (!g.label.empty())
      j["label"] = g.label;
    out.push_back(std::move(j));
  }
  return out;
}

} // namespace detail

/// Parses a coproduct document without structural validation.
inline CoproductSpec parse_spec(std::string_view text) {
  using detail::json;
  json doc = detail::parse_document(text);
  if (!doc.is_object())
    throw InputError("spec document: expected an object");
  detail::reject_unknown_keys(doc, {"name", "generators", "coproduct"}, "spec");

  CoproductSpec spec;
  const json &name = detail::require(doc, "name", "spec");
  if (!name.is_string())
    throw InputError("spec.name: expected a string");
  spec.name = name.get<std::string>();
  spec.generators = detail::parse_generators(detail::require(doc, "generators", "spec"), "spec.generators");

  const json &cop = detail::require(doc, "coproduct", "spec");
  if (!cop.is_array())
    throw InputError("spec.coproduct: expected a list");
  for (std::size_t n = 0; n < cop.size(); ++n) {
    std::string at = "spec.coproduct[" + std::to_string(n) + "]";
    const json &e = cop[n];
    if (!e.is_object())
      throw InputError(at + ": expected an object");
    detail::reject_unknown_keys(e, {"source", "left", "right", "coeff"}, at);
    const json &right = detail::require(e, "right", at);
    if (!right.is_array())
      throw InputError(at + ".right: expected a list of ids");
    std::vector<GenId> ids;
    for (const auto &r : right) {
      if (!r.is_number_integer())
        throw InputError(at + ".right: expected integer ids");
      ids.push_back(r.get<GenId>());
    }
    if (ids.empty())
      throw InputError(at + ".right: empty right multiset");
    if (!std::is_sorted(ids.begin(), ids.end()))
      throw InputError(at + ".right: ids must be sorted ascending");
    spec.entries.push_back({detail::require_int(e, "source", at), detail::require_int(e, "left", at),
                            Monomial(std::move(ids)), detail::parse_coeff(detail::require(e, "coeff", at), at + ".coeff")});
  }

  return spec;
}

/// parse_spec followed by validate_spec; any violation is an InputError.
inline CoproductSpec load_spec(std::string_view text) {
  CoproductSpec spec = parse_spec(text);
  if (auto report = validate_spec(spec); !report.empty())
    throw InputError("invalid spec \"" + spec.name + "\": " + describe(report));
  return spec;
}

inline std::string save_spec(const CoproductSpec &spec) {
  using detail::json;
  json entries = json::array();
  for (const auto &e : spec.entries)
    entries.push_back({{"source", e.source}, {"left", e.left}, {"right", e.right.indices()}, {"coeff", e.coeff.str()}});
  json doc = {{"name", spec.name}, {"generators", detail::generators_json(spec.generators)}, {"coproduct", entries}};
  return doc.dump(2) + "\n";
}

} // namespace plf
