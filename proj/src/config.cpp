#include "ordlim/config.hpp"

#include <fstream>
#include <sstream>

#include "ordlim/errors.hpp"

namespace ordlim::config {

using nlohmann::json;

namespace {

std::int64_t integer(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("config: missing \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw InputError(std::string("config: \"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

ExponentPair pair(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw InputError("config: exponent pairs are [k, l] integer arrays");
  }
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

HandleSpec handle(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw InputError("config: handle entries need a \"kind\"");
  }
  HandleSpec h;
  h.kind = j.at("kind").get<std::string>();
  if (h.kind == "z") {
    h.N = integer(j, "N");
  } else if (h.kind == "torus") {
    h.p = integer(j, "p");
    h.q = integer(j, "q");
  } else if (h.kind == "amalgam-of") {
    if (!j.contains("g") || !j.contains("h")) throw InputError("config: amalgam-of needs \"g\" and \"h\"");
    h.g = std::make_shared<HandleSpec>(handle(j.at("g")));
    h.h = std::make_shared<HandleSpec>(handle(j.at("h")));
  } else if (h.kind != "cyclic") {
    throw InputError("config: unknown handle kind \"" + h.kind + "\"");
  }
  return h;
}

FamilySpec family_spec(const json& j) {
  if (!j.contains("family") || !j.at("family").is_array()) throw InputError("config: handles need a \"family\" list");
  FamilySpec f;
  for (const json& e : j.at("family")) {
    const int level = static_cast<int>(integer(e, "level"));
    if (!f.levels.emplace(level, handle(e)).second) {
      throw InputError("config: level " + std::to_string(level) + " listed twice");
    }
  }
  if (j.contains("default")) f.fallback = handle(j.at("default"));
  return f;
}

std::optional<int> opt_int(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return static_cast<int>(integer(j, key));
}

}  // namespace

ChainSpec parse_chain(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw InputError("config: chain needs a \"type\"");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "constant") return ChainSpec::constant(integer(j, "k"), integer(j, "l"));
  if (type == "periodic") {
    if (!j.contains("pairs") || !j.at("pairs").is_array()) throw InputError("config: periodic needs \"pairs\"");
    std::vector<ExponentPair> pairs;
    for (const json& p : j.at("pairs")) pairs.push_back(pair(p));
    return ChainSpec::periodic(std::move(pairs));
  }
  if (type == "table") {
    if (!j.contains("entries") || !j.at("entries").is_object()) throw InputError("config: table needs \"entries\"");
    std::map<int, ExponentPair> entries;
    for (const auto& [key, value] : j.at("entries").items()) {
      std::size_t used = 0;
      int level = 0;
      try {
        level = std::stoi(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size() || key.empty()) throw InputError("config: table key \"" + key + "\" is not a level");
      entries[level] = pair(value);
    }
    if (!j.contains("default")) throw InputError("config: table needs \"default\"");
    return ChainSpec::table(std::move(entries), pair(j.at("default")));
  }
  if (type == "cyclic-tower") return ChainSpec::cyclic_tower(integer(j, "l"));
  throw InputError("config: unknown chain type \"" + type + "\"");
}

RunConfig parse(const json& j) {
  if (!j.is_object()) throw InputError("config: top level must be an object");
  RunConfig c;
  const json& chain = j.contains("chain") ? j.at("chain") : j;
  if (chain.contains("type") && chain.at("type") == "handles") {
    c.family = family_spec(chain);
  } else {
    c.chain = parse_chain(chain);
  }
  if (j.contains("budgets")) {
    if (!j.at("budgets").is_object()) throw InputError("config: \"budgets\" must be an object");
    for (const auto& [name, v] : j.at("budgets").items()) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
        throw InputError("config: budget \"" + name + "\" must be a positive integer");
      }
      c.budgets[name] = v.get<std::int64_t>();
    }
  }
  c.m = opt_int(j, "m");
  c.radius = opt_int(j, "radius");
  c.horizon = opt_int(j, "horizon");
  for (const auto& v : {c.m, c.radius, c.horizon}) {
    if (v && *v < 0) throw InputError("config: horizons must be >= 0");
  }
  return c;
}

RunConfig load(const std::string& path_or_json) {
  if (!path_or_json.empty() && path_or_json.front() == '{') {
    try {
      return parse(json::parse(path_or_json));
    } catch (const json::exception& e) {
      throw InputError(std::string("config: ") + e.what());
    }
  }
  return load_file(path_or_json);
}

RunConfig load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse(json::parse(ss.str()));
  } catch (const json::exception& e) {
    throw InputError("config " + path + ": " + e.what());
  }
}

ito::OrderedGroupHandle build(const HandleSpec& spec, const ito::HandleOptions& options) {
  if (spec.kind == "z") return ito::make_z_handle(spec.N, options);
  if (spec.kind == "torus") return ito::make_torus_handle(spec.p, spec.q, options);
  if (spec.kind == "cyclic") return ito::make_cyclic_central_handle(options);
  return ito::amalgamate(build(*spec.g, options), build(*spec.h, options), options).handle;
}

ito::HandleFamily family(const FamilySpec& spec, const ito::HandleOptions& options) {
  return [spec, options](int n) {
    auto it = spec.levels.find(n);
    if (it != spec.levels.end()) return build(it->second, options);
    if (!spec.fallback) throw InputError("handle family has no entry for level " + std::to_string(n));
    return build(*spec.fallback, options);
  };
}

}  // namespace ordlim::config
