#pragma once

// Run configuration files:
//   {"chain": {"type": "constant", "k": 2, "l": 3}, "budgets": {"sign": 20000}, "m": 1, ...}
// or the chain object on its own. Chain types: constant, periodic, table,
// cyclic-tower, handles. A handles family lists
//   {"level": n, "kind": "z", "N": 2} | {"level": n, "kind": "torus", "p": 2, "q": 3}
//   | {"level": n, "kind": "cyclic"} | {"level": n, "kind": "amalgam-of", "g": {...}, "h": {...}}
// with an optional "default" entry (no level) for every other level.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "ordlim/chainspec.hpp"
#include "ordlim/ito.hpp"

namespace ordlim::config {

struct HandleSpec {
  std::string kind;  // z, torus, cyclic, amalgam-of
  std::int64_t N = 2;
  std::int64_t p = 2;
  std::int64_t q = 3;
  std::shared_ptr<HandleSpec> g;
  std::shared_ptr<HandleSpec> h;
};

struct FamilySpec {
  std::map<int, HandleSpec> levels;
  std::optional<HandleSpec> fallback;
};

struct RunConfig {
  std::optional<ChainSpec> chain;
  std::optional<FamilySpec> family;
  std::map<std::string, std::int64_t> budgets;
  std::optional<int> m;
  std::optional<int> radius;
  std::optional<int> horizon;
};

/// Throws InputError on anything malformed.
RunConfig parse(const nlohmann::json& j);
RunConfig load_file(const std::string& path);
/// Accepts a path, or inline JSON when the text starts with '{'.
RunConfig load(const std::string& path_or_json);

ChainSpec parse_chain(const nlohmann::json& j);

ito::OrderedGroupHandle build(const HandleSpec& spec, const ito::HandleOptions& options);
/// Throws InputError for a level with no entry and no default.
ito::HandleFamily family(const FamilySpec& spec, const ito::HandleOptions& options);

}  // namespace ordlim::config
