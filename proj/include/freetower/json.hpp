#pragma once

#include <json.hpp>  // nlohmann/json, vendored

namespace freetower {

/// JSON value type for every serialized artifact; keys keep insertion order
/// so output is stable and readable.
using Json = nlohmann::ordered_json;

}  // namespace freetower
