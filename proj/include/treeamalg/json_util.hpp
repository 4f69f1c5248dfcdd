// Copyright 2026 The treeamalg Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "json.hpp"
#include "treeamalg/error.hpp"

namespace treeamalg {

// Field access that reports the dotted field path on failure.
template <typename T>
T require(const nlohmann::json& doc, const std::string& field, const std::string& context = "") {
  const std::string name = context.empty() ? field : context + "." + field;
  if (!doc.is_object() || !doc.contains(field)) throw SchemaError("missing field \"" + name + "\"");
  try {
    return doc.at(field).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("field \"" + name + "\": " + e.what());
  }
}

inline void require_schema(const nlohmann::json& doc, const std::string& expected) {
  const auto got = require<std::string>(doc, "schema");
  if (got != expected) throw SchemaError("schema \"" + got + "\" where \"" + expected + "\" was expected");
}

}  // namespace treeamalg
