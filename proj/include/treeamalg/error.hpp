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

#include <stdexcept>
#include <string>

namespace treeamalg {

enum class ErrorKind {
  kInput,
  kCertification,
  kCapacity,
  kGeneration,
  kPrecondition,
  kValidation,
  kSchema,
};

// Base of every error thrown by the library. The kind is also encoded in the
// concrete subclass so callers can catch selectively.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define TREEAMALG_DEFINE_ERROR(Name, Kind)                               \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

TREEAMALG_DEFINE_ERROR(InputError, kInput)
TREEAMALG_DEFINE_ERROR(CertificationError, kCertification)
TREEAMALG_DEFINE_ERROR(CapacityError, kCapacity)
TREEAMALG_DEFINE_ERROR(GenerationError, kGeneration)
TREEAMALG_DEFINE_ERROR(PreconditionError, kPrecondition)
TREEAMALG_DEFINE_ERROR(ValidationError, kValidation)
TREEAMALG_DEFINE_ERROR(SchemaError, kSchema)

#undef TREEAMALG_DEFINE_ERROR

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInput: return "input";
    case ErrorKind::kCertification: return "certification";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kGeneration: return "generation";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kSchema: return "schema";
  }
  return "unknown";
}

}  // namespace treeamalg
