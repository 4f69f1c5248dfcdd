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

// Experiment configs and the pipeline runner.
//
// Config: {"schema": "treeamalg.experiment/1", "name": N, "seed": S,
//          "steps": [{"id": I, "op": OP, "after": [ids], "expect": {...}, knobs...}]}
//
// Steps form a DAG through "after"; steps whose dependencies are done run
// together. Reports are assembled in config order, so thread timing never
// reaches the output.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace treeamalg {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kExperimentSchema = "treeamalg.experiment/1";
inline constexpr const char* kErrorManifestSchema = "treeamalg.errors/1";

// FNV-1a over the canonical (key-sorted, compact) dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

std::vector<std::string> experiment_ops();

// Schema errors name the offending field ("steps[2].spec.tree.depth").
void validate_experiment(const nlohmann::json& config);

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the config seed
  unsigned threads = 0;
};

struct ExperimentReport {
  nlohmann::json doc;     // treeamalg.report/1
  nlohmann::json errors;  // treeamalg.errors/1
  bool passed = true;     // every expectation held and no step failed
  bool has_errors() const { return !errors.at("errors").empty(); }
};

// Validates first (throws SchemaError), then runs. Step failures are
// recorded in the error manifest; dependants of a failed step are skipped.
ExperimentReport run_experiment(const nlohmann::json& config, const RunOptions& options = {});

// Writes report.json, report.txt and errors.json into `dir` (created).
void write_report_bundle(const ExperimentReport& report, const std::string& dir);

// Named adhesion-1 specs with pairwise distinct adhesion sets: "k3", "c6",
// "z4", "free2", "free2-p4". Tree depth 0; steps override it.
std::vector<std::string> corpus_spec_names();
nlohmann::json corpus_spec(const std::string& name);

std::vector<std::string> builtin_suite_names();
// Config for a built-in suite; unknown names are input errors.
nlohmann::json builtin_suite(const std::string& name);

}  // namespace treeamalg
