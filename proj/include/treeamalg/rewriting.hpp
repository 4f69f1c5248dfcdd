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

// String rewriting for finitely presented groups.
//
// Words are strings over the generator letters; an uppercase letter is the
// inverse of its lowercase generator, and involutive generators are their own
// inverse. Identification of group elements goes through a shortlex rewriting
// system completed by Knuth-Bendix. A confluent system yields shortlex-least
// normal forms, which are geodesic words, so equal elements are detected
// exactly. If completion does not finish within its budget, generation
// refuses to proceed instead of guessing.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treeamalg {

struct Presentation {
  std::vector<char> generators;  // lowercase letters
  std::vector<std::string> relators;
  std::vector<char> involutions;  // subset of generators

  // Validates symbols and relator words; throws InputError.
  void validate() const;
  bool is_involution(char g) const;
  // Every letter usable in a word: a, A, b, B, ... (involutions only once).
  std::vector<char> alphabet() const;
  char inverse(char letter) const;
  std::string inverse(const std::string& word) const;
};

// Built-in library: "free2", "free3", "z", "z2", "surface2", "z2*z3",
// "z3*z3", "z2*z2*z2".
Presentation builtin_presentation(const std::string& name);
std::vector<std::string> builtin_presentation_names();

struct CompletionBudget {
  std::size_t max_rules = 4000;
  std::size_t max_passes = 64;
  std::size_t max_rule_length = 0;  // 0: unbounded
};

class RewritingSystem {
 public:
  explicit RewritingSystem(const Presentation& pres);

  // Runs Knuth-Bendix. Returns true when the system is confluent.
  bool complete(const CompletionBudget& budget = {});

  bool confluent() const { return confluent_; }
  // The last critical pair that could not be resolved within the budget.
  const std::optional<std::pair<std::string, std::string>>& unresolved() const { return unresolved_; }

  std::string reduce(std::string word) const;
  const std::vector<std::pair<std::string, std::string>>& rules() const { return rules_; }

  // Shortlex order on words under this alphabet.
  bool shortlex_less(const std::string& a, const std::string& b) const;

 private:
  bool add_equation(std::string a, std::string b, const CompletionBudget& budget);
  void rebuild_index();

  Presentation pres_;
  std::vector<int> rank_;  // letter rank indexed by unsigned char
  std::vector<std::pair<std::string, std::string>> rules_;
  std::vector<std::vector<std::size_t>> by_last_;  // rule ids by last lhs letter
  bool confluent_ = false;
  std::optional<std::pair<std::string, std::string>> unresolved_;
};

}  // namespace treeamalg
