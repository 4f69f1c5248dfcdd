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

#include "treeamalg/rewriting.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "treeamalg/error.hpp"

namespace treeamalg {

void Presentation::validate() const {
  std::set<char> seen;
  for (char g : generators) {
    if (!std::islower(static_cast<unsigned char>(g))) {
      throw InputError(std::string("generator symbol '") + g + "' must be a lowercase letter");
    }
    if (!seen.insert(g).second) throw InputError(std::string("duplicate generator '") + g + "'");
  }
  for (char g : involutions) {
    if (!seen.count(g)) throw InputError(std::string("involution '") + g + "' is not a generator");
  }
  for (const auto& r : relators) {
    if (r.empty()) throw InputError("empty relator word");
    for (char c : r) {
      const char g = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (!seen.count(g)) {
        throw InputError("relator \"" + r + "\" uses unknown symbol '" + std::string(1, c) + "'");
      }
      if (std::isupper(static_cast<unsigned char>(c)) && is_involution(g)) {
        throw InputError("relator \"" + r + "\" inverts involution '" + std::string(1, g) + "'");
      }
    }
  }
}

bool Presentation::is_involution(char g) const {
  return std::find(involutions.begin(), involutions.end(), g) != involutions.end();
}

std::vector<char> Presentation::alphabet() const {
  std::vector<char> out;
  for (char g : generators) {
    out.push_back(g);
    if (!is_involution(g)) out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(g))));
  }
  return out;
}

char Presentation::inverse(char letter) const {
  const auto u = static_cast<unsigned char>(letter);
  if (std::islower(u)) {
    return is_involution(letter) ? letter : static_cast<char>(std::toupper(u));
  }
  return static_cast<char>(std::tolower(u));
}

std::string Presentation::inverse(const std::string& word) const {
  std::string out(word.rbegin(), word.rend());
  for (char& c : out) c = inverse(c);
  return out;
}

Presentation builtin_presentation(const std::string& name) {
  if (name == "free2") return {{'a', 'b'}, {}, {}};
  if (name == "free3") return {{'a', 'b', 'c'}, {}, {}};
  if (name == "z") return {{'a'}, {}, {}};
  if (name == "z2") return {{'a', 'b'}, {"abAB"}, {}};
  if (name == "surface2") return {{'a', 'b', 'c', 'd'}, {"acbdACBD"}, {}};
  if (name == "z2*z3") return {{'a', 'b'}, {"aa", "bbb"}, {'a'}};
  if (name == "z3*z3") return {{'a', 'b'}, {"aaa", "bbb"}, {}};
  if (name == "z2*z2*z2") return {{'a', 'b', 'c'}, {"aa", "bb", "cc"}, {'a', 'b', 'c'}};
  throw InputError("unknown built-in presentation \"" + name + "\"");
}

std::vector<std::string> builtin_presentation_names() {
  return {"free2", "free3", "z", "z2", "surface2", "z2*z3", "z3*z3", "z2*z2*z2"};
}

RewritingSystem::RewritingSystem(const Presentation& pres) : pres_(pres), rank_(256, -1) {
  pres_.validate();
  const auto alpha = pres_.alphabet();
  for (std::size_t i = 0; i < alpha.size(); ++i) rank_[static_cast<unsigned char>(alpha[i])] = static_cast<int>(i);

  for (char g : pres_.generators) {
    const char inv = pres_.inverse(g);
    if (inv == g) {
      rules_.push_back({std::string{g, g}, ""});
    } else {
      rules_.push_back({std::string{g, inv}, ""});
      rules_.push_back({std::string{inv, g}, ""});
    }
  }
  rebuild_index();
  CompletionBudget unlimited;
  unlimited.max_rules = static_cast<std::size_t>(-1);
  for (const auto& r : pres_.relators) add_equation(r, "", unlimited);
  // Free groups are confluent from the start.
  confluent_ = pres_.relators.empty();
}

bool RewritingSystem::shortlex_less(const std::string& a, const std::string& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int ra = rank_[static_cast<unsigned char>(a[i])];
    const int rb = rank_[static_cast<unsigned char>(b[i])];
    if (ra != rb) return ra < rb;
  }
  return false;
}

void RewritingSystem::rebuild_index() {
  by_last_.assign(256, {});
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    by_last_[static_cast<unsigned char>(rules_[i].first.back())].push_back(i);
  }
}

std::string RewritingSystem::reduce(std::string word) const {
  // Output buffer is always irreducible; pending input is a stack.
  std::string out;
  out.reserve(word.size());
  std::string pending(word.rbegin(), word.rend());
  while (!pending.empty()) {
    out.push_back(pending.back());
    pending.pop_back();
    for (std::size_t id : by_last_[static_cast<unsigned char>(out.back())]) {
      const auto& [lhs, rhs] = rules_[id];
      if (lhs.size() <= out.size() &&
          out.compare(out.size() - lhs.size(), lhs.size(), lhs) == 0) {
        out.resize(out.size() - lhs.size());
        // A prefix of an irreducible word is irreducible, so new redexes can
        // only end inside the re-fed right-hand side.
        pending.append(rhs.rbegin(), rhs.rend());
        break;
      }
    }
  }
  return out;
}

bool RewritingSystem::add_equation(std::string a, std::string b, const CompletionBudget& budget) {
  std::vector<std::pair<std::string, std::string>> stack{{std::move(a), std::move(b)}};
  while (!stack.empty()) {
    auto [x, y] = std::move(stack.back());
    stack.pop_back();
    x = reduce(std::move(x));
    y = reduce(std::move(y));
    if (x == y) continue;
    if (shortlex_less(x, y)) std::swap(x, y);
    if (rules_.size() >= budget.max_rules ||
        (budget.max_rule_length && x.size() > budget.max_rule_length)) {
      unresolved_ = {x, y};
      return false;
    }
    // Interreduce: rules whose left side contains the new one are demoted to
    // equations; right sides are normalised after insertion.
    std::vector<std::pair<std::string, std::string>> kept;
    for (auto& rule : rules_) {
      if (rule.first.find(x) != std::string::npos) {
        stack.push_back(std::move(rule));
      } else {
        kept.push_back(std::move(rule));
      }
    }
    kept.emplace_back(x, y);
    rules_ = std::move(kept);
    rebuild_index();
    for (auto& rule : rules_) rule.second = reduce(rule.second);
  }
  return true;
}

bool RewritingSystem::complete(const CompletionBudget& budget) {
  if (confluent_) return true;
  for (std::size_t pass = 0; pass < budget.max_passes; ++pass) {
    const auto snapshot = rules_;
    bool changed = false;
    for (const auto& [l1, r1] : snapshot) {
      for (const auto& [l2, r2] : snapshot) {
        // Proper overlaps: a suffix of l1 equals a prefix of l2.
        const std::size_t max_k = std::min(l1.size(), l2.size());
        for (std::size_t k = 1; k < max_k; ++k) {
          if (l1.compare(l1.size() - k, k, l2, 0, k) != 0) continue;
          std::string left = r1 + l2.substr(k);
          std::string right = l1.substr(0, l1.size() - k) + r2;
          left = reduce(std::move(left));
          right = reduce(std::move(right));
          if (left != right) {
            changed = true;
            if (!add_equation(left, right, budget)) return false;
          }
        }
        // Containment.
        if (&l1 != &l2) {
          const auto pos = l1.find(l2);
          if (pos != std::string::npos) {
            std::string left = reduce(r1);
            std::string right = reduce(l1.substr(0, pos) + r2 + l1.substr(pos + l2.size()));
            if (left != right) {
              changed = true;
              if (!add_equation(left, right, budget)) return false;
            }
          }
        }
      }
    }
    if (!changed) {
      confluent_ = true;
      return true;
    }
  }
  if (!unresolved_ && !rules_.empty()) unresolved_ = rules_.back();
  return false;
}

}  // namespace treeamalg
