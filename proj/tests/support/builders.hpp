// Copyright 2026 The idts Authors
//
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

#include <optional>
#include <vector>

#include "idts/signature.hpp"
#include "idts/term.hpp"

namespace idts::testing {

// Builders and readers for the nat / listnat vocabulary shared by most
// fixtures (constructors z, s, nil, cons).

inline TermPtr mk_nat(const Signature& sig, int n) {
  TermPtr t = sig.make_fun("z", {});
  for (int i = 0; i < n; ++i) t = sig.make_fun("s", {t});
  return t;
}

inline std::optional<int> read_nat(const TermPtr& t) {
  int n = 0;
  TermPtr cur = t;
  while (true) {
    if (cur->kind() != Term::Kind::Fun) return std::nullopt;
    if (cur->name() == "z" && cur->args().empty()) return n;
    if (cur->name() == "s" && cur->args().size() == 1) {
      ++n;
      cur = cur->args()[0];
      continue;
    }
    return std::nullopt;
  }
}

inline TermPtr mk_list(const Signature& sig, const std::vector<int>& xs) {
  TermPtr t = sig.make_fun("nil", {});
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
    t = sig.make_fun("cons", {mk_nat(sig, *it), t});
  }
  return t;
}

inline std::optional<std::vector<int>> read_list(const TermPtr& t) {
  std::vector<int> out;
  TermPtr cur = t;
  while (true) {
    if (cur->kind() != Term::Kind::Fun) return std::nullopt;
    if (cur->name() == "nil" && cur->args().empty()) return out;
    if (cur->name() == "cons" && cur->args().size() == 2) {
      auto head = read_nat(cur->args()[0]);
      if (!head) return std::nullopt;
      out.push_back(*head);
      cur = cur->args()[1];
      continue;
    }
    return std::nullopt;
  }
}

}  // namespace idts::testing
