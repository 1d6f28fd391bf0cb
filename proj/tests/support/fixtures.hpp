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

#include <stdexcept>
#include <string>
#include <vector>

#include "idts/parser.hpp"
#include "idts/term.hpp"

namespace idts::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(IDTS_FIXTURE_DIR) + "/" + name;
}

// Parses a fixture that is expected to load cleanly; throws otherwise so the
// failure points at the fixture, not at a downstream null dereference.
inline SpecFile load_fixture(const std::string& name) {
  SpecFile f = parse_path(fixture_path(name));
  if (!f.ok()) {
    std::string msg = "fixture " + name + " failed to load:";
    for (const auto& d : f.errors) msg += "\n  " + to_string(d);
    throw std::runtime_error(msg);
  }
  return f;
}

// Fixture systems whose rules all pass the termination criterion.
inline const std::vector<std::string>& accepted_fixtures() {
  static const std::vector<std::string> kNames = {
      "append.idts",      "map.idts",           "ord_addition.idts",
      "ack.idts",         "bin.idts",           "injection.idts",
      "natrec.idts",      "ordrec.idts",        "treerec.idts",
      "foldl_sum.idts",   "insert.idts",        "subtraction.idts",
      "differentiation.idts", "proc_algebra.idts", "nnf.idts",
      "miniscoping.idts", "lim_pair.idts",      "positivity.idts",
  };
  return kNames;
}

// Everything in the corpus, including the two files kept as negatives for
// the checker (division, positivity_reject). All of them load cleanly.
inline const std::vector<std::string>& all_fixtures() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names = accepted_fixtures();
    names.push_back("division.idts");
    names.push_back("positivity_reject.idts");
    return names;
  }();
  return kNames;
}

// The subset of accepted fixtures treated as confluent for the purpose of
// strategy-agreement checks: orthogonal systems, plus insert whose condition
// is a total computable test on closed arguments. differentiation, the
// process algebra, negation normal form and miniscoping rewrite below
// redexes they also match on, so strategies may reach different normal
// forms there.
inline const std::vector<std::string>& confluent_fixtures() {
  static const std::vector<std::string> kNames = {
      "append.idts", "map.idts",    "ord_addition.idts", "ack.idts",
      "bin.idts",    "injection.idts", "natrec.idts",    "ordrec.idts",
      "treerec.idts", "foldl_sum.idts", "insert.idts",
      "subtraction.idts", "lim_pair.idts",
  };
  return kNames;
}

}  // namespace idts::testing
