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

#include <string>
#include <utility>
#include <vector>

#include "idts/parser.hpp"
#include "idts/rewrite.hpp"
#include "idts/schema.hpp"
#include "idts/signature.hpp"
#include "idts/transforms.hpp"
#include "json.hpp"

namespace idts {

// Concrete syntax. Printing and then parsing gives back the same abstract
// content: the same declarations, rules and named terms.
std::string term_source(const TermPtr& t);
std::string rule_source(const Rule& r);
std::string symbol_source(const FunctionDecl& fd);
std::string file_source(
    const Signature& sig, const std::vector<Rule>& rules,
    const std::vector<std::pair<std::string, TermPtr>>& named_terms);
std::string file_source(const SpecFile& f);

// Human-readable check report. `explain` adds the full derivation tree for
// every accepted rule and the accessibility certificates for its variables.
std::string render_check_report(const Signature& sig,
                                const SchemaReport& report, bool explain);

std::string render_normalize(const NormalizeResult& r, bool show_trace);

// Structured mirrors of the text output.
nlohmann::json derivation_json(const Derivation& d);
nlohmann::json check_report_json(const Signature& sig,
                                 const SchemaReport& report, bool explain);
nlohmann::json trace_json(const ReductionTrace& t);
nlohmann::json normalize_json(const NormalizeResult& r, bool include_trace);
nlohmann::json recursors_json(const RecursorBundle& b);
nlohmann::json currify_json(const CurrifyResult& c);
nlohmann::json encode_json(const EncodeResult& e);

}  // namespace idts
