/*
 * Copyright 2026 The deacp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>

#include "deacp/parser.hpp"

namespace deacp::test {

// Two variables, three basic actions and one handshake on unary actions.
inline SpecFile context(const std::string& extra = "") {
  return parse_spec("domain -4..3; vars v, w; actions a, b, c, s/1, r/1, k/1;"
                    " comm { a|b = c; s|r = k; }" + extra);
}

inline Proc term(const std::string& text, const SpecFile& f) { return parse_term(text, f); }

}  // namespace deacp::test
