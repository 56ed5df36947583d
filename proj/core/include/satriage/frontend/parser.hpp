// Copyright 2026 The satriage Authors.
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

#include <string_view>

#include "satriage/frontend/ast.hpp"

namespace satriage::frontend {

/// Parses exactly one C function definition from the supported subset:
/// declarations, assignments, pointer dereference, calls, if/while/for,
/// return, integer/char/string literals, member access, sizeof and casts.
///
/// The function body's statements are direct children of the FunctionDef
/// node, after the return TypeName and the ParamDecls. Nodes that would be
/// childless (`return;`, `{}`) become leaves spelled by their keyword.
///
/// Throws ParseError carrying line:column of the offending token.
AstNode parse_function(std::string_view source);

} // namespace satriage::frontend
