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

#include <string>
#include <string_view>
#include <vector>

#include "satriage/frontend/ast.hpp"

namespace satriage::frontend {

enum class TokenKind { Identifier, Keyword, IntLit, CharLit, StrLit, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourcePos pos;
};

/// Splits C source into tokens, dropping whitespace and comments.
/// Throws ParseError for preprocessor lines, unterminated literals and
/// characters outside the supported subset.
std::vector<Token> tokenize(std::string_view source);

bool is_keyword(std::string_view word);

} // namespace satriage::frontend
