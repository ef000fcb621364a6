/**************************************************************************
 * Copyright 2026 The katoforge Authors
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
 **************************************************************************/

// Tokens of the statement language.

#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "katoforge/error.hpp"

namespace katoforge::cli {

enum class Tok { Ident, Number, Op, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
  bool space_before = false;
};

/// Splits one statement; '#' starts a comment.
inline std::vector<Token> tokenize(const std::string& src, int line = 1) {
  std::vector<Token> out;
  size_t i = 0;
  bool space = false;
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      space = true;
      continue;
    }
    Token t;
    t.line = line;
    t.column = static_cast<int>(i) + 1;
    t.space_before = space;
    space = false;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = src.substr(i, j - i);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Number;
      t.text = src.substr(i, j - i);
      i = j;
    } else if (std::string("+-*/^()[]{}|,=").find(c) != std::string::npos) {
      t.kind = Tok::Op;
      t.text = std::string(1, c);
      if (c == '=' && i + 1 < src.size() && src[i + 1] == '=') t.text = "==";
      i += t.text.size();
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", line, t.column);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = static_cast<int>(src.size()) + 1;
  out.push_back(end);
  return out;
}

}  // namespace katoforge::cli
