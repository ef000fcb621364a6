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

// Statement and expression syntax trees.
//
//   field NAME = GF(p[,e]) [ (vars) | ((var)) ] | AS(NAME, var)
//   let NAME = expr          set level|precision INT        use NAME
//   inv expr at (inf | expr)  res expr at (inf | expr)       shift expr to INT
//   keq expr, expr            colim_eq expr, expr
//   OP expr   for OP in dsym recip zero cartier nu show expand decomp cinv
//             exact wtrace assolve norm oms restrict
// Every statement but field/set/use accepts a trailing "in NAME".

#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "katoforge/cli/lexer.hpp"

namespace katoforge::cli {

struct Expr {
  enum class Kind { Number, Name, Call, Neg, Binary, Witt, Symbol, Class };
  Kind kind = Kind::Number;
  /// Number digits, name, call name, or operator (+ - * / ^).
  std::string text;
  /// Class: kids[0] is the Witt part, the rest are entries.
  std::vector<std::shared_ptr<const Expr>> kids;
  int line = 1;
  int column = 1;
};
using ExprP = std::shared_ptr<const Expr>;

struct FieldSpec {
  bool as_extension = false;
  uint32_t p = 0, e = 1;
  std::vector<std::string> vars;
  bool laurent = false;
  std::string base_name;
};

struct Statement {
  std::string op;
  std::string name;
  FieldSpec field;
  std::vector<ExprP> args;
  bool place_inf = false;
  ExprP place;
  long long number = 0;
  std::string in_field;
  int line = 1;
};

inline const std::set<std::string>& unary_ops() {
  static const std::set<std::string> ops{"dsym", "recip", "zero", "cartier", "nu", "show", "expand", "decomp",
                                         "cinv", "exact", "wtrace", "assolve", "norm", "oms", "restrict"};
  return ops;
}

class Parser {
 public:
  Parser(std::vector<Token> toks) : t_(std::move(toks)) {}  // NOLINT(google-explicit-constructor)

  /// Empty optional for blank or comment-only lines.
  std::optional<Statement> statement() {
    if (peek().kind == Tok::End) return std::nullopt;
    Statement s;
    s.line = peek().line;
    const Token head = expect_ident();
    s.op = head.text;
    if (s.op == "field") {
      s.name = expect_ident().text;
      expect("=");
      s.field = field_spec();
    } else if (s.op == "let") {
      s.name = expect_ident().text;
      expect("=");
      s.args.push_back(expr());
      in_suffix(s);
    } else if (s.op == "set") {
      s.name = expect_ident().text;
      if (s.name != "level" && s.name != "precision") fail("expected 'level' or 'precision'", prev());
      s.number = integer();
    } else if (s.op == "use") {
      s.name = expect_ident().text;
    } else if (s.op == "inv" || s.op == "res") {
      s.args.push_back(expr());
      expect_keyword("at");
      if (peek().kind == Tok::Ident && peek().text == "inf") {
        next();
        s.place_inf = true;
      } else {
        s.place = expr();
      }
      in_suffix(s);
    } else if (s.op == "shift") {
      s.args.push_back(expr());
      expect_keyword("to");
      s.number = integer();
      in_suffix(s);
    } else if (s.op == "keq" || s.op == "colim_eq") {
      s.args.push_back(expr());
      expect(",");
      s.args.push_back(expr());
      in_suffix(s);
    } else if (unary_ops().count(s.op)) {
      s.args.push_back(expr());
      in_suffix(s);
    } else {
      fail("unknown statement '" + s.op + "'", head);
    }
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", peek());
    return s;
  }

  ExprP expr() { return sum(); }

 private:
  static bool keyword(const std::string& s) { return s == "in" || s == "at" || s == "to"; }

  const Token& peek(size_t k = 0) const { return t_[std::min(pos_ + k, t_.size() - 1)]; }
  const Token& prev() const { return t_[pos_ == 0 ? 0 : pos_ - 1]; }
  const Token& next() {
    const Token& t = t_[pos_];
    if (pos_ + 1 < t_.size()) ++pos_;
    return t;
  }
  bool is_op(const std::string& s, size_t k = 0) const { return peek(k).kind == Tok::Op && peek(k).text == s; }
  [[noreturn]] static void fail(const std::string& msg, const Token& at) { throw SyntaxError(msg, at.line, at.column); }
  void expect(const std::string& s) {
    if (!is_op(s)) fail("expected '" + s + "'", peek());
    next();
  }
  Token expect_ident() {
    if (peek().kind != Tok::Ident) fail("expected a name", peek());
    return next();
  }
  void expect_keyword(const std::string& k) {
    if (peek().kind != Tok::Ident || peek().text != k) fail("expected '" + k + "'", peek());
    next();
  }
  long long integer() {
    bool neg = false;
    if (is_op("-")) {
      next();
      neg = true;
    }
    if (peek().kind != Tok::Number) fail("expected an integer", peek());
    const long long v = std::stoll(next().text);
    return neg ? -v : v;
  }
  void in_suffix(Statement& s) {
    if (peek().kind == Tok::Ident && peek().text == "in") {
      next();
      s.in_field = expect_ident().text;
    }
  }

  FieldSpec field_spec() {
    FieldSpec f;
    const Token kind = expect_ident();
    if (kind.text == "AS") {
      f.as_extension = true;
      expect("(");
      f.base_name = expect_ident().text;
      expect(",");
      f.vars.push_back(expect_ident().text);
      expect(")");
      return f;
    }
    if (kind.text != "GF") fail("expected GF or AS", kind);
    expect("(");
    f.p = static_cast<uint32_t>(integer());
    if (is_op(",")) {
      next();
      f.e = static_cast<uint32_t>(integer());
    }
    expect(")");
    if (is_op("(")) {
      next();
      if (is_op("(")) {
        next();
        f.laurent = true;
        f.vars.push_back(expect_ident().text);
        expect(")");
      } else {
        f.vars.push_back(expect_ident().text);
        while (is_op(",")) {
          next();
          f.vars.push_back(expect_ident().text);
        }
      }
      expect(")");
    }
    return f;
  }

  static ExprP node(Expr::Kind k, std::string text, std::vector<ExprP> kids, const Token& at) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->text = std::move(text);
    e->kids = std::move(kids);
    e->line = at.line;
    e->column = at.column;
    return e;
  }

  ExprP sum() {
    ExprP lhs = term();
    while (is_op("+") || is_op("-")) {
      const Token op = next();
      lhs = node(Expr::Kind::Binary, op.text, {lhs, term()}, op);
    }
    return lhs;
  }

  /// Juxtaposition multiplies before differentials (names starting with 'd') and symbols.
  bool implicit_product() const {
    if (peek().kind == Tok::Ident) return peek().text[0] == 'd' && !keyword(peek().text);
    return is_op("{");
  }

  ExprP term() {
    ExprP lhs = unary();
    while (true) {
      if (is_op("*") || is_op("/")) {
        const Token op = next();
        lhs = node(Expr::Kind::Binary, op.text, {lhs, unary()}, op);
      } else if (implicit_product()) {
        const Token at = peek();
        lhs = node(Expr::Kind::Binary, "*", {lhs, unary()}, at);
      } else {
        return lhs;
      }
    }
  }

  ExprP unary() {
    if (is_op("-")) {
      const Token op = next();
      return node(Expr::Kind::Neg, "-", {unary()}, op);
    }
    ExprP base = atom();
    if (is_op("^")) {
      const Token op = next();
      return node(Expr::Kind::Binary, "^", {base, unary()}, op);
    }
    return base;
  }

  std::vector<ExprP> list_until(const std::string& close) {
    std::vector<ExprP> out;
    if (is_op(close)) {
      next();
      return out;
    }
    out.push_back(expr());
    while (is_op(",")) {
      next();
      out.push_back(expr());
    }
    expect(close);
    return out;
  }

  ExprP atom() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
      return node(Expr::Kind::Number, t.text, {}, t);
    }
    if (t.kind == Tok::Ident) {
      if (keyword(t.text)) fail("unexpected '" + t.text + "'", t);
      const Token name = next();
      if (is_op("(") && !peek().space_before) {
        next();
        return node(Expr::Kind::Call, name.text, list_until(")"), name);
      }
      return node(Expr::Kind::Name, name.text, {}, name);
    }
    if (is_op("(")) {
      next();
      ExprP inner = expr();
      expect(")");
      return inner;
    }
    if (is_op("{")) {
      const Token open = next();
      return node(Expr::Kind::Symbol, "", list_until("}"), open);
    }
    if (is_op("[")) {
      const Token open = next();
      ExprP first = expr();
      if (is_op("|")) {
        next();
        std::vector<ExprP> kids{first};
        for (auto& e : list_until(")")) kids.push_back(e);
        return node(Expr::Kind::Class, "", std::move(kids), open);
      }
      std::vector<ExprP> kids{first};
      while (is_op(",")) {
        next();
        kids.push_back(expr());
      }
      expect("]");
      return node(Expr::Kind::Witt, "", std::move(kids), open);
    }
    fail(t.kind == Tok::End ? "unexpected end of statement" : "unexpected '" + t.text + "'", t);
  }

  std::vector<Token> t_;
  size_t pos_ = 0;
};

/// Parses one line.
inline std::optional<Statement> parse_statement(const std::string& line, int line_no = 1) {
  Parser p(tokenize(line, line_no));
  return p.statement();
}

}  // namespace katoforge::cli
