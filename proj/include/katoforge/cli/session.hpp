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

// Statement evaluation, result rendering and cache maintenance for the CLI.

#pragma once

#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "katoforge/cli/parser.hpp"
#include "katoforge/kato.hpp"

namespace katoforge::cli {

using Json = nlohmann::ordered_json;

using Scalar = std::variant<gf::Elem, RatFunc, LaurentElem>;
using Witt = std::variant<WittVector<gf::Elem>, WittVector<RatFunc>, WittVector<LaurentElem>>;
using Class = std::variant<HClass<gf::Elem>, HClass<RatFunc>, HClass<LaurentElem>>;

struct Value {
  std::variant<long long, Scalar, Witt, MilnorElement, DiffForm, Class> v;
};

/// A declared field. Laurent fields carry a hidden F_q(t) for exact inputs.
struct FieldInfo {
  enum class Kind { Finite, Rational, Laurent };
  std::string name;
  Kind kind = Kind::Finite;
  gf::Field base;
  FunctionField ff;
  std::shared_ptr<const ASExtension> as;
  std::string as_base;

  std::string describe() const {
    switch (kind) {
      case Kind::Finite: return base.str();
      case Kind::Rational: return ff.str();
      case Kind::Laurent: return base.str() + "((" + ff.vars()[0] + "))";
    }
    return {};
  }
};

struct Options {
  bool json = false;
  bool keep_going = false;
  long precision = 32;
  uint32_t level = 1;
};

/// One rendered statement result.
struct Output {
  Json json;
  std::string text;
};

namespace detail {

inline const std::set<std::string>& reserved_names() {
  static const std::set<std::string> r{"in", "at", "to", "inf"};
  return r;
}

inline std::string scalar_str(const Scalar& s) {
  return std::visit([](const auto& x) { return x.str(); }, s);
}

inline long ord_t(const UPoly& u) {
  for (int k = 0; k <= u.degree(); ++k)
    if (!u.coeff(k).is_zero()) return k;
  return 0;
}

/// Expansion at t = 0 with absolute precision `prec`.
inline LaurentElem to_laurent(const RatFunc& g, long prec) {
  const gf::Elem zero = g.field().base().zero();
  if (g.is_zero()) return Laurent<gf::Elem>::zero(zero, prec);
  const UPoly n = g.num_upoly(0), d = g.den_upoly(0);
  const long val = ord_t(n) - ord_t(d);
  if (prec - val <= 0) return Laurent<gf::Elem>::zero(zero, prec);
  return chart(Place::finite(UPoly::x(g.field().base())))->expand(n, d, prec - val);
}

inline LaurentElem to_laurent(const gf::Elem& c, long prec) { return Laurent<gf::Elem>::monomial(c, 0, std::max(prec, 1L)); }

inline uint64_t int_pow(uint64_t p, uint32_t m) {
  uint64_t r = 1;
  for (uint32_t j = 0; j < m; ++j) r *= p;
  return r;
}

}  // namespace detail

class Session {
 public:
  explicit Session(Options opt = {}) : opt_(opt) {}

  const Options& options() const { return opt_; }

  /// Executes one line; declarations produce no output.
  std::optional<Output> execute(const std::string& line, int line_no = 1) {
    auto st = parse_statement(line, line_no);
    if (!st) return std::nullopt;
    Output o = run(*st);
    if (o.json.is_null()) return std::nullopt;
    return o;
  }

  /// Runs a script; returns the process exit code.
  int run_script(std::istream& in, std::ostream& out, std::ostream& err) {
    std::string line;
    int line_no = 0;
    bool failed = false;
    while (std::getline(in, line)) {
      ++line_no;
      try {
        if (auto o = execute(line, line_no)) out << (opt_.json ? o->json.dump() : o->text) << '\n';
      } catch (const Error& e) {
        failed = true;
        report(e.kind(), e.what(), line, line_no, out, err);
        if (!opt_.keep_going) return 1;
      } catch (const std::exception& e) {
        failed = true;
        report("InternalError", e.what(), line, line_no, out, err);
        if (!opt_.keep_going) return 1;
      }
    }
    return failed ? 1 : 0;
  }

 private:
  using Kind = FieldInfo::Kind;

  void report(const std::string& kind, const std::string& msg, const std::string& line, int line_no,
              std::ostream& out, std::ostream& err) const {
    if (opt_.json) {
      Json j;
      j["op"] = "error";
      j["line"] = line_no;
      j["statement"] = line;
      j["kind"] = kind;
      j["message"] = msg;
      out << j.dump() << '\n';
    } else {
      err << "line " << line_no << ": " << kind << ": " << msg << "\n  " << line << '\n';
    }
  }

  // ---- declarations -------------------------------------------------------

  void check_fresh(const std::string& name) const {
    if (fields_.count(name) || values_.count(name)) throw ConfigMismatch("name '" + name + "' is already declared");
    if (detail::reserved_names().count(name)) throw ConfigMismatch("'" + name + "' is reserved");
  }

  void declare_field(const Statement& s) {
    check_fresh(s.name);
    FieldInfo f;
    f.name = s.name;
    const FieldSpec& spec = s.field;
    if (spec.as_extension) {
      const FieldInfo& b = field(spec.base_name);
      if (b.kind != Kind::Rational || b.ff.nvars() != 1 || b.as)
        throw UnsupportedField("AS extensions need a declared rational field F_q(t)");
      auto ext = std::make_shared<const ASExtension>(b.base, b.ff.vars()[0], spec.vars[0]);
      if (spec.vars[0] == b.ff.vars()[0]) throw ConfigMismatch("extension variable must differ from " + spec.vars[0]);
      f.kind = Kind::Rational;
      f.base = b.base;
      f.ff = ext->ext_field();
      f.as = ext;
      f.as_base = b.name;
    } else {
      f.base = gf::make(spec.p, spec.e);
      std::set<std::string> seen;
      for (const auto& v : spec.vars) {
        if (!seen.insert(v).second) throw ConfigMismatch("variable '" + v + "' repeated");
        if (detail::reserved_names().count(v) || (spec.e > 1 && v == "z"))
          throw ConfigMismatch("'" + v + "' cannot name a variable");
      }
      if (spec.laurent) {
        if (spec.vars[0] != "t") throw UnsupportedField("Laurent fields use the variable t");
        f.kind = Kind::Laurent;
        f.ff = FunctionField(f.base, spec.vars);
      } else if (!spec.vars.empty()) {
        if (spec.vars.size() > 31) throw ResourceLimit("at most 31 variables");
        f.kind = Kind::Rational;
        f.ff = FunctionField(f.base, spec.vars);
      }
    }
    fields_.emplace(s.name, f);
    current_ = s.name;
  }

  const FieldInfo& field(const std::string& name) const {
    auto it = fields_.find(name);
    if (it == fields_.end()) throw UnknownName("unknown field '" + name + "'");
    return it->second;
  }

  const FieldInfo& context(const Statement& s) const {
    if (!s.in_field.empty()) return field(s.in_field);
    if (current_.empty()) throw UnknownName("no field declared");
    return field(current_);
  }

  /// The AS extension of ctx itself, or the most recent one over ctx.
  const ASExtension& extension(const FieldInfo& ctx) const {
    if (ctx.as) return *ctx.as;
    const ASExtension* found = nullptr;
    for (const auto& name : order_)
      if (auto it = fields_.find(name); it != fields_.end() && it->second.as_base == ctx.name) found = it->second.as.get();
    if (!found) throw UnknownName("no AS extension declared over " + ctx.name);
    return *found;
  }

  // ---- scalar helpers -------------------------------------------------------

  Scalar from_elem(const gf::Elem& c, const FieldInfo& ctx) const {
    if (ctx.kind == Kind::Finite) return c;
    return RatFunc::constant(ctx.ff, c);
  }
  Scalar from_int(long long n, const FieldInfo& ctx) const { return from_elem(ctx.base.from_int(n), ctx); }

  Scalar to_scalar(const Value& v, const FieldInfo& ctx) const {
    if (auto n = std::get_if<long long>(&v.v)) return from_int(*n, ctx);
    if (auto s = std::get_if<Scalar>(&v.v)) return *s;
    throw TypeError("expected a field element");
  }

  Scalar promote(const Scalar& s, const Scalar& like) const {
    if (s.index() >= like.index()) return s;
    if (auto c = std::get_if<gf::Elem>(&s)) {
      if (auto r = std::get_if<RatFunc>(&like)) return RatFunc::constant(r->field(), *c);
      return detail::to_laurent(*c, std::max(opt_.precision, std::get<LaurentElem>(like).precision()));
    }
    return detail::to_laurent(std::get<RatFunc>(s), std::max(opt_.precision, std::get<LaurentElem>(like).precision()));
  }

  /// Coordinates and entries take the field's element type.
  template <class T>
  T coerce(const Scalar& s, const FieldInfo& ctx) const {
    if constexpr (std::is_same_v<T, gf::Elem>) {
      if (auto c = std::get_if<gf::Elem>(&s)) return *c;
      if (auto r = std::get_if<RatFunc>(&s); r && r->is_constant()) return r->constant_value();
      throw TypeError("expected an element of " + ctx.describe());
    } else if constexpr (std::is_same_v<T, RatFunc>) {
      if (auto r = std::get_if<RatFunc>(&s)) return *r;
      if (auto c = std::get_if<gf::Elem>(&s)) return RatFunc::constant(ctx.ff, *c);
      throw TypeError("expected an element of " + ctx.describe());
    } else {
      if (auto l = std::get_if<LaurentElem>(&s)) return *l;
      if (auto r = std::get_if<RatFunc>(&s)) return detail::to_laurent(*r, opt_.precision);
      return detail::to_laurent(std::get<gf::Elem>(s), opt_.precision);
    }
  }

  template <class F>
  static Scalar scalar_op(const Scalar& a, const Scalar& b, F&& f) {
    return std::visit(
        [&](const auto& x) -> Scalar {
          using T = std::decay_t<decltype(x)>;
          return Scalar(f(x, std::get<T>(b)));
        },
        a);
  }

  // ---- expression evaluation ------------------------------------------------

  Value eval(const Expr& e, const FieldInfo& ctx) {
    switch (e.kind) {
      case Expr::Kind::Number:
        try {
          return {std::stoll(e.text)};
        } catch (const std::out_of_range&) {
          throw SyntaxError("integer literal too large", e.line, e.column);
        }
      case Expr::Kind::Name: return lookup(e, ctx);
      case Expr::Kind::Neg: return negate(eval(*e.kids[0], ctx));
      case Expr::Kind::Binary: return binary(e, ctx);
      case Expr::Kind::Call: return call(e, ctx);
      case Expr::Kind::Witt: return {witt_literal(e, ctx)};
      case Expr::Kind::Symbol: return {symbol_literal(e, ctx)};
      case Expr::Kind::Class: return {class_literal(e, ctx)};
    }
    throw TypeError("unsupported expression");
  }

  Value lookup(const Expr& e, const FieldInfo& ctx) const {
    if (auto it = values_.find(e.text); it != values_.end()) return it->second;
    if (ctx.base.degree() > 1 && e.text == "z") return {from_elem(ctx.base.gen(), ctx)};
    if (ctx.kind != Kind::Finite) {
      const auto& vars = ctx.ff.vars();
      for (size_t j = 0; j < vars.size(); ++j) {
        if (e.text == vars[j]) return {Scalar(RatFunc::variable(ctx.ff, j))};
        if (ctx.kind == Kind::Rational && e.text == "d" + vars[j]) return {DiffForm::dx(ctx.ff, j)};
      }
      if (ctx.as) {
        const RatFunc t = ctx.as->t_in_ext();
        const std::string& tv = ctx.as->base_field().vars()[0];
        if (e.text == tv) return {Scalar(t)};
        if (e.text == "d" + tv) return {d(t)};
      }
    }
    throw UnknownName("unknown name '" + e.text + "' (line " + std::to_string(e.line) + ", column " +
                      std::to_string(e.column) + ")");
  }

  static Value negate(const Value& v) {
    return std::visit(
        [](const auto& x) -> Value {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Scalar>) {
            return {std::visit([](const auto& s) { return Scalar(-s); }, x)};
          } else if constexpr (std::is_same_v<T, Witt>) {
            return {std::visit([](const auto& w) { return Witt(-w); }, x)};
          } else if constexpr (std::is_same_v<T, Class>) {
            return {std::visit([](const auto& c) { return Class(-c); }, x)};
          } else if constexpr (std::is_same_v<T, MilnorElement>) {
            return {x.times(-1)};
          } else {
            return {-x};
          }
        },
        v.v);
  }

  Value binary(const Expr& e, const FieldInfo& ctx) {
    const Value a = eval(*e.kids[0], ctx);
    const Value b = eval(*e.kids[1], ctx);
    const std::string& op = e.text;
    const auto* ai = std::get_if<long long>(&a.v);
    const auto* bi = std::get_if<long long>(&b.v);

    if (ai && bi) {
      if (op == "+") return {*ai + *bi};
      if (op == "-") return {*ai - *bi};
      if (op == "*") return {*ai * *bi};
      if (op == "^" && *bi >= 0 && *bi < 64) {
        long long r = 1;
        for (long long k = 0; k < *bi; ++k) r *= *ai;
        return {r};
      }
    }
    if (op == "^") {
      if (auto fa = std::get_if<DiffForm>(&a.v)) {
        if (auto fb = std::get_if<DiffForm>(&b.v)) return {wedge(*fa, *fb)};
      }
      if (!bi) throw TypeError("exponent must be an integer");
      const Scalar s = to_scalar(a, ctx);
      return {std::visit([&](const auto& x) { return Scalar(x.pow(*bi)); }, s)};
    }
    // Integer multiples of structured values.
    if (op == "*" && (ai || bi)) {
      const long long n = ai ? *ai : *bi;
      const Value& other = ai ? b : a;
      if (auto w = std::get_if<Witt>(&other.v)) return {std::visit([&](const auto& x) { return Witt(x.times(n)); }, *w)};
      if (auto c = std::get_if<Class>(&other.v)) return {std::visit([&](const auto& x) { return Class(x.times(n)); }, *c)};
      if (auto m = std::get_if<MilnorElement>(&other.v)) return {m->times(n)};
    }
    if (auto fa = std::get_if<DiffForm>(&a.v)) return form_op(op, *fa, b, ctx, false);
    if (auto fb = std::get_if<DiffForm>(&b.v)) return form_op(op, *fb, a, ctx, true);
    if (auto wa = std::get_if<Witt>(&a.v)) {
      const auto* wb = std::get_if<Witt>(&b.v);
      if (!wb || wa->index() != wb->index() || op == "/") throw TypeError("unsupported Witt vector operation " + op);
      return {std::visit(
          [&](const auto& x) -> Witt {
            using W = std::decay_t<decltype(x)>;
            const W& y = std::get<W>(*wb);
            if (op == "+") return x + y;
            if (op == "-") return x - y;
            return x * y;
          },
          *wa)};
    }
    if (auto ca = std::get_if<Class>(&a.v)) {
      const auto* cb = std::get_if<Class>(&b.v);
      if (!cb || ca->index() != cb->index() || (op != "+" && op != "-")) throw TypeError("unsupported class operation " + op);
      return {std::visit(
          [&](const auto& x) -> Class {
            using H = std::decay_t<decltype(x)>;
            const H& y = std::get<H>(*cb);
            return op == "+" ? x + y : x - y;
          },
          *ca)};
    }
    if (auto ma = std::get_if<MilnorElement>(&a.v)) {
      const auto* mb = std::get_if<MilnorElement>(&b.v);
      if (!mb || (op != "+" && op != "-")) throw TypeError("unsupported Milnor K operation " + op);
      return {op == "+" ? *ma + *mb : *ma - *mb};
    }
    Scalar x = to_scalar(a, ctx), y = to_scalar(b, ctx);
    x = promote(x, y);
    y = promote(y, x);
    if (op == "+") return {scalar_op(x, y, [](const auto& p, const auto& q) { return p + q; })};
    if (op == "-") return {scalar_op(x, y, [](const auto& p, const auto& q) { return p - q; })};
    if (op == "*") return {scalar_op(x, y, [](const auto& p, const auto& q) { return p * q; })};
    return {scalar_op(x, y, [](const auto& p, const auto& q) { return p / q; })};
  }

  Value form_op(const std::string& op, const DiffForm& f, const Value& other, const FieldInfo& ctx, bool form_right) const {
    if (auto g = std::get_if<DiffForm>(&other.v)) {
      if (op == "+") return {form_right ? *g + f : f + *g};
      if (op == "-") return {form_right ? *g - f : f - *g};
      throw TypeError("forms combine with + - and ^");
    }
    const Scalar s = to_scalar(other, ctx);
    const RatFunc* r = std::get_if<RatFunc>(&s);
    if (!r) throw TypeError("forms need coefficients in a rational function field");
    if (op == "*") return {f.scaled(*r)};
    if (op == "/" && !form_right) return {f.scaled(r->inv())};
    throw TypeError("unsupported operation between a form and a function");
  }

  template <class T>
  std::vector<T> coerce_all(const std::vector<Scalar>& xs, const FieldInfo& ctx) const {
    std::vector<T> out;
    for (const auto& x : xs) out.push_back(coerce<T>(x, ctx));
    return out;
  }

  Witt make_witt(const std::vector<Scalar>& xs, const FieldInfo& ctx) const {
    switch (ctx.kind) {
      case Kind::Finite: return WittVector<gf::Elem>(coerce_all<gf::Elem>(xs, ctx));
      case Kind::Rational: return WittVector<RatFunc>(coerce_all<RatFunc>(xs, ctx));
      case Kind::Laurent: return WittVector<LaurentElem>(coerce_all<LaurentElem>(xs, ctx));
    }
    throw TypeError("bad field");
  }

  Witt witt_literal(const Expr& e, const FieldInfo& ctx) {
    std::vector<Scalar> xs;
    for (const auto& k : e.kids) xs.push_back(to_scalar(eval(*k, ctx), ctx));
    return make_witt(xs, ctx);
  }

  MilnorElement symbol_literal(const Expr& e, const FieldInfo& ctx) {
    if (ctx.kind != Kind::Rational) throw UnsupportedField("symbols need a rational function field");
    std::vector<RatFunc> entries;
    for (const auto& k : e.kids) entries.push_back(coerce<RatFunc>(to_scalar(eval(*k, ctx), ctx), ctx));
    return MilnorElement::symbol(ctx.ff, std::move(entries));
  }

  Witt as_witt(const Value& v, const FieldInfo& ctx) const {
    if (auto w = std::get_if<Witt>(&v.v)) return *w;
    const Scalar s = to_scalar(v, ctx);
    std::vector<Scalar> xs(opt_.level, from_int(0, ctx));
    xs[0] = s;
    return make_witt(xs, ctx);
  }

  Class class_literal(const Expr& e, const FieldInfo& ctx) {
    const Witt w = as_witt(eval(*e.kids[0], ctx), ctx);
    std::vector<Scalar> bs;
    for (size_t j = 1; j < e.kids.size(); ++j) bs.push_back(to_scalar(eval(*e.kids[j], ctx), ctx));
    return std::visit(
        [&](const auto& x) -> Class {
          using T = std::decay_t<decltype(x.coord(0))>;
          return HClass<T>::build(x, coerce_all<T>(bs, ctx));
        },
        w);
  }

  RatFunc rational(const Value& v, const FieldInfo& ctx) const {
    const Scalar s = to_scalar(v, ctx);
    if (auto r = std::get_if<RatFunc>(&s)) return *r;
    throw TypeError("expected a rational function");
  }

  static const MilnorElement& milnor(const Value& v) {
    if (auto m = std::get_if<MilnorElement>(&v.v)) return *m;
    throw TypeError("expected a Milnor K element");
  }
  static const DiffForm& form(const Value& v) {
    if (auto f = std::get_if<DiffForm>(&v.v)) return *f;
    throw TypeError("expected a differential form");
  }
  static const Class& klass(const Value& v) {
    if (auto c = std::get_if<Class>(&v.v)) return *c;
    throw TypeError("expected a class [w | b...)");
  }
  static long long integer(const Value& v) {
    if (auto n = std::get_if<long long>(&v.v)) return *n;
    throw TypeError("expected an integer");
  }

  Value call(const Expr& e, const FieldInfo& ctx) {
    const std::string& f = e.text;
    std::vector<Value> a;
    for (const auto& k : e.kids) a.push_back(eval(*k, ctx));
    auto arity = [&](size_t lo, size_t hi) {
      if (a.size() < lo || a.size() > hi)
        throw SyntaxError("wrong number of arguments to " + f, e.line, e.column);
    };
    if (f == "O") {
      arity(1, 1);
      if (ctx.kind != Kind::Laurent) throw UnsupportedField("O(t^N) needs a Laurent series field");
      if (auto n = std::get_if<long long>(&a[0].v); n && *n == 1)
        return {Scalar(LaurentElem(Laurent<gf::Elem>::zero(ctx.base.zero(), 0)))};
      const RatFunc m = rational(a[0], ctx);
      const UPoly n = m.num_upoly(0), dd = m.den_upoly(0);
      if (!n.is_zero() && n.degree() == detail::ord_t(n) && n.coeff(n.degree()).is_one() && dd.degree() == 0)
        return {Scalar(LaurentElem(Laurent<gf::Elem>::zero(ctx.base.zero(), n.degree())))};
      if (n.degree() == 0 && n.coeff(0).is_one() && dd.degree() == detail::ord_t(dd) && dd.coeff(dd.degree()).is_one())
        return {Scalar(LaurentElem(Laurent<gf::Elem>::zero(ctx.base.zero(), -dd.degree())))};
      throw TypeError("O() takes a power of t");
    }
    if (f == "d") {
      arity(1, 1);
      if (auto fm = std::get_if<DiffForm>(&a[0].v)) return {fm->d()};
      return {d(rational(a[0], ctx))};
    }
    if (f == "dlog") {
      arity(1, 1);
      return {dlog(rational(a[0], ctx))};
    }
    if (f == "teich") {
      arity(1, 2);
      const long long len = a.size() == 2 ? integer(a[1]) : opt_.level;
      if (len < 1 || len > 64) throw TypeError("Witt length must be positive");
      std::vector<Scalar> xs(static_cast<size_t>(len), from_int(0, ctx));
      xs[0] = to_scalar(a[0], ctx);
      return {make_witt(xs, ctx)};
    }
    if (f == "F" || f == "V" || f == "wp") {
      arity(1, 1);
      const Witt w = as_witt(a[0], ctx);
      return {std::visit(
          [&](const auto& x) -> Witt {
            if (f == "F") return x.frobenius();
            if (f == "V") return x.verschiebung();
            return x.wp();
          },
          w)};
    }
    if (f == "sigma") {
      arity(1, 2);
      const long long k = a.size() == 2 ? integer(a[1]) : 1;
      return {Scalar(extension(ctx).sigma(rational(a[0], ctx), k))};
    }
    if (f == "N") {
      arity(1, 1);
      return {Scalar(extension(ctx).norm(rational(a[0], ctx)))};
    }
    if (f == "embed") {
      arity(1, 1);
      return {Scalar(extension(ctx).embed(rational(a[0], ctx)))};
    }
    if (f == "restrict") {
      arity(1, 1);
      return restrict_value(a[0], extension(ctx));
    }
    if (f == "oms") {
      arity(1, 1);
      return {extension(ctx).one_minus_sigma(milnor(a[0]))};
    }
    if (f == "norm") {
      arity(1, 1);
      return {extension(ctx).norm_proj(milnor(a[0]))};
    }
    if (f == "expand") {
      arity(1, 1);
      return {symbol_expand(milnor(a[0]))};
    }
    if (f == "cinv") {
      arity(1, 1);
      return {cartier_inv(form(a[0]))};
    }
    if (f == "cartier") {
      arity(1, 1);
      return {cartier(form(a[0]))};
    }
    if (f == "shift") {
      arity(2, 2);
      return {shift(klass(a[0]), integer(a[1]))};
    }
    throw UnknownName("unknown function '" + f + "'");
  }

  static Class shift(const Class& c, long long level) {
    if (level < 1 || level > 64) throw TypeError("level must be positive");
    return std::visit([&](const auto& x) { return Class(level_shift(x, static_cast<uint32_t>(level))); }, c);
  }

  static Value restrict_value(const Value& v, const ASExtension& L) {
    if (auto m = std::get_if<MilnorElement>(&v.v)) return {L.restrict(*m)};
    if (auto s = std::get_if<Scalar>(&v.v)) {
      if (auto r = std::get_if<RatFunc>(s)) return {Scalar(L.embed(*r))};
    }
    if (auto c = std::get_if<Class>(&v.v)) {
      if (auto h = std::get_if<HClass<RatFunc>>(c)) {
        const RatFunc like = L.embed(h->like());
        auto out = HClass<RatFunc>::zero(like, h->level(), h->degree());
        for (const auto& [entries, w] : h->terms()) {
          std::vector<RatFunc> e;
          for (const auto& b : entries) e.push_back(L.embed(b));
          out = out + HClass<RatFunc>::build(w.template map<RatFunc>([&](const RatFunc& x) { return L.embed(x); }), e);
        }
        return {Class(out)};
      }
    }
    throw TypeError("restrict takes a function, symbol or class over the base field");
  }

  // ---- rendering ----------------------------------------------------------

  static std::string str(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, long long>) {
            return std::to_string(x);
          } else if constexpr (std::is_same_v<T, Scalar> || std::is_same_v<T, Witt> || std::is_same_v<T, Class>) {
            return std::visit([](const auto& y) { return y.str(); }, x);
          } else {
            return x.str();
          }
        },
        v.v);
  }

  uint32_t level_of(const std::vector<Value>& vs) const {
    for (const auto& v : vs) {
      if (auto c = std::get_if<Class>(&v.v)) return std::visit([](const auto& x) { return x.level(); }, *c);
      if (auto w = std::get_if<Witt>(&v.v))
        return std::visit([](const auto& x) { return static_cast<uint32_t>(x.length()); }, *w);
    }
    return opt_.level;
  }

  Output emit(const std::string& op, const std::vector<Value>& inputs, Json result, std::string text,
              const FieldInfo& ctx) const {
    Output o;
    o.json["op"] = op;
    o.json["inputs"] = Json::array();
    for (const auto& v : inputs) o.json["inputs"].push_back(str(v));
    o.json["result"] = std::move(result);
    o.json["level"] = level_of(inputs);
    o.json["field"] = ctx.name;
    o.text = std::move(text);
    return o;
  }

  static std::string var_of(const FieldInfo& ctx) { return ctx.kind == Kind::Finite ? "t" : ctx.ff.vars()[0]; }

  static Json invariant_json(const LocalInvariant& li, const std::string& var) {
    Json j;
    j["place"] = li.place.str(var);
    j["inv"] = li.value;
    j["mod"] = li.modulus;
    return j;
  }

  Place place_of(const Statement& s, const FieldInfo& ctx) {
    if (ctx.kind == Kind::Finite) throw UnsupportedField("places need a function field");
    if (s.place_inf) {
      if (ctx.kind == Kind::Laurent) throw UnsupportedField("F_q((t)) has the single place t");
      return Place::infinity(ctx.base);
    }
    const RatFunc r = rational(eval(*s.place, ctx), ctx);
    if (!r.is_polynomial() || r.field().nvars() != 1) throw TypeError("a place is a monic irreducible polynomial");
    return Place::finite(r.num_upoly(0));
  }

  static Json bool_json(bool b) { return Json(b); }
  static std::string bool_str(bool b) { return b ? "true" : "false"; }

  Output run(const Statement& s) {
    if (s.op == "field") {
      declare_field(s);
      order_.push_back(s.name);
      return silent();
    }
    if (s.op == "use") {
      field(s.name);
      current_ = s.name;
      return silent();
    }
    if (s.op == "set") {
      if (s.number < 1) throw TypeError(s.name + " must be positive");
      if (s.name == "level") {
        if (s.number > 64) throw ResourceLimit("level too large");
        opt_.level = static_cast<uint32_t>(s.number);
      } else {
        opt_.precision = s.number;
      }
      return silent();
    }
    const FieldInfo& ctx = context(s);
    if (s.op == "let") {
      check_fresh(s.name);
      values_.emplace(s.name, eval(*s.args[0], ctx));
      return silent();
    }
    std::vector<Value> in;
    for (const auto& a : s.args) in.push_back(eval(*a, ctx));
    const Value& x = in.at(0);

    if (s.op == "show") return emit(s.op, in, str(x), str(x), ctx);
    if (s.op == "dsym") {
      const std::string r = d_symbol(milnor(x)).str();
      return emit(s.op, in, r, r, ctx);
    }
    if (s.op == "expand") {
      const std::string r = symbol_expand(milnor(x)).str();
      return emit(s.op, in, r, r, ctx);
    }
    if (s.op == "keq") {
      const MilnorElement& a = milnor(x);
      const MilnorElement b = zero_or_milnor(in[1], a);
      const bool r = kn_equal(a, b);
      return emit(s.op, in, r, bool_str(r), ctx);
    }
    if (s.op == "cartier" || s.op == "cinv") {
      const std::string r = (s.op == "cartier" ? cartier(form(x)) : cartier_inv(form(x))).str();
      return emit(s.op, in, r, r, ctx);
    }
    if (s.op == "nu" || s.op == "exact") {
      const bool r = s.op == "nu" ? nu_test(form(x)) : is_exact(form(x));
      return emit(s.op, in, r, bool_str(r), ctx);
    }
    if (s.op == "norm" || s.op == "oms" || s.op == "restrict") {
      const ASExtension& L = extension(ctx);
      const Value r = s.op == "restrict" ? restrict_value(x, L)
                                         : Value{s.op == "norm" ? L.norm_proj(milnor(x)) : L.one_minus_sigma(milnor(x))};
      return emit(s.op, in, str(r), str(r), ctx);
    }
    if (s.op == "inv") {
      const Place pl = place_of(s, ctx);
      const LocalInvariant li = std::visit([&](const auto& c) { return local_invariant(c, pl); }, klass(x));
      return emit(s.op, in, invariant_json(li, var_of(ctx)),
                  std::to_string(li.value) + " (mod " + std::to_string(li.modulus) + ")", ctx);
    }
    if (s.op == "res") {
      const Place pl = place_of(s, ctx);
      Json r;
      std::string text;
      if (auto f = std::get_if<DiffForm>(&x.v)) {
        if (f->degree() != 1 || f->field().nvars() != 1) throw TypeError("res takes a 1-form g dt");
        const UPoly u = residue_at(f->coeff(1), pl);
        text = u.str(var_of(ctx));
      } else {
        text = residue_at(rational(x, ctx), pl).str(var_of(ctx));
      }
      return emit(s.op, in, text, text, ctx);
    }
    if (s.op == "recip") {
      const auto* h = std::get_if<HClass<RatFunc>>(&klass(x));
      if (!h) throw UnsupportedField("reciprocity needs a class over F_q(t)");
      const ReciprocityReport rep = reciprocity_check(*h);
      Json r;
      r["holds"] = rep.holds;
      r["table"] = Json::array();
      std::string text;
      for (const auto& li : rep.table) {
        r["table"].push_back(invariant_json(li, var_of(ctx)));
        text += (text.empty() ? "" : ", ") + li.place.str(var_of(ctx)) + ": " + std::to_string(li.value);
      }
      r["sum"] = rep.sum;
      r["mod"] = rep.modulus;
      text += " (sum " + std::to_string(rep.sum) + " mod " + std::to_string(rep.modulus) + ", " +
              (rep.holds ? "holds" : "fails") + ")";
      return emit(s.op, in, r, text, ctx);
    }
    if (s.op == "zero") {
      const bool r = std::visit([](const auto& c) { return h_zero_test(c); }, klass(x));
      return emit(s.op, in, r, bool_str(r), ctx);
    }
    if (s.op == "colim_eq") {
      const Class& a = klass(x);
      const Class& b = klass(in[1]);
      if (a.index() != b.index()) throw ConfigMismatch("classes over different fields");
      const bool r = std::visit(
          [&](const auto& c) {
            using H = std::decay_t<decltype(c)>;
            return colimit_equal(c, std::get<H>(b));
          },
          a);
      return emit(s.op, in, r, bool_str(r), ctx);
    }
    if (s.op == "shift") {
      const Value r{shift(klass(x), s.number)};
      return emit(s.op, in, str(r), str(r), ctx);
    }
    if (s.op == "decomp") {
      const auto* h = std::get_if<HClass<LaurentElem>>(&klass(x));
      if (!h) throw UnsupportedField("decomposition needs a class over F_q((t))");
      const Theorem3Parts parts = theorem3_decompose(*h);
      Json r;
      r["specialization"] = parts.specialization.str();
      r["residue"] = parts.residue ? Json(parts.residue->str()) : Json(nullptr);
      std::string text = "specialization " + parts.specialization.str();
      if (parts.residue) text += "; residue " + parts.residue->str();
      return emit(s.op, in, r, text, ctx);
    }
    if (s.op == "wtrace") {
      const Witt wv = as_witt(x, ctx);
      const auto* w = std::get_if<WittVector<gf::Elem>>(&wv);
      if (!w) throw UnsupportedField("wtrace needs a Witt vector over F_q");
      const uint64_t v = witt_trace_int(*w);
      const uint64_t mod = detail::int_pow(ctx.base.p(), static_cast<uint32_t>(w->length()));
      Json r;
      r["value"] = v;
      r["mod"] = mod;
      return emit(s.op, in, r, std::to_string(v) + " (mod " + std::to_string(mod) + ")", ctx);
    }
    if (s.op == "assolve") {
      const Witt w = as_witt(x, ctx);
      const std::optional<std::string> r =
          std::visit([](const auto& v) -> std::optional<std::string> {
            auto sol = witt_as_solve(v);
            return sol ? std::optional<std::string>(sol->str()) : std::nullopt;
          }, w);
      return emit(s.op, in, r ? Json(*r) : Json(nullptr), r.value_or("none"), ctx);
    }
    throw UnknownName("unknown statement '" + s.op + "'");
  }

  static MilnorElement zero_or_milnor(const Value& v, const MilnorElement& like) {
    if (auto n = std::get_if<long long>(&v.v); n && *n == 0) return MilnorElement::zero(like.field(), like.degree());
    return milnor(v);
  }

  static Output silent() {
    Output o;
    o.json = nullptr;
    return o;
  }

  Options opt_;
  std::map<std::string, FieldInfo> fields_;
  std::vector<std::string> order_;
  std::map<std::string, Value> values_;
  std::string current_;

  friend class SessionTestAccess;
};

// ---- cache maintenance ------------------------------------------------------

struct CacheEntry {
  uint32_t p, i;
};

inline std::vector<CacheEntry> default_cache_entries() {
  std::vector<CacheEntry> out;
  for (uint32_t p : {2u, 3u})
    for (uint32_t i = 1; i <= 3; ++i) out.push_back({p, i});
  return out;
}

/// warm writes structure files, verify recomputes and byte-compares them,
/// clear removes every structure file in dir. Returns the touched paths.
inline std::vector<std::string> cache_manage(const std::string& dir, const std::string& action,
                                             const std::vector<CacheEntry>& entries = default_cache_entries()) {
  namespace fs = std::filesystem;
  if (dir.empty()) throw IoError("no cache directory given (use --cache-dir or KATOFORGE_CACHE)");
  std::vector<std::string> out;
  if (action == "clear") {
    std::error_code ec;
    if (!fs::exists(dir, ec)) return out;
    std::vector<fs::path> victims;
    for (const auto& f : fs::directory_iterator(dir, ec)) {
      const std::string name = f.path().filename().string();
      if (name.rfind("wittpoly-v1-p", 0) == 0 && f.path().extension() == ".txt") victims.push_back(f.path());
    }
    if (ec) throw IoError("cannot list " + dir + ": " + ec.message());
    std::sort(victims.begin(), victims.end());
    for (const auto& v : victims) {
      if (!fs::remove(v, ec) || ec) throw IoError("cannot remove " + v.string());
      out.push_back(v.string());
    }
    return out;
  }
  if (action != "warm" && action != "verify") throw TypeError("cache action must be warm, verify or clear");
  for (const auto& [p, i] : entries) {
    const std::string path = witt_cache_path(dir, p, i);
    const std::string expected = WittStructure::compute(p, i)->serialize();
    if (action == "warm") {
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
      katoforge::detail::write_atomically(path, expected);
    } else {
      const auto text = katoforge::detail::read_file(path);
      if (!text) throw VerifyMismatch(path + ": missing");
      if (*text != expected) throw VerifyMismatch(path + ": contents differ from recomputed structure");
    }
    out.push_back(path);
  }
  return out;
}

// ---- self test --------------------------------------------------------------

struct SelftestReport {
  int passed = 0;
  std::vector<std::string> failures;
};

/// Randomized identity checks seeded for reproducibility.
inline SelftestReport selftest(uint64_t seed, int rounds = 50) {
  SelftestReport rep;
  std::mt19937_64 rng(seed);
  auto check = [&](bool ok, const std::string& what) {
    if (ok) {
      ++rep.passed;
    } else {
      rep.failures.push_back(what);
    }
  };
  for (uint32_t p : {2u, 3u}) {
    const gf::Field k = gf::make(p, 2);
    auto elem = [&] { return k.element(rng() % k.size()); };
    auto vec = [&](size_t n) {
      std::vector<gf::Elem> c;
      for (size_t j = 0; j < n; ++j) c.push_back(elem());
      return WittVector<gf::Elem>(c);
    };
    for (int r = 0; r < rounds; ++r) {
      const auto a = vec(3), b = vec(3), c = vec(3);
      check((a + b) + c == a + (b + c), "Witt addition is associative");
      check((a * b) * c == a * (b * c), "Witt multiplication is associative");
      check(a * (b + c) == a * b + a * c, "Witt distributivity");
      check(a.verschiebung().frobenius() == a.times(p), "FV = p");
    }
    const FunctionField F(k, {"t"});
    auto poly = [&] {
      std::vector<gf::Elem> cs;
      for (int j = 0; j < 4; ++j) cs.push_back(elem());
      return RatFunc::from_upoly(F, 0, UPoly(k, cs));
    };
    for (int r = 0; r < rounds / 5; ++r) {
      RatFunc den = poly();
      if (den.is_zero()) continue;
      const RatFunc g = poly() / den;
      gf::Elem total = k.zero();
      for (const auto& pl : places_of(g)) total += trace_to_base(residue_at(g, pl), pl);
      check(total.is_zero(), "residue theorem");
      check(d(g).d().is_zero(), "d o d = 0");
      if (!g.is_zero()) check(nu_test(dlog(g)), "dlog lands in the logarithmic forms");
    }
  }
  return rep;
}

}  // namespace katoforge::cli
