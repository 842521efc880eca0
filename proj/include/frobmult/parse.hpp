#ifndef FROBMULT_PARSE_HPP
#define FROBMULT_PARSE_HPP

#include <cctype>
#include <string>
#include <vector>

#include "frobmult/errors.hpp"
#include "frobmult/polynomial.hpp"

namespace frobmult {

// Parses the polynomial text grammar: terms joined by `+`/`-`; a term is an
// optional integer coefficient and `*`-separated variable powers, e.g.
// `x*y - u*v`, `3*x^2*y`, `-2`. Whitespace is insignificant.
class PolyParser {
 public:
  PolyParser(PolyContextPtr ctx, std::vector<std::string> varnames)
      : ctx_(std::move(ctx)), vars_(std::move(varnames)) {
    if (vars_.size() != ctx_->nvars)
      throw structural_error("variable name count does not match context");
  }

  Polynomial parse(const std::string& text) const {
    std::size_t pos = 0;
    Polynomial result = Polynomial::zero(ctx_);
    bool first = true;
    for (;;) {
      skip_ws(text, pos);
      int sign = 1;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        sign = text[pos] == '-' ? -1 : 1;
        ++pos;
      } else if (!first) {
        if (pos >= text.size()) break;
        fail(text, pos, "expected '+' or '-'");
      }
      skip_ws(text, pos);
      if (pos >= text.size()) {
        if (first && sign == 1) break;  // empty input -> 0
        fail(text, pos, "expected term");
      }
      result = result + parse_term(text, pos, sign);
      first = false;
      skip_ws(text, pos);
      if (pos >= text.size()) break;
    }
    return result;
  }

 private:
  [[noreturn]] static void fail(const std::string& text, std::size_t pos,
                                const std::string& what) {
    throw parse_error("polynomial syntax error at position " +
                          std::to_string(pos) + ": " + what + " in \"" + text +
                          "\"",
                      0, pos);
  }

  static void skip_ws(const std::string& t, std::size_t& pos) {
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
  }

  Polynomial parse_term(const std::string& t, std::size_t& pos, int sign) const {
    long long coeff = 1;
    std::vector<long long> exps(ctx_->nvars, 0);
    bool any = false;
    for (;;) {
      skip_ws(t, pos);
      if (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
        long long v = 0;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
          v = v * 10 + (t[pos] - '0');
          if (v > (1LL << 60)) fail(t, pos, "integer literal too large");
          ++pos;
        }
        coeff = ctx_->field.mul(ctx_->field.reduce(coeff), ctx_->field.reduce(v));
        any = true;
      } else if (pos < t.size() &&
                 (std::isalpha(static_cast<unsigned char>(t[pos])) || t[pos] == '_')) {
        std::size_t start = pos;
        while (pos < t.size() &&
               (std::isalnum(static_cast<unsigned char>(t[pos])) || t[pos] == '_'))
          ++pos;
        std::string name = t.substr(start, pos - start);
        std::size_t idx = var_index(name);
        if (idx == vars_.size()) fail(t, start, "unknown variable '" + name + "'");
        long long e = 1;
        skip_ws(t, pos);
        if (pos < t.size() && t[pos] == '^') {
          ++pos;
          skip_ws(t, pos);
          if (pos >= t.size() || !std::isdigit(static_cast<unsigned char>(t[pos])))
            fail(t, pos, "expected exponent");
          e = 0;
          while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
            e = e * 10 + (t[pos] - '0');
            if (e > kMaxExponent) fail(t, pos, "exponent too large");
            ++pos;
          }
        }
        exps[idx] += e;
        any = true;
      } else {
        fail(t, pos, "expected coefficient or variable");
      }
      skip_ws(t, pos);
      if (pos < t.size() && t[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any) fail(t, pos, "empty term");
    long long c = sign < 0 ? -static_cast<long long>(ctx_->field.reduce(coeff))
                           : static_cast<long long>(ctx_->field.reduce(coeff));
    return Polynomial::monomial(ctx_, Monomial(std::move(exps)), c);
  }

  std::size_t var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return vars_.size();
  }

  PolyContextPtr ctx_;
  std::vector<std::string> vars_;
};

}  // namespace frobmult

#endif
