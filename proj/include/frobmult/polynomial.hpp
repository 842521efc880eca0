#ifndef FROBMULT_POLYNOMIAL_HPP
#define FROBMULT_POLYNOMIAL_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobmult/errors.hpp"
#include "frobmult/monomial.hpp"
#include "frobmult/primefield.hpp"

namespace frobmult {

// Shared scalar context: the prime field and the monomial order. Every
// polynomial holds one; mixed-context arithmetic is rejected.
struct PolyContext {
  PolyContext(std::uint64_t p, std::size_t nvars, MonomialOrder ord)
      : field(p), nvars(nvars), order(std::move(ord)) {}
  PolyContext(std::uint64_t p, std::size_t nvars)
      : PolyContext(p, nvars, MonomialOrder::degrevlex(nvars)) {}

  PrimeField field;
  std::size_t nvars;
  MonomialOrder order;

  bool operator==(const PolyContext& o) const {
    return field == o.field && nvars == o.nvars && order == o.order;
  }
};

using PolyContextPtr = std::shared_ptr<const PolyContext>;

inline void check_same_context(const PolyContextPtr& a, const PolyContextPtr& b) {
  if (a.get() != b.get() && !(*a == *b))
    throw structural_error("mixed polynomial ring contexts");
}

struct Term {
  Monomial mono;
  PrimeField::value_type coeff;
  bool operator==(const Term&) const = default;
};

// Multivariate polynomial over F_p in canonical form: terms sorted
// descending in the context's monomial order, no zero coefficients.
// Equality is structural.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(PolyContextPtr ctx) : ctx_(std::move(ctx)) {}

  // Normalizes arbitrary term lists (merges duplicates, drops zeros, sorts).
  Polynomial(PolyContextPtr ctx, std::vector<Term> terms)
      : ctx_(std::move(ctx)), terms_(std::move(terms)) {
    normalize();
  }

  static Polynomial zero(PolyContextPtr ctx) { return Polynomial(std::move(ctx)); }
  static Polynomial constant(PolyContextPtr ctx, long long c) {
    auto v = ctx->field.reduce(c);
    if (v == 0) return zero(std::move(ctx));
    Monomial one = Monomial::one(ctx->nvars);
    return Polynomial(std::move(ctx), {{one, v}});
  }
  static Polynomial monomial(PolyContextPtr ctx, Monomial m, long long c = 1) {
    auto v = ctx->field.reduce(c);
    if (v == 0) return zero(std::move(ctx));
    return Polynomial(std::move(ctx), {{std::move(m), v}});
  }
  static Polynomial variable(PolyContextPtr ctx, std::size_t i) {
    return monomial(ctx, Monomial::variable(ctx->nvars, i), 1);
  }

  const PolyContextPtr& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Term& leading_term() const {
    if (terms_.empty()) throw structural_error("leading term of zero polynomial");
    return terms_.front();
  }

  // Total degree of the leading term; -1 for the zero polynomial.
  long long degree() const {
    long long d = -1;
    for (const Term& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  bool is_homogeneous() const {
    for (const Term& t : terms_)
      if (t.mono.degree() != terms_.front().mono.degree()) return false;
    return true;
  }

  Polynomial operator+(const Polynomial& o) const {
    check_same_context(ctx_, o.ctx_);
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    out.insert(out.end(), terms_.begin(), terms_.end());
    out.insert(out.end(), o.terms_.begin(), o.terms_.end());
    return Polynomial(ctx_, std::move(out));
  }

  Polynomial operator-() const {
    std::vector<Term> out(terms_);
    for (Term& t : out) t.coeff = ctx_->field.neg(t.coeff);
    Polynomial r;
    r.ctx_ = ctx_;
    r.terms_ = std::move(out);  // already canonical
    return r;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    check_same_context(ctx_, o.ctx_);
    std::vector<Term> out;
    out.reserve(terms_.size() * o.terms_.size());
    for (const Term& a : terms_)
      for (const Term& b : o.terms_)
        out.push_back({a.mono * b.mono, ctx_->field.mul(a.coeff, b.coeff)});
    return Polynomial(ctx_, std::move(out));
  }

  // term * this
  Polynomial times_term(const Monomial& m, PrimeField::value_type c) const {
    if (c == 0) return zero(ctx_);
    std::vector<Term> out(terms_);
    for (Term& t : out) {
      t.mono = t.mono * m;
      t.coeff = ctx_->field.mul(t.coeff, c);
    }
    Polynomial r;
    r.ctx_ = ctx_;
    r.terms_ = std::move(out);  // multiplying by a term preserves the order
    return r;
  }

  Polynomial scaled(PrimeField::value_type c) const {
    return times_term(Monomial::one(ctx_->nvars), c);
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(ctx_->field.inv(leading_term().coeff));
  }

  // f^{p^e}: coefficients are fixed by the p-th power map on F_p, so this is
  // the term-by-term scaling of exponents by q = p^e.
  Polynomial twist(unsigned e) const {
    if (e == 0) return *this;
    long long q = 1;
    long long p = ctx_->field.p();
    for (unsigned i = 0; i < e; ++i) {
      if (q > kMaxExponent / p)
        throw capacity_error("p^e overflow in Frobenius twist");
      q *= p;
    }
    std::vector<Term> out(terms_);
    for (Term& t : out) t.mono = t.mono.power_scale(q);
    return Polynomial(ctx_, std::move(out));
  }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

 private:
  void normalize() {
    for (const Term& t : terms_)
      if (t.mono.nvars() != ctx_->nvars)
        throw structural_error("term variable count mismatch");
    std::sort(terms_.begin(), terms_.end(), [this](const Term& a, const Term& b) {
      return ctx_->order.compare(a.mono, b.mono) > 0;
    });
    std::vector<Term> merged;
    for (const Term& t : terms_) {
      if (!merged.empty() && merged.back().mono == t.mono)
        merged.back().coeff = ctx_->field.add(merged.back().coeff, t.coeff);
      else
        merged.push_back(t);
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
    terms_ = std::move(merged);
  }

  PolyContextPtr ctx_;
  std::vector<Term> terms_;
};

inline std::string to_string(const Polynomial& f,
                             const std::vector<std::string>& varnames) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const Term& t : f.terms()) {
    if (!out.empty()) out += " + ";
    std::string factors;
    for (std::size_t i = 0; i < varnames.size(); ++i) {
      long long e = t.mono.exponent(i);
      if (e == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += varnames[i];
      if (e > 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty())
      out += std::to_string(t.coeff);
    else if (t.coeff == 1)
      out += factors;
    else
      out += std::to_string(t.coeff) + "*" + factors;
  }
  return out;
}

}  // namespace frobmult

#endif
