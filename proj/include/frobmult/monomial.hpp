#ifndef FROBMULT_MONOMIAL_HPP
#define FROBMULT_MONOMIAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

#include "frobmult/errors.hpp"

namespace frobmult {

// Exponents stay below this bound; Frobenius twists multiply them by p^e
// and must fail loudly instead of wrapping.
inline constexpr long long kMaxExponent = 1LL << 40;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<long long> exps)
      : exps_(std::move(exps)),
        degree_(std::accumulate(exps_.begin(), exps_.end(), 0LL)) {
    for (long long e : exps_)
      if (e < 0 || e > kMaxExponent)
        throw capacity_error("monomial exponent out of range");
  }

  static Monomial one(std::size_t nvars) {
    return Monomial(std::vector<long long>(nvars, 0));
  }
  static Monomial variable(std::size_t nvars, std::size_t i, long long e = 1) {
    std::vector<long long> v(nvars, 0);
    v[i] = e;
    return Monomial(std::move(v));
  }

  std::size_t nvars() const { return exps_.size(); }
  long long degree() const { return degree_; }
  long long exponent(std::size_t i) const { return exps_[i]; }
  const std::vector<long long>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& o) const {
    if (o.nvars() != nvars())
      throw structural_error("monomial variable count mismatch");
    std::vector<long long> v(exps_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.exps_[i];
    return Monomial(std::move(v));
  }

  bool divides(const Monomial& o) const {
    if (o.nvars() != nvars())
      throw structural_error("monomial variable count mismatch");
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  // o / this, assuming divisibility.
  Monomial divide_into(const Monomial& o) const {
    std::vector<long long> v(o.exps_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= exps_[i];
    return Monomial(std::move(v));
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    std::vector<long long> v(a.exps_);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (b.exps_[i] > v[i]) v[i] = b.exps_[i];
    return Monomial(std::move(v));
  }

  // Scales every exponent by q = p^e (the monomial part of the Frobenius
  // twist); overflow is a capacity error.
  Monomial power_scale(long long q) const {
    std::vector<long long> v(exps_);
    for (long long& e : v) {
      if (q != 0 && e > kMaxExponent / q)
        throw capacity_error("exponent overflow in Frobenius twist");
      e *= q;
    }
    return Monomial(std::move(v));
  }

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

 private:
  std::vector<long long> exps_;
  long long degree_ = 0;
};

enum class OrderKind { degrevlex, deglex };

// A graded monomial order: total degree first, ties broken (rev)lex on the
// exponents read in the declared variable precedence.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence)
      : kind_(kind), precedence_(std::move(precedence)) {}

  static MonomialOrder degrevlex(std::size_t nvars) {
    return MonomialOrder(OrderKind::degrevlex, identity(nvars));
  }
  static MonomialOrder deglex(std::size_t nvars) {
    return MonomialOrder(OrderKind::deglex, identity(nvars));
  }

  OrderKind kind() const { return kind_; }
  std::size_t nvars() const { return precedence_.size(); }

  // <0, 0, >0 as a strong ordering of a against b.
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    if (a.nvars() != nvars() || b.nvars() != nvars())
      throw structural_error("monomial/order variable count mismatch");
    if (a.degree() != b.degree())
      return a.degree() <=> b.degree();
    if (kind_ == OrderKind::deglex) {
      for (std::size_t k = 0; k < precedence_.size(); ++k) {
        long long d = a.exponent(precedence_[k]) - b.exponent(precedence_[k]);
        if (d != 0) return d <=> 0LL;
      }
    } else {
      for (std::size_t k = precedence_.size(); k-- > 0;) {
        long long d = a.exponent(precedence_[k]) - b.exponent(precedence_[k]);
        if (d != 0) return 0LL <=> d;
      }
    }
    return std::strong_ordering::equal;
  }

  bool less(const Monomial& a, const Monomial& b) const {
    return compare(a, b) < 0;
  }

  bool operator==(const MonomialOrder& o) const {
    return kind_ == o.kind_ && precedence_ == o.precedence_;
  }

 private:
  static std::vector<std::size_t> identity(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
  }

  OrderKind kind_ = OrderKind::degrevlex;
  std::vector<std::size_t> precedence_;
};

}  // namespace frobmult

#endif
