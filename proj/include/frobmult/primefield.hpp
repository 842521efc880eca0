#ifndef FROBMULT_PRIMEFIELD_HPP
#define FROBMULT_PRIMEFIELD_HPP

#include <cstdint>

#include "frobmult/errors.hpp"

namespace frobmult {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

// Residues mod a prime p that fits in 32 bits. Elements do not carry the
// modulus; the enclosing ring context supplies it to every operation.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint64_t p) : p_(static_cast<value_type>(p)) {
    if (p > 0x7fffffffULL || !is_prime(p))
      throw structural_error("modulus must be a prime fitting in 31 bits, got " +
                             std::to_string(p));
  }

  value_type p() const { return p_; }

  value_type reduce(long long x) const {
    long long r = x % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }

  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(
        (static_cast<std::uint64_t>(a) * b) % p_);
  }

  value_type inv(value_type a) const {
    if (a == 0) throw structural_error("division by zero in prime field");
    // extended Euclid
    long long t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      long long q = r / nr;
      long long tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<value_type>(t);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  value_type p_;
};

}  // namespace frobmult

#endif
