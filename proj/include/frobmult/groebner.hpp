#ifndef FROBMULT_GROEBNER_HPP
#define FROBMULT_GROEBNER_HPP

#include <algorithm>
#include <bit>
#include <optional>
#include <utility>
#include <vector>

#include "frobmult/errors.hpp"
#include "frobmult/polynomial.hpp"

namespace frobmult {

// Element of a free module S^r over the ambient polynomial ring.
struct FreeModuleVector {
  PolyContextPtr ctx;
  std::vector<Polynomial> entries;

  static FreeModuleVector zero(PolyContextPtr c, std::size_t rank) {
    FreeModuleVector v;
    v.ctx = c;
    v.entries.assign(rank, Polynomial::zero(c));
    return v;
  }

  std::size_t rank() const { return entries.size(); }

  bool is_zero() const {
    for (const Polynomial& f : entries)
      if (!f.is_zero()) return false;
    return true;
  }

  FreeModuleVector operator+(const FreeModuleVector& o) const {
    check_rank(o);
    FreeModuleVector r = *this;
    for (std::size_t i = 0; i < entries.size(); ++i)
      r.entries[i] = r.entries[i] + o.entries[i];
    return r;
  }
  FreeModuleVector operator-(const FreeModuleVector& o) const {
    check_rank(o);
    FreeModuleVector r = *this;
    for (std::size_t i = 0; i < entries.size(); ++i)
      r.entries[i] = r.entries[i] - o.entries[i];
    return r;
  }
  FreeModuleVector times_term(const Monomial& m, PrimeField::value_type c) const {
    FreeModuleVector r = *this;
    for (Polynomial& f : r.entries) f = f.times_term(m, c);
    return r;
  }

  // Degree of a homogeneous vector given the ambient grading shifts;
  // nullopt when inhomogeneous, -infinity is represented by zero vectors
  // (returns nullopt-free degree only for nonzero input).
  std::optional<long long> homogeneous_degree(
      const std::vector<long long>& shifts) const {
    std::optional<long long> deg;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const Polynomial& f = entries[i];
      if (f.is_zero()) continue;
      if (!f.is_homogeneous()) return std::nullopt;
      long long d = f.degree() + shifts[i];
      if (deg && *deg != d) return std::nullopt;
      deg = d;
    }
    return deg ? deg : std::optional<long long>(0);
  }

  bool operator==(const FreeModuleVector& o) const { return entries == o.entries; }

 private:
  void check_rank(const FreeModuleVector& o) const {
    if (o.entries.size() != entries.size())
      throw structural_error("free module rank mismatch");
    check_same_context(ctx, o.ctx);
  }
};

// Leading term of a vector: position-over-term, lower component index wins.
struct ModuleTerm {
  std::size_t comp;
  Monomial mono;
  PrimeField::value_type coeff;
};

inline ModuleTerm module_lead(const FreeModuleVector& v) {
  for (std::size_t i = 0; i < v.entries.size(); ++i)
    if (!v.entries[i].is_zero()) {
      const Term& t = v.entries[i].leading_term();
      return {i, t.mono, t.coeff};
    }
  throw structural_error("leading term of zero vector");
}

// a > b in the module order (position over term).
inline bool module_term_greater(const PolyContextPtr& ctx, const ModuleTerm& a,
                                const ModuleTerm& b) {
  if (a.comp != b.comp) return a.comp < b.comp;
  return ctx->order.compare(a.mono, b.mono) > 0;
}

// Fully reduced remainder of v against basis (which need not be a Groebner
// basis; against one, the result is the canonical normal form).
inline FreeModuleVector normal_form(const FreeModuleVector& v,
                                    const std::vector<FreeModuleVector>& basis) {
  const PolyContextPtr& ctx = v.ctx;
  FreeModuleVector rem = FreeModuleVector::zero(ctx, v.rank());
  FreeModuleVector h = v;
  while (!h.is_zero()) {
    ModuleTerm lt = module_lead(h);
    bool reduced = false;
    for (const FreeModuleVector& g : basis) {
      if (g.is_zero()) continue;
      if (g.rank() != h.rank())
        throw structural_error("rank mismatch in normal form");
      ModuleTerm gl = module_lead(g);
      if (gl.comp == lt.comp && gl.mono.divides(lt.mono)) {
        Monomial q = gl.mono.divide_into(lt.mono);
        PrimeField::value_type c =
            ctx->field.mul(lt.coeff, ctx->field.inv(gl.coeff));
        h = h - g.times_term(q, c);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      // move the irreducible leading term to the remainder
      Polynomial t = Polynomial::monomial(ctx, lt.mono, lt.coeff);
      rem.entries[lt.comp] = rem.entries[lt.comp] + t;
      h.entries[lt.comp] = h.entries[lt.comp] - t;
    }
  }
  return rem;
}

namespace detail {

struct Pair {
  std::size_t i, j;
  long long lcm_degree;
};

inline bool pair_less(const Pair& a, const Pair& b) {
  if (a.lcm_degree != b.lcm_degree) return a.lcm_degree < b.lcm_degree;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

}  // namespace detail

// Buchberger's algorithm for submodules of free modules, position-over-term
// order, normal pair selection (minimal lcm degree, then pair index).
// Returns the reduced Groebner basis: monic, auto-reduced, sorted descending
// by leading term, so the result is reproducible byte for byte.
inline std::vector<FreeModuleVector> buchberger(
    std::vector<FreeModuleVector> gens) {
  std::vector<FreeModuleVector> basis;
  PolyContextPtr ctx;
  for (FreeModuleVector& g : gens) {
    if (g.is_zero()) continue;
    ctx = g.ctx;
    ModuleTerm lt = module_lead(g);
    basis.push_back(g.times_term(Monomial::one(g.ctx->nvars),
                                 g.ctx->field.inv(lt.coeff)));
  }
  if (basis.empty()) return basis;

  std::vector<detail::Pair> pairs;
  auto add_pairs = [&](std::size_t n) {
    ModuleTerm ln = module_lead(basis[n]);
    for (std::size_t i = 0; i < n; ++i) {
      ModuleTerm li = module_lead(basis[i]);
      if (li.comp != ln.comp) continue;
      pairs.push_back({i, n, Monomial::lcm(li.mono, ln.mono).degree()});
    }
  };
  for (std::size_t n = 1; n < basis.size(); ++n) add_pairs(n);

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), detail::pair_less);
    detail::Pair pr = *it;
    pairs.erase(it);
    ModuleTerm li = module_lead(basis[pr.i]);
    ModuleTerm lj = module_lead(basis[pr.j]);
    Monomial lcm = Monomial::lcm(li.mono, lj.mono);
    FreeModuleVector s =
        basis[pr.i].times_term(li.mono.divide_into(lcm), 1) -
        basis[pr.j].times_term(lj.mono.divide_into(lcm), 1);
    FreeModuleVector h = normal_form(s, basis);
    if (!h.is_zero()) {
      ModuleTerm lh = module_lead(h);
      basis.push_back(h.times_term(Monomial::one(ctx->nvars),
                                   ctx->field.inv(lh.coeff)));
      add_pairs(basis.size() - 1);
    }
  }

  // Auto-reduce to the unique reduced basis.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::vector<FreeModuleVector> others;
      others.reserve(basis.size() - 1);
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (j != i) others.push_back(basis[j]);
      FreeModuleVector r = normal_form(basis[i], others);
      if (!(r == basis[i])) {
        changed = true;
        if (r.is_zero()) {
          basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
          --i;
        } else {
          ModuleTerm lr = module_lead(r);
          basis[i] = r.times_term(Monomial::one(ctx->nvars),
                                  ctx->field.inv(lr.coeff));
        }
      }
    }
  }
  std::sort(basis.begin(), basis.end(),
            [&](const FreeModuleVector& a, const FreeModuleVector& b) {
              return module_term_greater(ctx, module_lead(a), module_lead(b));
            });
  return basis;
}

// Membership: v lies in the submodule generated by gb (a Groebner basis).
inline bool in_submodule(const FreeModuleVector& v,
                         const std::vector<FreeModuleVector>& gb) {
  return normal_form(v, gb).is_zero();
}

// ---------------------------------------------------------------------------
// Syzygies via elimination: tag each generator with a fresh unit vector in a
// lower block, compute a Groebner basis, and read off the elements whose
// upper block vanishes.

// Expresses membership certificates: lift(v) = coefficients a with
// v = sum a_k gens[k] modulo the ideal block, when v lies in the span.
class ModuleLifter {
 public:
  // gens: generators in S^rank. ideal: ring relations adjoined as
  // ideal * e_j for every component j of the upper block.
  ModuleLifter(PolyContextPtr ctx, std::size_t rank,
               const std::vector<FreeModuleVector>& gens,
               const std::vector<Polynomial>& ideal)
      : ctx_(std::move(ctx)), rank_(rank), ngens_(gens.size()) {
    std::size_t arank = rank_ + ngens_;
    std::vector<FreeModuleVector> tagged;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      FreeModuleVector v = FreeModuleVector::zero(ctx_, arank);
      for (std::size_t j = 0; j < rank_; ++j) v.entries[j] = gens[k].entries[j];
      v.entries[rank_ + k] = Polynomial::constant(ctx_, 1);
      tagged.push_back(std::move(v));
    }
    for (const Polynomial& g : ideal)
      for (std::size_t j = 0; j < rank_; ++j) {
        FreeModuleVector v = FreeModuleVector::zero(ctx_, arank);
        v.entries[j] = g;
        tagged.push_back(std::move(v));
      }
    gb_ = buchberger(std::move(tagged));
  }

  // Coefficients a with v = sum a_k gens[k] modulo ideal * S^rank, or
  // nullopt if v is not in the span.
  std::optional<std::vector<Polynomial>> lift(const FreeModuleVector& v) const {
    if (v.rank() != rank_) throw structural_error("lift rank mismatch");
    FreeModuleVector aug = FreeModuleVector::zero(ctx_, rank_ + ngens_);
    for (std::size_t j = 0; j < rank_; ++j) aug.entries[j] = v.entries[j];
    FreeModuleVector r = normal_form(aug, gb_);
    for (std::size_t j = 0; j < rank_; ++j)
      if (!r.entries[j].is_zero()) return std::nullopt;
    std::vector<Polynomial> a;
    a.reserve(ngens_);
    for (std::size_t k = 0; k < ngens_; ++k)
      a.push_back(-r.entries[rank_ + k]);
    return a;
  }

 private:
  PolyContextPtr ctx_;
  std::size_t rank_;
  std::size_t ngens_;
  std::vector<FreeModuleVector> gb_;
};

// Generators of { w in S^c : sum w_k gens[k] in ideal * S^rank }, i.e. the
// syzygy module of the given generators over the quotient by the ideal.
inline std::vector<FreeModuleVector> syzygy_generators(
    const PolyContextPtr& ctx, std::size_t rank,
    const std::vector<FreeModuleVector>& gens,
    const std::vector<Polynomial>& ideal) {
  std::size_t c = gens.size();
  std::size_t nideal_tags = rank * ideal.size();
  std::size_t arank = rank + c + nideal_tags;
  std::vector<FreeModuleVector> tagged;
  for (std::size_t k = 0; k < c; ++k) {
    FreeModuleVector v = FreeModuleVector::zero(ctx, arank);
    for (std::size_t j = 0; j < rank; ++j) v.entries[j] = gens[k].entries[j];
    v.entries[rank + k] = Polynomial::constant(ctx, 1);
    tagged.push_back(std::move(v));
  }
  std::size_t tag = rank + c;
  for (const Polynomial& g : ideal)
    for (std::size_t j = 0; j < rank; ++j) {
      FreeModuleVector v = FreeModuleVector::zero(ctx, arank);
      v.entries[j] = g;
      v.entries[tag++] = Polynomial::constant(ctx, 1);
      tagged.push_back(std::move(v));
    }
  std::vector<FreeModuleVector> gb = buchberger(std::move(tagged));
  std::vector<FreeModuleVector> out;
  for (const FreeModuleVector& v : gb) {
    bool upper_zero = true;
    for (std::size_t j = 0; j < rank; ++j)
      if (!v.entries[j].is_zero()) {
        upper_zero = false;
        break;
      }
    if (!upper_zero) continue;
    FreeModuleVector w = FreeModuleVector::zero(ctx, c);
    for (std::size_t k = 0; k < c; ++k) w.entries[k] = v.entries[rank + k];
    if (!w.is_zero()) out.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Combinatorics on leading terms: Krull dimension and standard monomials.

// Dimension of S modulo a monomial ideal: size of the largest variable
// subset touching no generator's support. Returns -1 when the ideal is the
// unit ideal (empty variety).
inline int monomial_ideal_dimension(const std::vector<Monomial>& gens,
                                    std::size_t nvars) {
  std::vector<std::uint64_t> supports;
  for (const Monomial& m : gens) {
    if (m.degree() == 0) return -1;  // unit ideal
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (m.exponent(i) > 0) mask |= (std::uint64_t{1} << i);
    supports.push_back(mask);
  }
  int best = 0;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << nvars); ++subset) {
    bool independent = true;
    for (std::uint64_t s : supports)
      if ((s & ~subset) == 0) {
        independent = false;
        break;
      }
    if (independent) best = std::max(best, static_cast<int>(std::popcount(subset)));
  }
  return best;
}

// Krull dimension of S/I from the leading monomials of a Groebner basis of
// an ideal I (vectors of rank 1). The dimension of the initial ideal equals
// the dimension of I itself. Returns -1 for the unit ideal.
inline int krull_dimension(const std::vector<FreeModuleVector>& ideal_gb,
                           std::size_t nvars) {
  std::vector<Monomial> leads;
  for (const FreeModuleVector& g : ideal_gb) leads.push_back(module_lead(g).mono);
  return monomial_ideal_dimension(leads, nvars);
}

// Dimension of the graded module S^rank / N, N given by a Groebner basis:
// the maximum over components of the dimension modulo that component's
// leading-term ideal. Returns -1 for the zero module.
inline int quotient_module_dimension(const std::vector<FreeModuleVector>& gb,
                                     std::size_t rank, std::size_t nvars) {
  int best = -1;
  for (std::size_t j = 0; j < rank; ++j) {
    std::vector<Monomial> leads;
    for (const FreeModuleVector& g : gb) {
      ModuleTerm lt = module_lead(g);
      if (lt.comp == j) leads.push_back(lt.mono);
    }
    best = std::max(best, monomial_ideal_dimension(leads, nvars));
  }
  return best;
}

inline constexpr long long kStandardMonomialCap = 100'000'000;

// Number of monomials in S^rank outside the leading-term module of gb;
// nullopt when infinite. Finite exactly when, in every component, the
// leading monomials contain a pure power of each variable.
inline std::optional<long long> standard_monomial_count(
    const std::vector<FreeModuleVector>& gb, std::size_t rank,
    std::size_t nvars) {
  std::vector<std::vector<Monomial>> per_comp(rank);
  for (const FreeModuleVector& g : gb) {
    ModuleTerm lt = module_lead(g);
    per_comp[lt.comp].push_back(lt.mono);
  }
  long long total = 0;
  for (std::size_t j = 0; j < rank; ++j) {
    if (nvars == 0) {
      bool killed = false;
      for (const Monomial& m : per_comp[j])
        if (m.degree() == 0) killed = true;
      if (!killed) total += 1;
      continue;
    }
    // bound per variable from pure powers
    std::vector<long long> bound(nvars, -1);
    bool killed = false;
    for (const Monomial& m : per_comp[j]) {
      if (m.degree() == 0) {  // unit kills this component
        killed = true;
        break;
      }
      int support_var = -1;
      bool pure = true;
      for (std::size_t i = 0; i < nvars; ++i) {
        if (m.exponent(i) > 0) {
          if (support_var >= 0) {
            pure = false;
            break;
          }
          support_var = static_cast<int>(i);
        }
      }
      if (pure && support_var >= 0) {
        long long e = m.exponent(static_cast<std::size_t>(support_var));
        auto i = static_cast<std::size_t>(support_var);
        if (bound[i] < 0 || e < bound[i]) bound[i] = e;
      }
    }
    if (killed) continue;
    for (long long b : bound)
      if (b < 0) return std::nullopt;  // no pure power: infinite colength
    long long volume = 1;
    for (long long b : bound) {
      if (volume > kStandardMonomialCap / std::max(b, 1LL))
        throw capacity_error("standard monomial box exceeds enumeration cap");
      volume *= b;
    }
    // enumerate the box, skipping multiples of any leading monomial
    std::vector<long long> exps(nvars, 0);
    long long count = 0;
    for (;;) {
      bool divisible = false;
      for (const Monomial& m : per_comp[j]) {
        bool div = true;
        for (std::size_t i = 0; i < nvars; ++i)
          if (m.exponent(i) > exps[i]) {
            div = false;
            break;
          }
        if (div) {
          divisible = true;
          break;
        }
      }
      if (!divisible) ++count;
      std::size_t i = 0;
      while (i < nvars) {
        if (++exps[i] < bound[i]) break;
        exps[i] = 0;
        ++i;
      }
      if (i == nvars) break;
    }
    total += count;
  }
  return total;
}

}  // namespace frobmult

#endif
