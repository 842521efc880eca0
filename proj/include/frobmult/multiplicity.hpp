#ifndef FROBMULT_MULTIPLICITY_HPP
#define FROBMULT_MULTIPLICITY_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobmult/complex.hpp"
#include "frobmult/errors.hpp"
#include "frobmult/ring.hpp"

namespace frobmult {

// ---------------------------------------------------------------------------
// Intersection multiplicity chi(X, Y)

// chi(X (x) R/J) is computed as the Euler characteristic of X read over the
// ring S/(I+J); graded lengths there agree with lengths over R.
inline long long chi(const FreeComplex& x, const PresentedModule& y,
                     bool skip_dim_check = false);
inline long long chi(const FreeComplex& x, const FreeComplex& y,
                     bool skip_dim_check = false);

struct CompReport {
  bool ok = true;
  bool intersection_ok = true;  // dim Supp(X (x) Y) <= 0
  bool dim_sum_ok = true;       // dim Supp X + dim Y <= dim R
  int dim_x = -1;
  int dim_y = -1;
  int dim_product = -1;
  int dim_ring = 0;
  std::string message;
};

namespace detail {

inline int cyclic_product_support_dim(const FreeComplex& x,
                                      const PresentedModule& y) {
  auto sub = x.ring()->quotient_by(y.cyclic_ideal());
  if (!sub) return -1;  // zero ring: empty support
  return support_dim(x.over_ring(*sub));
}

inline void require_cyclic_probe(const PresentedModule& y) {
  if (y.rank() != 1 || y.generator_degrees()[0] != 0)
    throw structural_error(
        "probe modules must be cyclic quotients R/J presented on one "
        "degree-zero generator");
}

}  // namespace detail

// The comp-set compatibility condition: the supports may meet only at the
// maximal ideal, and their dimensions must not exceed dim R in total.
inline CompReport comp_check(const FreeComplex& x, const PresentedModule& y) {
  detail::require_cyclic_probe(y);
  check_same_ring(x.ring(), y.ring());
  CompReport r;
  r.dim_ring = x.ring()->dim();
  r.dim_x = support_dim(x);
  r.dim_y = y.dim();
  r.dim_product = detail::cyclic_product_support_dim(x, y);
  r.intersection_ok = r.dim_product <= 0;
  r.dim_sum_ok = r.dim_x + r.dim_y <= r.dim_ring;
  r.ok = r.intersection_ok && r.dim_sum_ok;
  if (!r.intersection_ok)
    r.message = "supports intersect outside the maximal ideal (dim Supp(X(x)Y) = " +
                std::to_string(r.dim_product) + ")";
  else if (!r.dim_sum_ok)
    r.message = "dim Supp X + dim Y = " + std::to_string(r.dim_x) + " + " +
                std::to_string(r.dim_y) + " exceeds dim R = " +
                std::to_string(r.dim_ring);
  return r;
}

inline CompReport comp_check(const FreeComplex& x, const FreeComplex& y) {
  check_same_ring(x.ring(), y.ring());
  CompReport r;
  r.dim_ring = x.ring()->dim();
  r.dim_x = support_dim(x);
  r.dim_y = support_dim(y);
  r.dim_product = support_dim(tensor(x, y));
  r.intersection_ok = r.dim_product <= 0;
  r.dim_sum_ok = r.dim_x + r.dim_y <= r.dim_ring;
  r.ok = r.intersection_ok && r.dim_sum_ok;
  if (!r.ok)
    r.message = r.intersection_ok ? "dimension inequality fails"
                                  : "supports intersect outside the maximal ideal";
  return r;
}

inline long long chi(const FreeComplex& x, const PresentedModule& y,
                     bool skip_dim_check) {
  detail::require_cyclic_probe(y);
  check_same_ring(x.ring(), y.ring());
  if (!skip_dim_check) {
    CompReport r = comp_check(x, y);
    if (!r.dim_sum_ok) throw incompatible_error("pair not compatible: " + r.message);
  }
  auto sub = x.ring()->quotient_by(y.cyclic_ideal());
  if (!sub) return 0;  // Y = 0
  return euler_characteristic(x.over_ring(*sub));
}

inline long long chi(const FreeComplex& x, const FreeComplex& y,
                     bool skip_dim_check) {
  check_same_ring(x.ring(), y.ring());
  if (!skip_dim_check) {
    CompReport r = comp_check(x, y);
    if (!r.dim_sum_ok) throw incompatible_error("pair not compatible: " + r.message);
  }
  return euler_characteristic(tensor(x, y));
}

// ---------------------------------------------------------------------------
// Frobenius-twisted chi series and its Vandermonde diagonalization

// c_e = chi(F^e(X), Y) for e = 0..e_max, with t = codim X.
struct ChiTable {
  unsigned long p = 0;
  long long t = 0;  // codim of X
  std::vector<mpz_class> values;
};

// a_i = chi(alpha^(i) (x) beta): pairings of the eigencomponent
// decomposition against the probe, exact rationals.
struct EigenComponents {
  unsigned u = 0;
  long long t = 0;
  unsigned long p = 0;
  std::vector<mpq_class> components;

  // sum_i p^{e(t-i)} a_i, the value the table must reconstruct at e.
  mpq_class reconstruct(unsigned long e) const;
};

inline mpq_class pow_pq(unsigned long p, long long n) {
  mpz_class num, b(static_cast<unsigned long>(p));
  mpz_pow_ui(num.get_mpz_t(), b.get_mpz_t(),
             static_cast<unsigned long>(n < 0 ? -n : n));
  if (n >= 0) return mpq_class(num);
  mpq_class r(1, 1);
  r /= num;
  return r;
}

inline mpq_class EigenComponents::reconstruct(unsigned long e) const {
  mpq_class s = 0;
  for (unsigned i = 0; i <= u && i < components.size(); ++i)
    s += components[i] * pow_pq(p, static_cast<long long>(e) * (t - i));
  return s;
}

template <typename ChiFn>
inline ChiTable chi_series_with(unsigned long p, long long t, unsigned e_max,
                                ChiFn&& chi_at) {
  ChiTable table;
  table.p = p;
  table.t = t;
  for (unsigned e = 0; e <= e_max; ++e) table.values.emplace_back(chi_at(e));
  return table;
}

inline ChiTable chi_series(const FreeComplex& x, const PresentedModule& y,
                           unsigned e_max, bool skip_dim_check = false) {
  if (!skip_dim_check) {
    CompReport r = comp_check(x, y);
    if (!r.ok) throw incompatible_error("pair not compatible: " + r.message);
  }
  long long t = codim(x);
  return chi_series_with(x.ring()->p(), t, e_max, [&](unsigned e) {
    return static_cast<long>(chi(frobenius(x, e), y, /*skip_dim_check=*/true));
  });
}

// Exact solve of sum_i p^{e(t-i)} a_i = c_e for e = 0..u. The coefficient
// matrix is the Vandermonde matrix of the pairwise distinct nodes
// p^t, ..., p^{t-u}; scaling rows by p^{eu} recovers the inverse-power form.
inline EigenComponents vandermonde_solve(const ChiTable& table, unsigned u) {
  if (table.values.size() < u + 1)
    throw structural_error("chi table too short for the requested u");
  std::size_t n = u + 1;
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
  for (std::size_t e = 0; e < n; ++e) {
    for (std::size_t i = 0; i < n; ++i)
      m[e][i] = pow_pq(table.p, static_cast<long long>(e) *
                                    (table.t - static_cast<long long>(i)));
    m[e][n] = mpq_class(table.values[e]);
  }
  // Gaussian elimination, exact rationals
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw structural_error("singular Vandermonde system");
    std::swap(m[col], m[piv]);
    mpq_class inv = m[col][col];
    for (std::size_t k = col; k <= n; ++k) m[col][k] /= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      mpq_class f = m[r][col];
      for (std::size_t k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  EigenComponents out;
  out.u = u;
  out.t = table.t;
  out.p = table.p;
  for (std::size_t i = 0; i < n; ++i) {
    m[i][n].canonicalize();
    out.components.push_back(m[i][n]);
  }
  return out;
}

// Checks that the decomposition reproduces every tabulated entry, including
// the ones beyond e = u that the solve did not consume.
inline bool reconstructs_table(const EigenComponents& comps,
                               const ChiTable& table) {
  for (std::size_t e = 0; e < table.values.size(); ++e)
    if (comps.reconstruct(static_cast<unsigned long>(e)) !=
        mpq_class(table.values[e]))
      return false;
  return true;
}

inline unsigned foxby_bound(long long codim_x) {
  return codim_x > 2 ? static_cast<unsigned>(codim_x - 2) : 0u;
}

struct DuttaResult {
  mpq_class value;
  unsigned u = 0;
  long long t = 0;
  EigenComponents components;
  ChiTable table;
};

// Dutta multiplicity in closed form: the leading eigencomponent a_0 of the
// chi series. AUTO u is the Foxby bound max(0, codim X - 2); tabulating
// past e = u is allowed and every extra entry must be reconstructed.
inline DuttaResult dutta(const FreeComplex& x, const PresentedModule& y,
                         std::optional<unsigned> u_opt = std::nullopt,
                         unsigned e_max = 0) {
  long long t = codim(x);
  if (support_dim(x) == -1) {
    DuttaResult r;  // exact complex: every pairing is zero
    r.t = t;
    r.u = u_opt.value_or(0);
    r.components.u = r.u;
    r.components.t = t;
    r.components.p = x.ring()->p();
    r.components.components.assign(r.u + 1, mpq_class(0));
    r.table = chi_series_with(x.ring()->p(), t, std::max(e_max, r.u),
                              [](unsigned) { return 0; });
    return r;
  }
  unsigned u = u_opt.value_or(foxby_bound(t));
  DuttaResult r;
  r.u = u;
  r.t = t;
  r.table = chi_series(x, y, std::max(u, e_max));
  r.components = vandermonde_solve(r.table, u);
  if (!reconstructs_table(r.components, r.table))
    throw incompatible_error(
        "requested u is below the recurrence order: the decomposition does "
        "not reconstruct the tabulated chi values");
  r.value = r.components.components[0];
  return r;
}

// The e-th term of the defining limit, for convergence diagnostics.
inline mpq_class dutta_limit_probe(const FreeComplex& x,
                                   const PresentedModule& y, unsigned e) {
  long long t = codim(x);
  long long c = chi(frobenius(x, e), y);
  mpq_class r = mpq_class(static_cast<long>(c)) * pow_pq(x.ring()->p(),
                                      -static_cast<long long>(e) * t);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Vanishing test battery

struct ProbeFit {
  ChiTable table;
  int order = -1;       // minimal recurrence order found, -1 if none fits
  bool consistent = true;
};

struct VanishingReport {
  long long t = 0;        // codim X
  unsigned u_max = 0;     // Foxby upper bound for vdim
  unsigned u_obs = 0;     // certified lower bound from the probes
  bool consistent = true; // every probe fit an order <= u_max
  std::vector<ProbeFit> fits;
};

// Brackets the vanishing dimension: for each probe, the minimal u whose
// recurrence with characteristic roots p^t..p^{t-u} matches the whole
// table. vdim lies in [u_obs, u_max]; a probe needing more than u_max is an
// engine bug and is flagged, not silently accepted.
inline VanishingReport vdim_bracket(const FreeComplex& x,
                                    const std::vector<PresentedModule>& probes,
                                    unsigned e_max) {
  VanishingReport rep;
  rep.t = codim(x);
  rep.u_max = foxby_bound(rep.t);
  if (e_max < rep.u_max)
    throw structural_error("e_max must be at least the Foxby bound");
  for (const PresentedModule& y : probes) {
    ProbeFit fit;
    fit.table = chi_series(x, y, e_max);
    for (unsigned u = 0; u <= rep.u_max; ++u) {
      EigenComponents comps = vandermonde_solve(fit.table, u);
      if (reconstructs_table(comps, fit.table)) {
        fit.order = static_cast<int>(u);
        break;
      }
    }
    if (fit.order < 0) {
      fit.consistent = false;
      rep.consistent = false;
    } else {
      rep.u_obs = std::max(rep.u_obs, static_cast<unsigned>(fit.order));
    }
    rep.fits.push_back(std::move(fit));
  }
  return rep;
}

struct FixedPointWitness {
  std::size_t probe_index = 0;
  unsigned e = 0;
  mpz_class expected;  // p^{e t} c_0
  mpz_class actual;    // c_e
};

struct FixedPointReport {
  long long t = 0;
  bool pass = true;
  std::vector<FixedPointWitness> failures;
  std::vector<ChiTable> tables;
};

// Observable content of alpha = Phi^e(alpha): c_e = p^{e t} c_0 for every
// probe. Any failure certifies non-vanishing with a witness.
inline FixedPointReport fixed_point_check(
    const FreeComplex& x, const std::vector<PresentedModule>& probes,
    unsigned e_max) {
  FixedPointReport rep;
  rep.t = codim(x);
  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    ChiTable table = chi_series(x, probes[pi], e_max);
    for (unsigned e = 1; e <= e_max; ++e) {
      mpz_class expected = table.values[0];
      mpz_class scale;
      mpz_class base(static_cast<unsigned long>(table.p));
      mpz_pow_ui(scale.get_mpz_t(), base.get_mpz_t(),
                 static_cast<unsigned long>(e) *
                     static_cast<unsigned long>(rep.t >= 0 ? rep.t : 0));
      if (rep.t < 0) throw structural_error("negative codim in fixed point check");
      expected *= scale;
      if (expected != table.values[e]) {
        rep.pass = false;
        rep.failures.push_back({pi, e, expected, table.values[e]});
      }
    }
    rep.tables.push_back(std::move(table));
  }
  return rep;
}

struct NumericalVanishingEntry {
  unsigned e = 0;
  mpz_class lhs;  // chi(F^e X)
  mpz_class rhs;  // p^{e dim R} chi(X)
  bool pass = true;
};

struct NumericalVanishingReport {
  bool pass = true;
  std::vector<NumericalVanishingEntry> entries;
};

// The length condition chi(F^e X) = p^{e dim R} chi(X) for X supported only
// at the maximal ideal, checked exactly for e = 1..e_max.
inline NumericalVanishingReport numerical_vanishing_check(const FreeComplex& x,
                                                          unsigned e_max = 1) {
  if (support_dim(x) > 0)
    throw incompatible_error(
        "numerical vanishing requires a complex supported only at the "
        "maximal ideal");
  NumericalVanishingReport rep;
  long long chi0 = euler_characteristic(x);
  int d = x.ring()->dim();
  for (unsigned e = 1; e <= e_max; ++e) {
    NumericalVanishingEntry entry;
    entry.e = e;
    entry.lhs = static_cast<long>(euler_characteristic(frobenius(x, e)));
    mpz_class base(static_cast<unsigned long>(x.ring()->p()));
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), base.get_mpz_t(),
               static_cast<unsigned long>(e) * static_cast<unsigned long>(d));
    entry.rhs = mpz_class(static_cast<long>(chi0)) * scale;
    entry.pass = entry.lhs == entry.rhs;
    if (!entry.pass) rep.pass = false;
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

// Default probe family: R together with R/(x_i) for every variable, per the
// generation of the probing space by cyclic quotients. Probes failing the
// compatibility check are filtered out.
inline std::vector<PresentedModule> default_probes(const FreeComplex& x) {
  std::vector<PresentedModule> out;
  const QuotientRingPtr& ring = x.ring();
  std::vector<PresentedModule> candidates;
  candidates.push_back(PresentedModule::free_rank_one(ring));
  for (std::size_t i = 0; i < ring->nvars(); ++i)
    candidates.push_back(PresentedModule::cyclic(
        ring, {Polynomial::variable(ring->context(), i)}));
  for (PresentedModule& m : candidates)
    if (comp_check(x, m).ok) out.push_back(std::move(m));
  return out;
}

}  // namespace frobmult

#endif
