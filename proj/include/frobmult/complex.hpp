#ifndef FROBMULT_COMPLEX_HPP
#define FROBMULT_COMPLEX_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobmult/errors.hpp"
#include "frobmult/groebner.hpp"
#include "frobmult/ring.hpp"

namespace frobmult {

// Matrix over the ambient polynomial ring, row-major.
struct PolyMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Polynomial> data;

  static PolyMatrix zero(const PolyContextPtr& ctx, std::size_t r, std::size_t c) {
    PolyMatrix m;
    m.rows = r;
    m.cols = c;
    m.data.assign(r * c, Polynomial::zero(ctx));
    return m;
  }

  const Polynomial& at(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }
  Polynomial& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }

  FreeModuleVector column(const PolyContextPtr& ctx, std::size_t c) const {
    FreeModuleVector v = FreeModuleVector::zero(ctx, rows);
    for (std::size_t r = 0; r < rows; ++r) v.entries[r] = at(r, c);
    return v;
  }

  std::vector<FreeModuleVector> columns(const PolyContextPtr& ctx) const {
    std::vector<FreeModuleVector> out;
    out.reserve(cols);
    for (std::size_t c = 0; c < cols; ++c) out.push_back(column(ctx, c));
    return out;
  }

  bool operator==(const PolyMatrix&) const = default;
};

struct ValidationReport {
  bool ok = true;
  std::string message;        // empty when ok
  long long degree = 0;       // homological degree of the first violation
  std::size_t row = 0, col = 0;
};

inline int sign_pow(long long n) { return (n % 2 + 2) % 2 == 0 ? 1 : -1; }

// Bounded complex of graded free R-modules ... -> X_i -> X_{i-1} -> ...
// with X_i of rank ranks[i] carrying grading twists, and differentials
// d_i : X_i -> X_{i-1} for lo < i <= hi. Construction records a validation
// report (homogeneity and d^2 = 0 modulo I); operations that assume
// exactness of the data require it to be ok.
class FreeComplex {
 public:
  // shifts[k] is the twist vector of X_{lo+k}; diffs[k-1] is d_{lo+k}.
  FreeComplex(QuotientRingPtr ring, long long lo,
              std::vector<std::vector<long long>> shifts,
              std::vector<PolyMatrix> diffs)
      : ring_(std::move(ring)), lo_(lo), shifts_(std::move(shifts)),
        diffs_(std::move(diffs)) {
    if (!shifts_.empty() && diffs_.size() + 1 != shifts_.size())
      throw structural_error("complex needs one differential per adjacent pair");
    for (std::size_t k = 0; k + 1 < shifts_.size(); ++k) {
      const PolyMatrix& d = diffs_[k];
      if (d.rows != shifts_[k].size() || d.cols != shifts_[k + 1].size())
        throw structural_error("differential shape mismatch at degree " +
                               std::to_string(lo_ + static_cast<long long>(k) + 1));
    }
    report_ = compute_report();
  }

  static FreeComplex empty(QuotientRingPtr ring) {
    return FreeComplex(std::move(ring), 0, {}, {});
  }

  // Single free module in homological degree n.
  static FreeComplex concentrated(QuotientRingPtr ring, long long n,
                                  std::vector<long long> twists) {
    return FreeComplex(std::move(ring), n, {std::move(twists)}, {});
  }

  const QuotientRingPtr& ring() const { return ring_; }
  bool is_empty() const { return shifts_.empty(); }
  long long lo() const { return lo_; }
  long long hi() const {
    return lo_ + static_cast<long long>(shifts_.size()) - 1;
  }
  std::size_t rank(long long i) const {
    if (is_empty() || i < lo_ || i > hi()) return 0;
    return shifts_[static_cast<std::size_t>(i - lo_)].size();
  }
  const std::vector<long long>& twists(long long i) const {
    return shifts_[static_cast<std::size_t>(i - lo_)];
  }
  // d_i : X_i -> X_{i-1}
  const PolyMatrix& differential(long long i) const {
    return diffs_[static_cast<std::size_t>(i - lo_) - 1];
  }

  const ValidationReport& validation() const { return report_; }
  void require_valid() const {
    if (!report_.ok) throw structural_error("invalid complex: " + report_.message);
  }

  bool operator==(const FreeComplex& o) const {
    return lo_ == o.lo_ && shifts_ == o.shifts_ && diffs_ == o.diffs_ &&
           ring_->same_ring(*o.ring_);
  }

  // The same matrices read over a further quotient of the ring.
  FreeComplex over_ring(QuotientRingPtr r) const {
    return FreeComplex(std::move(r), lo_, shifts_, diffs_);
  }

 private:
  ValidationReport compute_report() const {
    const PolyContextPtr& ctx = ring_->context();
    for (std::size_t k = 0; k + 1 < shifts_.size(); ++k) {
      const PolyMatrix& d = diffs_[k];
      for (std::size_t r = 0; r < d.rows; ++r)
        for (std::size_t c = 0; c < d.cols; ++c) {
          const Polynomial& f = d.at(r, c);
          if (f.is_zero()) continue;
          long long want = shifts_[k + 1][c] - shifts_[k][r];
          if (!f.is_homogeneous() || f.degree() != want)
            return {false,
                    "inhomogeneous differential entry at degree " +
                        std::to_string(lo_ + static_cast<long long>(k) + 1) +
                        ", row " + std::to_string(r) + ", col " + std::to_string(c),
                    lo_ + static_cast<long long>(k) + 1, r, c};
        }
    }
    for (std::size_t k = 0; k + 2 < shifts_.size(); ++k) {
      const PolyMatrix& d1 = diffs_[k];      // d_{lo+k+1}
      const PolyMatrix& d2 = diffs_[k + 1];  // d_{lo+k+2}
      for (std::size_t r = 0; r < d1.rows; ++r)
        for (std::size_t c = 0; c < d2.cols; ++c) {
          Polynomial s = Polynomial::zero(ctx);
          for (std::size_t m = 0; m < d1.cols; ++m)
            s = s + d1.at(r, m) * d2.at(m, c);
          if (!ring_->is_zero_in_ring(s))
            return {false,
                    "d o d is nonzero at degree " +
                        std::to_string(lo_ + static_cast<long long>(k) + 2) +
                        ", row " + std::to_string(r) + ", col " + std::to_string(c),
                    lo_ + static_cast<long long>(k) + 2, r, c};
        }
    }
    return {};
  }

  QuotientRingPtr ring_;
  long long lo_ = 0;
  std::vector<std::vector<long long>> shifts_;
  std::vector<PolyMatrix> diffs_;
  ValidationReport report_;
};

// ---------------------------------------------------------------------------
// Constructors

// Koszul complex on f_1..f_d: ranks C(d,i) in degrees 0..d, exterior algebra
// basis given by increasing index subsets in lexicographic order, with
// d(e_S) = sum_k (-1)^k f_{S[k]} e_{S \ S[k]}.
inline FreeComplex koszul(QuotientRingPtr ring,
                          const std::vector<Polynomial>& elements) {
  const PolyContextPtr& ctx = ring->context();
  for (const Polynomial& f : elements) {
    check_same_context(ctx, f.context());
    if (!f.is_homogeneous() || f.is_zero())
      throw structural_error("Koszul elements must be nonzero homogeneous");
  }
  std::size_t d = elements.size();
  // subsets of {0..d-1} of each size, lexicographic
  std::vector<std::vector<std::vector<std::size_t>>> basis(d + 1);
  std::vector<std::size_t> cur;
  auto gen = [&](auto&& self, std::size_t start) -> void {
    basis[cur.size()].push_back(cur);
    for (std::size_t i = start; i < d; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  gen(gen, 0);

  std::vector<std::vector<long long>> shifts(d + 1);
  for (std::size_t i = 0; i <= d; ++i)
    for (const auto& S : basis[i]) {
      long long deg = 0;
      for (std::size_t v : S) deg += elements[v].degree();
      shifts[i].push_back(deg);
    }

  auto index_of = [&](std::size_t sz, const std::vector<std::size_t>& S) {
    const auto& level = basis[sz];
    for (std::size_t i = 0; i < level.size(); ++i)
      if (level[i] == S) return i;
    throw structural_error("internal: Koszul basis lookup failed");
  };

  std::vector<PolyMatrix> diffs;
  for (std::size_t i = 1; i <= d; ++i) {
    PolyMatrix m = PolyMatrix::zero(ctx, basis[i - 1].size(), basis[i].size());
    for (std::size_t c = 0; c < basis[i].size(); ++c) {
      const auto& S = basis[i][c];
      for (std::size_t k = 0; k < S.size(); ++k) {
        std::vector<std::size_t> T = S;
        T.erase(T.begin() + static_cast<std::ptrdiff_t>(k));
        std::size_t r = index_of(i - 1, T);
        Polynomial term = elements[S[k]];
        if (k % 2 == 1) term = -term;
        m.at(r, c) = m.at(r, c) + term;
      }
    }
    diffs.push_back(std::move(m));
  }
  return FreeComplex(std::move(ring), 0, std::move(shifts), std::move(diffs));
}

// (Sigma^n X)_i = X_{i-n}, differentials scaled by (-1)^n.
inline FreeComplex shift(const FreeComplex& x, long long n) {
  if (x.is_empty()) return x;
  std::vector<std::vector<long long>> shifts;
  std::vector<PolyMatrix> diffs;
  const PolyContextPtr& ctx = x.ring()->context();
  int s = sign_pow(n);
  for (long long i = x.lo(); i <= x.hi(); ++i) shifts.push_back(x.twists(i));
  for (long long i = x.lo() + 1; i <= x.hi(); ++i) {
    PolyMatrix m = x.differential(i);
    if (s < 0)
      for (Polynomial& f : m.data) f = -f;
    diffs.push_back(std::move(m));
  }
  return FreeComplex(x.ring(), x.lo() + n, std::move(shifts), std::move(diffs));
}

// Tensor product with the Koszul sign: on summand (i,j) of degree i+j the
// differential is d^X (x) id + (-1)^i id (x) d^Y. Summands ordered
// lexicographically in (i, j); within a summand, basis pairs (a, b) in
// row-major order.
inline FreeComplex tensor(const FreeComplex& x, const FreeComplex& y) {
  check_same_ring(x.ring(), y.ring());
  if (x.is_empty() || y.is_empty()) return FreeComplex::empty(x.ring());
  const PolyContextPtr& ctx = x.ring()->context();
  long long lo = x.lo() + y.lo();
  long long hi = x.hi() + y.hi();

  // offset of summand (i,j) within degree n = i + j
  std::map<std::pair<long long, long long>, std::size_t> offset;
  std::vector<std::vector<long long>> shifts;
  for (long long n = lo; n <= hi; ++n) {
    std::vector<long long> tw;
    for (long long i = x.lo(); i <= x.hi(); ++i) {
      long long j = n - i;
      if (j < y.lo() || j > y.hi()) continue;
      if (x.rank(i) == 0 || y.rank(j) == 0) continue;
      offset[{i, j}] = tw.size();
      for (std::size_t a = 0; a < x.rank(i); ++a)
        for (std::size_t b = 0; b < y.rank(j); ++b)
          tw.push_back(x.twists(i)[a] + y.twists(j)[b]);
    }
    shifts.push_back(std::move(tw));
  }

  std::vector<PolyMatrix> diffs;
  for (long long n = lo + 1; n <= hi; ++n) {
    std::size_t rows = shifts[static_cast<std::size_t>(n - 1 - lo)].size();
    std::size_t cols = shifts[static_cast<std::size_t>(n - lo)].size();
    PolyMatrix m = PolyMatrix::zero(ctx, rows, cols);
    for (long long i = x.lo(); i <= x.hi(); ++i) {
      long long j = n - i;
      if (j < y.lo() || j > y.hi()) continue;
      if (x.rank(i) == 0 || y.rank(j) == 0) continue;
      std::size_t coff = offset.at({i, j});
      std::size_t ry = y.rank(j);
      // block d^X (x) id into summand (i-1, j)
      if (i > x.lo() && x.rank(i - 1) > 0 && offset.contains({i - 1, j})) {
        std::size_t roff = offset.at({i - 1, j});
        const PolyMatrix& dx = x.differential(i);
        for (std::size_t a2 = 0; a2 < x.rank(i - 1); ++a2)
          for (std::size_t a = 0; a < x.rank(i); ++a) {
            if (dx.at(a2, a).is_zero()) continue;
            for (std::size_t b = 0; b < ry; ++b)
              m.at(roff + a2 * ry + b, coff + a * ry + b) = dx.at(a2, a);
          }
      }
      // block (-1)^i id (x) d^Y into summand (i, j-1)
      if (j > y.lo() && y.rank(j - 1) > 0 && offset.contains({i, j - 1})) {
        std::size_t roff = offset.at({i, j - 1});
        const PolyMatrix& dy = y.differential(j);
        int s = sign_pow(i);
        std::size_t ry2 = y.rank(j - 1);
        for (std::size_t a = 0; a < x.rank(i); ++a)
          for (std::size_t b2 = 0; b2 < ry2; ++b2)
            for (std::size_t b = 0; b < ry; ++b) {
              if (dy.at(b2, b).is_zero()) continue;
              Polynomial e = dy.at(b2, b);
              if (s < 0) e = -e;
              m.at(roff + a * ry2 + b2, coff + a * ry + b) = e;
            }
      }
    }
    diffs.push_back(std::move(m));
  }
  return FreeComplex(x.ring(), lo, std::move(shifts), std::move(diffs));
}

// Frobenius functor F^e on a free complex: same ranks, every differential
// entry raised to the p^e-th power (the entrywise twist), grading twists
// scaled by p^e. This is - (x) f^e R computed on free presentations.
inline FreeComplex frobenius(const FreeComplex& x, unsigned e) {
  if (e == 0 || x.is_empty()) return x;
  long long p = static_cast<long long>(x.ring()->p());
  long long q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > kMaxExponent / p) throw capacity_error("p^e overflow in Frobenius");
    q *= p;
  }
  std::vector<std::vector<long long>> shifts;
  for (long long i = x.lo(); i <= x.hi(); ++i) {
    std::vector<long long> tw = x.twists(i);
    for (long long& t : tw) {
      if (t > kMaxExponent / q || t < -(kMaxExponent / q))
        throw capacity_error("grading twist overflow in Frobenius");
      t *= q;
    }
    shifts.push_back(std::move(tw));
  }
  std::vector<PolyMatrix> diffs;
  for (long long i = x.lo() + 1; i <= x.hi(); ++i) {
    PolyMatrix m = x.differential(i);
    for (Polynomial& f : m.data) f = f.twist(e);
    diffs.push_back(std::move(m));
  }
  return FreeComplex(x.ring(), x.lo(), std::move(shifts), std::move(diffs));
}

inline FreeComplex direct_sum(const FreeComplex& x, const FreeComplex& y) {
  check_same_ring(x.ring(), y.ring());
  if (x.is_empty()) return y;
  if (y.is_empty()) return x;
  const PolyContextPtr& ctx = x.ring()->context();
  long long lo = std::min(x.lo(), y.lo());
  long long hi = std::max(x.hi(), y.hi());
  std::vector<std::vector<long long>> shifts;
  for (long long i = lo; i <= hi; ++i) {
    std::vector<long long> tw;
    if (x.rank(i) > 0)
      tw.insert(tw.end(), x.twists(i).begin(), x.twists(i).end());
    if (y.rank(i) > 0)
      tw.insert(tw.end(), y.twists(i).begin(), y.twists(i).end());
    shifts.push_back(std::move(tw));
  }
  std::vector<PolyMatrix> diffs;
  for (long long i = lo + 1; i <= hi; ++i) {
    std::size_t rows = x.rank(i - 1) + y.rank(i - 1);
    std::size_t cols = x.rank(i) + y.rank(i);
    PolyMatrix m = PolyMatrix::zero(ctx, rows, cols);
    if (x.rank(i) > 0 && x.rank(i - 1) > 0) {
      const PolyMatrix& dx = x.differential(i);
      for (std::size_t r = 0; r < dx.rows; ++r)
        for (std::size_t c = 0; c < dx.cols; ++c) m.at(r, c) = dx.at(r, c);
    }
    if (y.rank(i) > 0 && y.rank(i - 1) > 0) {
      const PolyMatrix& dy = y.differential(i);
      for (std::size_t r = 0; r < dy.rows; ++r)
        for (std::size_t c = 0; c < dy.cols; ++c)
          m.at(x.rank(i - 1) + r, x.rank(i) + c) = dy.at(r, c);
    }
    diffs.push_back(std::move(m));
  }
  return FreeComplex(x.ring(), lo, std::move(shifts), std::move(diffs));
}

// ---------------------------------------------------------------------------
// Homology

// H_i(X) = ker d_i / im d_{i+1} as a presented module: generators are the
// kernel's syzygy generators, relations are their own syzygies together
// with the lifted columns of d_{i+1}. The lift division must be exact.
inline PresentedModule homology(const FreeComplex& x, long long i) {
  x.require_valid();
  const QuotientRingPtr& ring = x.ring();
  const PolyContextPtr& ctx = ring->context();
  if (x.is_empty() || i < x.lo() || i > x.hi())
    return PresentedModule(ring, {}, {});
  std::vector<Polynomial> ideal = ring->ideal_gb_polys();

  std::size_t ri = x.rank(i);
  std::vector<FreeModuleVector> kernel_gens;
  if (i == x.lo()) {
    for (std::size_t j = 0; j < ri; ++j) {
      FreeModuleVector v = FreeModuleVector::zero(ctx, ri);
      v.entries[j] = Polynomial::constant(ctx, 1);
      kernel_gens.push_back(std::move(v));
    }
  } else {
    const PolyMatrix& di = x.differential(i);
    kernel_gens =
        syzygy_generators(ctx, di.rows, di.columns(ctx), ideal);
  }
  if (kernel_gens.empty()) return PresentedModule(ring, {}, {});

  std::vector<long long> gen_degrees;
  for (const FreeModuleVector& k : kernel_gens) {
    auto d = k.homogeneous_degree(x.twists(i));
    if (!d) throw structural_error("internal: inhomogeneous kernel generator");
    gen_degrees.push_back(*d);
  }

  std::vector<FreeModuleVector> relations =
      syzygy_generators(ctx, ri, kernel_gens, ideal);
  if (i < x.hi()) {
    ModuleLifter lifter(ctx, ri, kernel_gens, ideal);
    const PolyMatrix& dnext = x.differential(i + 1);
    for (std::size_t c = 0; c < dnext.cols; ++c) {
      auto a = lifter.lift(dnext.column(ctx, c));
      if (!a)
        throw structural_error(
            "internal: boundary column is not in the kernel span");
      FreeModuleVector rel;
      rel.ctx = ctx;
      rel.entries = std::move(*a);
      relations.push_back(std::move(rel));
    }
  }
  return PresentedModule(ring, std::move(gen_degrees), std::move(relations));
}

// chi(X) = sum (-1)^i l(H_i(X)); defined only when every homology module
// has finite length.
inline long long euler_characteristic(const FreeComplex& x) {
  x.require_valid();
  long long chi = 0;
  if (x.is_empty()) return 0;
  for (long long i = x.lo(); i <= x.hi(); ++i) {
    PresentedModule h = homology(x, i);
    ModuleLength len = h.length();
    if (!len.is_finite())
      throw incompatible_error("homology in degree " + std::to_string(i) +
                               " has infinite length; complex is not supported "
                               "only at the maximal ideal");
    chi += sign_pow(i) * len.value();
  }
  return chi;
}

// dim of the support of X: the largest homology support dimension, -1 when
// X is exact.
inline int support_dim(const FreeComplex& x) {
  x.require_valid();
  int best = -1;
  if (x.is_empty()) return -1;
  for (long long i = x.lo(); i <= x.hi(); ++i)
    best = std::max(best, homology(x, i).dim());
  return best;
}

inline int codim(const FreeComplex& x) {
  return x.ring()->dim() - support_dim(x);
}

}  // namespace frobmult

#endif
