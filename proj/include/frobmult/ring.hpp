#ifndef FROBMULT_RING_HPP
#define FROBMULT_RING_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobmult/errors.hpp"
#include "frobmult/groebner.hpp"
#include "frobmult/parse.hpp"
#include "frobmult/polynomial.hpp"

namespace frobmult {

class QuotientRing;
using QuotientRingPtr = std::shared_ptr<const QuotientRing>;

// R = F_p[x_1..x_n] / I for a homogeneous ideal I, with a stored reduced
// Groebner basis of I and cached Krull dimension. The graded maximal ideal
// (x_1..x_n) plays the role of the closed point throughout.
class QuotientRing {
 public:
  static QuotientRingPtr make(std::uint64_t p, std::vector<std::string> vars,
                              std::vector<Polynomial> ideal_gens) {
    auto ring = build(p, std::move(vars), std::move(ideal_gens));
    if (!ring) throw structural_error("unit ideal: the quotient ring is zero");
    return ring;
  }

  static QuotientRingPtr make(std::uint64_t p, std::vector<std::string> vars,
                              const std::vector<std::string>& ideal_texts) {
    auto ctx = std::make_shared<const PolyContext>(p, vars.size());
    PolyParser parser(ctx, vars);
    std::vector<Polynomial> gens;
    for (const std::string& s : ideal_texts) gens.push_back(parser.parse(s));
    // reuse the parser's context so all polynomials share one object
    auto ring = build_with_ctx(ctx, std::move(vars), std::move(gens));
    if (!ring) throw structural_error("unit ideal: the quotient ring is zero");
    return ring;
  }

  // Quotient further by J; nullopt when I + J is the unit ideal (the zero
  // ring), which callers treat as empty support.
  std::optional<QuotientRingPtr> quotient_by(
      const std::vector<Polynomial>& extra) const {
    std::vector<Polynomial> gens = ideal_gens_;
    for (const Polynomial& g : extra) {
      check_same_context(ctx_, g.context());
      if (!g.is_homogeneous())
        throw structural_error("inhomogeneous ideal generator");
      gens.push_back(g);
    }
    auto ring = build_with_ctx(ctx_, vars_, std::move(gens));
    if (!ring) return std::nullopt;
    return ring;
  }

  const PolyContextPtr& context() const { return ctx_; }
  std::uint64_t p() const { return ctx_->field.p(); }
  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<Polynomial>& ideal() const { return ideal_gens_; }
  const std::vector<FreeModuleVector>& ideal_gb() const { return ideal_gb_; }
  int dim() const { return dim_; }

  std::vector<Polynomial> ideal_gb_polys() const {
    std::vector<Polynomial> out;
    for (const FreeModuleVector& v : ideal_gb_) out.push_back(v.entries[0]);
    return out;
  }

  Polynomial parse(const std::string& text) const {
    return PolyParser(ctx_, vars_).parse(text);
  }

  // Canonical representative modulo I.
  Polynomial reduce(const Polynomial& f) const {
    FreeModuleVector v;
    v.ctx = ctx_;
    v.entries = {f};
    return normal_form(v, ideal_gb_).entries[0];
  }

  bool is_zero_in_ring(const Polynomial& f) const { return reduce(f).is_zero(); }

  bool same_ring(const QuotientRing& o) const {
    return p() == o.p() && vars_ == o.vars_ &&
           ideal_gb_polys_equal(o);
  }

 private:
  static QuotientRingPtr build(std::uint64_t p, std::vector<std::string> vars,
                               std::vector<Polynomial> gens) {
    auto ctx = std::make_shared<const PolyContext>(p, vars.size());
    // rebuild generators on the shared context if they came from elsewhere
    return build_with_ctx(ctx, std::move(vars), std::move(gens));
  }

  static QuotientRingPtr build_with_ctx(PolyContextPtr ctx,
                                        std::vector<std::string> vars,
                                        std::vector<Polynomial> gens) {
    auto ring = std::make_shared<QuotientRing>();
    ring->ctx_ = ctx;
    ring->vars_ = std::move(vars);
    for (Polynomial& g : gens) {
      check_same_context(ctx, g.context());
      if (!g.is_homogeneous())
        throw structural_error("inhomogeneous ideal generator");
      if (!g.is_zero()) ring->ideal_gens_.push_back(std::move(g));
    }
    std::vector<FreeModuleVector> vecs;
    for (const Polynomial& g : ring->ideal_gens_) {
      FreeModuleVector v;
      v.ctx = ctx;
      v.entries = {g};
      vecs.push_back(std::move(v));
    }
    ring->ideal_gb_ = buchberger(std::move(vecs));
    ring->dim_ = krull_dimension(ring->ideal_gb_, ring->vars_.size());
    if (ring->dim_ == -1 && !ring->ideal_gb_.empty() &&
        module_lead(ring->ideal_gb_.front()).mono.degree() == 0)
      return nullptr;  // unit ideal
    return ring;
  }

  bool ideal_gb_polys_equal(const QuotientRing& o) const {
    if (ideal_gb_.size() != o.ideal_gb_.size()) return false;
    for (std::size_t i = 0; i < ideal_gb_.size(); ++i)
      if (!(ideal_gb_[i].entries[0] == o.ideal_gb_[i].entries[0])) return false;
    return true;
  }

 public:
  QuotientRing() = default;  // use the factories

 private:
  PolyContextPtr ctx_;
  std::vector<std::string> vars_;
  std::vector<Polynomial> ideal_gens_;
  std::vector<FreeModuleVector> ideal_gb_;
  int dim_ = 0;
};

inline void check_same_ring(const QuotientRingPtr& a, const QuotientRingPtr& b) {
  if (a.get() != b.get() && !a->same_ring(*b))
    throw structural_error("mixed quotient rings");
}

// Finite or infinite module length. INFINITE is a value, not an error;
// Euler characteristics are only defined when every length is finite.
class ModuleLength {
 public:
  static ModuleLength infinite() { return ModuleLength(); }
  static ModuleLength finite(long long v) {
    ModuleLength l;
    l.value_ = v;
    return l;
  }
  bool is_finite() const { return value_.has_value(); }
  long long value() const {
    if (!value_) throw incompatible_error("length is infinite");
    return *value_;
  }
  bool operator==(const ModuleLength&) const = default;

 private:
  std::optional<long long> value_;
};

// Finitely presented graded R-module M = coker(presentation), given by the
// generator degrees (row shifts) and the relation columns. Relations are
// kept in normal form with respect to I so equal presentations compare
// structurally.
class PresentedModule {
 public:
  PresentedModule(QuotientRingPtr ring, std::vector<long long> gen_degrees,
                  std::vector<FreeModuleVector> relations)
      : ring_(std::move(ring)),
        gen_degrees_(std::move(gen_degrees)),
        relations_(std::move(relations)) {
    const PolyContextPtr& ctx = ring_->context();
    std::vector<FreeModuleVector> ideal_rows;
    for (FreeModuleVector& rel : relations_) {
      if (rel.rank() != gen_degrees_.size())
        throw structural_error("presentation rank mismatch");
      check_same_context(ctx, rel.ctx);
      if (!rel.homogeneous_degree(gen_degrees_))
        throw structural_error("inhomogeneous presentation column");
      rel = reduce_mod_ideal(rel);
    }
    std::erase_if(relations_, [](const FreeModuleVector& v) { return v.is_zero(); });
    std::vector<FreeModuleVector> gens = relations_;
    for (const Polynomial& g : ring_->ideal())
      for (std::size_t j = 0; j < rank(); ++j) {
        FreeModuleVector v = FreeModuleVector::zero(ring_->context(), rank());
        v.entries[j] = g;
        gens.push_back(std::move(v));
      }
    combined_gb_ = buchberger(std::move(gens));
  }

  // R itself, or R/J for a homogeneous ideal J (the probing family).
  static PresentedModule cyclic(QuotientRingPtr ring,
                                std::vector<Polynomial> quotient_gens) {
    std::vector<FreeModuleVector> rels;
    for (Polynomial& g : quotient_gens) {
      if (!g.is_homogeneous())
        throw structural_error("inhomogeneous quotient generator");
      FreeModuleVector v;
      v.ctx = ring->context();
      v.entries = {std::move(g)};
      rels.push_back(std::move(v));
    }
    return PresentedModule(std::move(ring), {0}, std::move(rels));
  }

  static PresentedModule free_rank_one(QuotientRingPtr ring) {
    return cyclic(std::move(ring), {});
  }

  const QuotientRingPtr& ring() const { return ring_; }
  std::size_t rank() const { return gen_degrees_.size(); }
  const std::vector<long long>& generator_degrees() const { return gen_degrees_; }
  const std::vector<FreeModuleVector>& relations() const { return relations_; }

  bool is_cyclic() const { return rank() == 1 && gen_degrees_[0] == 0; }

  // For a cyclic module R/J: the generators of J.
  std::vector<Polynomial> cyclic_ideal() const {
    if (rank() != 1) throw structural_error("module is not cyclic");
    std::vector<Polynomial> out;
    for (const FreeModuleVector& v : relations_) out.push_back(v.entries[0]);
    return out;
  }

  // Groebner basis of relations + I * (component basis), the combined
  // submodule whose quotient is M as an S-module.
  const std::vector<FreeModuleVector>& combined_gb() const { return combined_gb_; }

  // dim Supp M, computed from the leading-term module of the combined
  // submodule; -1 for the zero module.
  int dim() const {
    return quotient_module_dimension(combined_gb(), rank(), ring_->nvars());
  }

  ModuleLength length() const {
    auto n = standard_monomial_count(combined_gb(), rank(), ring_->nvars());
    return n ? ModuleLength::finite(*n) : ModuleLength::infinite();
  }

  bool is_zero() const {
    for (std::size_t j = 0; j < rank(); ++j) {
      FreeModuleVector e = FreeModuleVector::zero(ring_->context(), rank());
      e.entries[j] = Polynomial::constant(ring_->context(), 1);
      if (!in_submodule(e, combined_gb())) return false;
    }
    return true;
  }

 private:
  FreeModuleVector reduce_mod_ideal(const FreeModuleVector& v) const {
    std::vector<FreeModuleVector> ideal_block;
    for (const FreeModuleVector& g : ring_->ideal_gb())
      for (std::size_t j = 0; j < v.rank(); ++j) {
        FreeModuleVector w = FreeModuleVector::zero(ring_->context(), v.rank());
        w.entries[j] = g.entries[0];
        ideal_block.push_back(std::move(w));
      }
    return normal_form(v, ideal_block);
  }

  QuotientRingPtr ring_;
  std::vector<long long> gen_degrees_;
  std::vector<FreeModuleVector> relations_;
  std::vector<FreeModuleVector> combined_gb_;
};

}  // namespace frobmult

#endif
