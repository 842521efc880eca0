// Problem files and the batch runner: a sectioned plain-text format that
// declares one ring, named complexes and probe modules, plus options, and a
// command dispatcher that renders exact results as deterministic JSON.
#ifndef FROBMULT_PROBLEM_HPP
#define FROBMULT_PROBLEM_HPP

#include <json.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "frobmult/multiplicity.hpp"

namespace frobmult {

using ordered_json = nlohmann::ordered_json;

struct ProblemOptions {
  std::optional<unsigned> e_max;
  std::optional<unsigned> u;  // unset means AUTO
  std::vector<std::string> probes;
};

struct Problem {
  QuotientRingPtr ring;
  std::vector<std::string> varnames;
  std::vector<std::pair<std::string, FreeComplex>> complexes;
  std::vector<std::pair<std::string, PresentedModule>> modules;  // "R" built in
  ProblemOptions options;

  const FreeComplex* find_complex(const std::string& name) const {
    for (const auto& [n, c] : complexes)
      if (n == name) return &c;
    return nullptr;
  }
  const PresentedModule* find_module(const std::string& name) const {
    for (const auto& [n, m] : modules)
      if (n == name) return &m;
    return nullptr;
  }
};

namespace detail {

struct RawSection {
  std::string kind;  // "ring", "complex", "module", "options"
  std::string name;  // for complex/module sections
  long long line = 0;
  std::vector<std::pair<std::string, std::pair<std::string, long long>>> entries;

  const std::pair<std::string, long long>* find(const std::string& key) const {
    for (const auto& [k, v] : entries)
      if (k == key) return &v;
    return nullptr;
  }
};

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<RawSection> split_sections(const std::string& text) {
  std::vector<RawSection> sections;
  std::istringstream in(text);
  std::string raw;
  long long line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw parse_error("unterminated section header", line, 1);
      std::string inner = trim(s.substr(1, s.size() - 2));
      RawSection sec;
      sec.line = line;
      std::size_t sp = inner.find_first_of(" \t");
      if (sp == std::string::npos) {
        sec.kind = inner;
      } else {
        sec.kind = inner.substr(0, sp);
        sec.name = trim(inner.substr(sp));
      }
      if (sec.kind != "ring" && sec.kind != "complex" && sec.kind != "module" &&
          sec.kind != "options")
        throw parse_error("unknown section kind '" + sec.kind + "'", line, 2);
      if ((sec.kind == "complex" || sec.kind == "module") && sec.name.empty())
        throw parse_error("section '" + sec.kind + "' needs a name", line, 2);
      if ((sec.kind == "ring" || sec.kind == "options") && !sec.name.empty())
        throw parse_error("section '" + sec.kind + "' takes no name", line, 2);
      sections.push_back(std::move(sec));
      continue;
    }
    if (sections.empty())
      throw parse_error("content before the first section header", line, 1);
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw parse_error("expected 'key = value'", line, 1);
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw parse_error("empty key", line, 1);
    if (value.empty()) throw parse_error("empty value for '" + key + "'", line, 1);
    sections.back().entries.emplace_back(key, std::make_pair(value, line));
  }
  return sections;
}

// Values are JSON scalars/arrays, except that bare words (auto, names) are
// accepted and read as strings.
inline ordered_json parse_value(const std::string& text, long long line) {
  ordered_json v = ordered_json::parse(text, nullptr, false);
  if (!v.is_discarded()) return v;
  for (char c : text)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
      throw parse_error("malformed value '" + text + "'", line, 1);
  return ordered_json(text);
}

inline std::vector<std::string> string_list(const ordered_json& v,
                                            const std::string& key,
                                            long long line) {
  if (!v.is_array())
    throw parse_error("'" + key + "' must be a list of strings", line, 1);
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string())
      throw parse_error("'" + key + "' must be a list of strings", line, 1);
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline long long int_value(const ordered_json& v, const std::string& key,
                           long long line) {
  if (!v.is_number_integer())
    throw parse_error("'" + key + "' must be an integer", line, 1);
  return v.get<long long>();
}

inline void check_known_keys(const RawSection& sec,
                             std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : sec.entries) {
    bool known = false;
    for (const char* a : allowed)
      if (k == a) known = true;
    if (!known && !(sec.kind == "complex" && k.size() >= 2 && k[0] == 'd'))
      throw parse_error("unknown key '" + k + "' in [" + sec.kind + "] section",
                        v.second, 1);
  }
}

inline Polynomial parse_poly(const Problem& problem, const std::string& text,
                             long long line) {
  try {
    return problem.ring->parse(text);
  } catch (const parse_error& e) {
    throw parse_error(std::string(e.what()) + " in '" + text + "'", line, e.col);
  }
}

inline FreeComplex build_complex(const Problem& problem, const RawSection& sec) {
  auto require_complex = [&](const std::string& name,
                             long long line) -> const FreeComplex& {
    const FreeComplex* c = problem.find_complex(name);
    if (!c)
      throw parse_error("undefined complex '" + name + "'", line, 1);
    return *c;
  };
  check_known_keys(sec, {"koszul", "tensor", "shift", "frobenius", "direct_sum",
                         "lo", "shifts"});

  if (const auto* v = sec.find("koszul")) {
    std::vector<Polynomial> elems;
    for (const std::string& s :
         string_list(parse_value(v->first, v->second), "koszul", v->second))
      elems.push_back(parse_poly(problem, s, v->second));
    return koszul(problem.ring, elems);
  }
  if (const auto* v = sec.find("tensor")) {
    auto args = parse_value(v->first, v->second);
    if (!args.is_array() || args.size() != 2 || !args[0].is_string() ||
        !args[1].is_string())
      throw parse_error("tensor takes two complex names", v->second, 1);
    return tensor(require_complex(args[0], v->second),
                  require_complex(args[1], v->second));
  }
  if (const auto* v = sec.find("direct_sum")) {
    auto args = parse_value(v->first, v->second);
    if (!args.is_array() || args.size() != 2 || !args[0].is_string() ||
        !args[1].is_string())
      throw parse_error("direct_sum takes two complex names", v->second, 1);
    return direct_sum(require_complex(args[0], v->second),
                      require_complex(args[1], v->second));
  }
  if (const auto* v = sec.find("shift")) {
    auto args = parse_value(v->first, v->second);
    if (!args.is_array() || args.size() != 2 || !args[0].is_string() ||
        !args[1].is_number_integer())
      throw parse_error("shift takes a complex name and an integer", v->second, 1);
    return shift(require_complex(args[0], v->second), args[1].get<long long>());
  }
  if (const auto* v = sec.find("frobenius")) {
    auto args = parse_value(v->first, v->second);
    if (!args.is_array() || args.size() != 2 || !args[0].is_string() ||
        !args[1].is_number_integer() || args[1].get<long long>() < 0)
      throw parse_error("frobenius takes a complex name and e >= 0", v->second, 1);
    return frobenius(require_complex(args[0], v->second),
                     static_cast<unsigned>(args[1].get<long long>()));
  }

  // raw form: shifts = [[..], ..] and d1..dk as polynomial-string grids
  const auto* sv = sec.find("shifts");
  if (!sv)
    throw parse_error(
        "complex section needs a builtin (koszul/tensor/shift/frobenius/"
        "direct_sum) or a raw 'shifts' + differential grid",
        sec.line, 1);
  auto shifts_json = parse_value(sv->first, sv->second);
  if (!shifts_json.is_array() || shifts_json.empty())
    throw parse_error("'shifts' must be a non-empty list of integer lists",
                      sv->second, 1);
  std::vector<std::vector<long long>> shifts;
  for (const auto& row : shifts_json) {
    if (!row.is_array())
      throw parse_error("'shifts' must be a list of integer lists", sv->second, 1);
    std::vector<long long> r;
    for (const auto& e : row) r.push_back(int_value(e, "shifts", sv->second));
    shifts.push_back(std::move(r));
  }
  long long lo = 0;
  if (const auto* lv = sec.find("lo"))
    lo = int_value(parse_value(lv->first, lv->second), "lo", lv->second);

  std::vector<PolyMatrix> diffs;
  for (std::size_t k = 1; k < shifts.size(); ++k) {
    const auto* dv = sec.find("d" + std::to_string(k));
    if (!dv)
      throw parse_error("missing differential 'd" + std::to_string(k) + "'",
                        sec.line, 1);
    auto grid = parse_value(dv->first, dv->second);
    std::size_t rows = shifts[k - 1].size(), cols = shifts[k].size();
    if (!grid.is_array() || grid.size() != rows)
      throw parse_error("'d" + std::to_string(k) + "' must have " +
                            std::to_string(rows) + " rows",
                        dv->second, 1);
    PolyMatrix m = PolyMatrix::zero(problem.ring->context(), rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (!grid[r].is_array() || grid[r].size() != cols)
        throw parse_error("'d" + std::to_string(k) + "' row " +
                              std::to_string(r) + " must have " +
                              std::to_string(cols) + " entries",
                          dv->second, 1);
      for (std::size_t c = 0; c < cols; ++c) {
        if (!grid[r][c].is_string())
          throw parse_error("differential entries must be polynomial strings",
                            dv->second, 1);
        Polynomial entry =
            parse_poly(problem, grid[r][c].get<std::string>(), dv->second);
        if (!entry.is_homogeneous())
          throw parse_error("inhomogeneous entry '" +
                                grid[r][c].get<std::string>() + "' in d" +
                                std::to_string(k) + " at row " +
                                std::to_string(r) + ", column " +
                                std::to_string(c),
                            dv->second, 1);
        m.at(r, c) = std::move(entry);
      }
    }
    diffs.push_back(std::move(m));
  }
  return FreeComplex(problem.ring, lo, shifts, diffs);
}

}  // namespace detail

inline Problem parse_problem(const std::string& text) {
  std::vector<detail::RawSection> sections = detail::split_sections(text);
  Problem problem;

  // ring first, exactly once
  const detail::RawSection* ring_sec = nullptr;
  for (const auto& s : sections)
    if (s.kind == "ring") {
      if (ring_sec)
        throw parse_error("duplicate [ring] section", s.line, 1);
      ring_sec = &s;
    }
  if (!ring_sec) throw parse_error("missing [ring] section", 1, 1);
  detail::check_known_keys(*ring_sec, {"p", "vars", "ideal"});
  const auto* pv = ring_sec->find("p");
  const auto* vv = ring_sec->find("vars");
  if (!pv) throw parse_error("[ring] needs 'p'", ring_sec->line, 1);
  if (!vv) throw parse_error("[ring] needs 'vars'", ring_sec->line, 1);
  long long p = detail::int_value(detail::parse_value(pv->first, pv->second),
                                  "p", pv->second);
  if (p < 2) throw parse_error("'p' must be a prime", pv->second, 1);
  problem.varnames = detail::string_list(
      detail::parse_value(vv->first, vv->second), "vars", vv->second);
  std::vector<std::string> ideal_texts;
  if (const auto* iv = ring_sec->find("ideal"))
    ideal_texts = detail::string_list(detail::parse_value(iv->first, iv->second),
                                      "ideal", iv->second);
  try {
    problem.ring = QuotientRing::make(static_cast<std::uint64_t>(p),
                                      problem.varnames, ideal_texts);
  } catch (const parse_error& e) {
    throw parse_error(std::string("[ring] ideal: ") + e.what(), ring_sec->line,
                      1);
  } catch (const structural_error& e) {
    throw parse_error(std::string("[ring]: ") + e.what(), ring_sec->line, 1);
  }
  problem.modules.emplace_back("R", PresentedModule::free_rank_one(problem.ring));

  auto name_used = [&](const std::string& n) {
    return problem.find_complex(n) || problem.find_module(n);
  };
  for (const auto& sec : sections) {
    if (sec.kind == "complex" || sec.kind == "module") {
      if (name_used(sec.name))
        throw parse_error("duplicate name '" + sec.name + "'", sec.line, 1);
    }
    if (sec.kind == "complex") {
      problem.complexes.emplace_back(sec.name, detail::build_complex(problem, sec));
    } else if (sec.kind == "module") {
      detail::check_known_keys(sec, {"generators"});
      const auto* gv = sec.find("generators");
      if (!gv)
        throw parse_error("[module " + sec.name + "] needs 'generators'",
                          sec.line, 1);
      std::vector<Polynomial> gens;
      for (const std::string& s : detail::string_list(
               detail::parse_value(gv->first, gv->second), "generators",
               gv->second))
        gens.push_back(detail::parse_poly(problem, s, gv->second));
      try {
        problem.modules.emplace_back(sec.name,
                                     PresentedModule::cyclic(problem.ring, gens));
      } catch (const structural_error& e) {
        throw parse_error("[module " + sec.name + "]: " + e.what(), gv->second, 1);
      }
    } else if (sec.kind == "options") {
      detail::check_known_keys(sec, {"emax", "u", "probes"});
      if (const auto* ev = sec.find("emax")) {
        long long e = detail::int_value(detail::parse_value(ev->first, ev->second),
                                        "emax", ev->second);
        if (e < 0) throw parse_error("'emax' must be >= 0", ev->second, 1);
        problem.options.e_max = static_cast<unsigned>(e);
      }
      if (const auto* uv = sec.find("u")) {
        ordered_json u = detail::parse_value(uv->first, uv->second);
        if (u.is_string() && u.get<std::string>() == "auto") {
          problem.options.u.reset();
        } else if (u.is_number_integer() && u.get<long long>() >= 0) {
          problem.options.u = static_cast<unsigned>(u.get<long long>());
        } else {
          throw parse_error("'u' must be a non-negative integer or auto",
                            uv->second, 1);
        }
      }
      if (const auto* prv = sec.find("probes")) {
        problem.options.probes = detail::string_list(
            detail::parse_value(prv->first, prv->second), "probes", prv->second);
        for (const std::string& n : problem.options.probes)
          if (!problem.find_module(n))
            throw parse_error("undefined module '" + n + "' in probes",
                              prv->second, 1);
      }
    }
  }
  return problem;
}

// ---------------------------------------------------------------------------
// Command execution

struct RunOptions {
  std::string x;                 // complex name
  std::string y;                 // module (or complex) name
  std::optional<long long> e;    // homology degree / twist exponent
  std::optional<unsigned> e_max;
  std::optional<unsigned> u;     // unset = AUTO
  bool u_forced_auto = false;    // --u auto on the command line
  std::vector<std::string> probes;
};

namespace detail {

inline ordered_json json_int(const mpz_class& z) {
  if (z.fits_slong_p()) return ordered_json(z.get_si());
  return ordered_json(z.get_str());
}

inline std::string json_rat(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline ordered_json json_table(const ChiTable& t) {
  ordered_json values = ordered_json::array();
  for (const mpz_class& v : t.values) values.push_back(json_int(v));
  return ordered_json{{"p", t.p}, {"t", t.t}, {"values", values}};
}

inline ordered_json json_components(const EigenComponents& c) {
  ordered_json comps = ordered_json::array();
  for (const mpq_class& a : c.components) comps.push_back(json_rat(a));
  return comps;
}

inline const FreeComplex& resolve_complex(const Problem& problem,
                                          const std::string& name,
                                          const char* flag) {
  if (name.empty())
    throw structural_error(std::string("missing required flag ") + flag);
  const FreeComplex* c = problem.find_complex(name);
  if (!c)
    throw structural_error("undefined complex '" + name + "'");
  return *c;
}

inline const PresentedModule& resolve_module(const Problem& problem,
                                             const std::string& name) {
  const PresentedModule* m = problem.find_module(name);
  if (!m)
    throw structural_error("undefined module '" + name + "'");
  return *m;
}

inline std::vector<PresentedModule> resolve_probes(const Problem& problem,
                                                   const RunOptions& opts,
                                                   const FreeComplex& x) {
  const std::vector<std::string>& names =
      !opts.probes.empty() ? opts.probes : problem.options.probes;
  if (names.empty()) return default_probes(x);
  std::vector<PresentedModule> out;
  for (const std::string& n : names) out.push_back(resolve_module(problem, n));
  return out;
}

inline std::vector<std::string> probe_names(const Problem& problem,
                                            const RunOptions& opts,
                                            const FreeComplex& x) {
  if (!opts.probes.empty()) return opts.probes;
  if (!problem.options.probes.empty()) return problem.options.probes;
  std::vector<std::string> names;
  std::size_t n = default_probes(x).size();
  for (std::size_t i = 0; i < n; ++i) names.push_back("default" + std::to_string(i));
  return names;
}

}  // namespace detail

inline ordered_json run(const std::string& command, const Problem& problem,
                        const RunOptions& opts) {
  ordered_json out;
  out["schema"] = 1;

  if (command == "validate") {
    ordered_json list = ordered_json::array();
    bool all_ok = true;
    for (const auto& [name, c] : problem.complexes) {
      const ValidationReport& r = c.validation();
      ordered_json entry{{"name", name}, {"ok", r.ok}};
      if (!r.ok) {
        entry["message"] = r.message;
        entry["degree"] = r.degree;
        entry["row"] = r.row;
        entry["col"] = r.col;
        all_ok = false;
      }
      list.push_back(std::move(entry));
    }
    out["ok"] = all_ok;
    out["complexes"] = std::move(list);
    return out;
  }

  const FreeComplex& x = detail::resolve_complex(problem, opts.x, "--X");
  x.require_valid();

  if (command == "homology") {
    auto report = [&](long long i) {
      PresentedModule h = homology(x, i);
      ordered_json entry{{"degree", i}, {"dim", h.dim()}};
      ModuleLength len = h.length();
      entry["finite"] = len.is_finite();
      if (len.is_finite()) entry["length"] = len.value();
      return entry;
    };
    if (opts.e) {
      out["homology"] = report(*opts.e);
    } else {
      ordered_json list = ordered_json::array();
      for (long long i = x.lo(); i <= x.hi(); ++i) list.push_back(report(i));
      out["homology"] = std::move(list);
    }
    return out;
  }

  if (command == "numvan") {
    unsigned e_max = opts.e_max.value_or(problem.options.e_max.value_or(1));
    if (e_max < 1) e_max = 1;
    NumericalVanishingReport rep = numerical_vanishing_check(x, e_max);
    out["pass"] = rep.pass;
    out["lhs"] = detail::json_int(rep.entries[0].lhs);
    out["rhs"] = detail::json_int(rep.entries[0].rhs);
    ordered_json entries = ordered_json::array();
    for (const NumericalVanishingEntry& e : rep.entries)
      entries.push_back({{"e", e.e},
                         {"lhs", detail::json_int(e.lhs)},
                         {"rhs", detail::json_int(e.rhs)},
                         {"pass", e.pass}});
    out["entries"] = std::move(entries);
    return out;
  }

  if (command == "vdim" || command == "fixed-point") {
    std::vector<PresentedModule> probes = detail::resolve_probes(problem, opts, x);
    std::vector<std::string> names = detail::probe_names(problem, opts, x);
    if (command == "vdim") {
      unsigned u_max = foxby_bound(codim(x));
      unsigned e_max =
          opts.e_max.value_or(problem.options.e_max.value_or(u_max + 2));
      VanishingReport rep = vdim_bracket(x, probes, e_max);
      out["t"] = rep.t;
      out["u_max"] = rep.u_max;
      out["u_obs"] = rep.u_obs;
      out["consistent"] = rep.consistent;
      ordered_json fits = ordered_json::array();
      for (std::size_t i = 0; i < rep.fits.size(); ++i)
        fits.push_back({{"probe", names[i]},
                        {"order", rep.fits[i].order},
                        {"table", detail::json_table(rep.fits[i].table)}});
      out["fits"] = std::move(fits);
    } else {
      unsigned e_max = opts.e_max.value_or(problem.options.e_max.value_or(2));
      FixedPointReport rep = fixed_point_check(x, probes, e_max);
      out["pass"] = rep.pass;
      out["t"] = rep.t;
      ordered_json fails = ordered_json::array();
      for (const FixedPointWitness& w : rep.failures)
        fails.push_back({{"probe", names[w.probe_index]},
                         {"e", w.e},
                         {"expected", detail::json_int(w.expected)},
                         {"actual", detail::json_int(w.actual)}});
      out["failures"] = std::move(fails);
      ordered_json tables = ordered_json::array();
      for (std::size_t i = 0; i < rep.tables.size(); ++i)
        tables.push_back(
            {{"probe", names[i]}, {"table", detail::json_table(rep.tables[i])}});
      out["tables"] = std::move(tables);
    }
    return out;
  }

  // two-argument commands; --Y may name a module or another complex
  if (opts.y.empty()) throw structural_error("missing required flag --Y");
  const FreeComplex* yc = problem.find_complex(opts.y);
  if (yc && command == "chi") {
    yc->require_valid();
    out["chi"] = chi(x, *yc);
    return out;
  }
  const PresentedModule& y = detail::resolve_module(problem, opts.y);

  if (command == "chi") {
    out["chi"] = chi(x, y);
    return out;
  }
  if (command == "chi-series") {
    unsigned e_max = opts.e_max.value_or(problem.options.e_max.value_or(4));
    out["series"] = detail::json_table(chi_series(x, y, e_max));
    return out;
  }
  if (command == "dutta" || command == "decompose") {
    std::optional<unsigned> u =
        opts.u_forced_auto ? std::nullopt
                           : (opts.u ? opts.u : problem.options.u);
    unsigned e_max = opts.e_max.value_or(problem.options.e_max.value_or(0));
    DuttaResult r = dutta(x, y, u, e_max);
    if (command == "dutta") {
      out["dutta"] = detail::json_rat(r.value);
      out["u"] = r.u;
      out["components"] = detail::json_components(r.components);
      out["t"] = r.t;
      out["table"] = detail::json_table(r.table);
    } else {
      out["u"] = r.components.u;
      out["t"] = r.components.t;
      out["p"] = r.components.p;
      out["components"] = detail::json_components(r.components);
      out["reconstructs"] = reconstructs_table(r.components, r.table);
      out["table"] = detail::json_table(r.table);
    }
    return out;
  }
  throw structural_error("unknown command '" + command + "'");
}

// Total entry point: never throws, returns the report or a structured error
// object plus the process exit code (0 ok, 2 parse, 3 incompatible, 4 capacity).
inline std::pair<ordered_json, int> run_safe(const std::string& command,
                                             const std::string& problem_text,
                                             const RunOptions& opts) {
  auto error_obj = [](const std::string& code, const std::string& message) {
    return ordered_json{{"schema", 1},
                        {"error", {{"code", code}, {"message", message}}}};
  };
  try {
    Problem problem = parse_problem(problem_text);
    return {run(command, problem, opts), 0};
  } catch (const parse_error& e) {
    ordered_json err = error_obj("parse", e.what());
    err["error"]["line"] = e.line;
    err["error"]["col"] = e.col;
    return {std::move(err), 2};
  } catch (const incompatible_error& e) {
    return {error_obj("incompatible", e.what()), 3};
  } catch (const capacity_error& e) {
    return {error_obj("capacity", e.what()), 4};
  } catch (const structural_error& e) {
    return {error_obj("structural", e.what()), 2};
  }
}

}  // namespace frobmult

#endif
