// Batch front end: reads a problem file, runs one command, prints JSON or an
// aligned table. Exit codes: 0 success, 2 parse error, 3 incompatibility,
// 4 capacity.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "frobmult/problem.hpp"

namespace {

using frobmult::ordered_json;

std::string pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

void print_row(std::ostream& os, const std::vector<std::string>& cells,
               const std::vector<std::size_t>& widths) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    os << (i ? "  " : "") << pad(cells[i], widths[i]);
  os << "\n";
}

// c_e row over e, components row underneath: the human-readable rendering of
// the chi table and its eigencomponent decomposition.
void print_series_table(std::ostream& os, const ordered_json& table,
                        const ordered_json* components) {
  std::vector<std::string> header{"e"}, values{"c_e"}, comps{"a_i"};
  for (std::size_t e = 0; e < table["values"].size(); ++e) {
    header.push_back(std::to_string(e));
    values.push_back(table["values"][e].dump());
  }
  if (components)
    for (const auto& a : *components) comps.push_back(a.get<std::string>());
  std::vector<std::size_t> widths(header.size(), 0);
  for (std::size_t i = 0; i < header.size(); ++i) {
    widths[i] = std::max(header[i].size(), values[i].size());
    if (components && i < comps.size())
      widths[i] = std::max(widths[i], comps[i].size());
  }
  print_row(os, header, widths);
  print_row(os, values, widths);
  if (components) print_row(os, comps, widths);
}

void print_table(std::ostream& os, const std::string& command,
                 const ordered_json& out) {
  if (out.contains("error")) {
    os << "error (" << out["error"]["code"].get<std::string>()
       << "): " << out["error"]["message"].get<std::string>() << "\n";
    return;
  }
  if (command == "chi-series") {
    print_series_table(os, out["series"], nullptr);
    return;
  }
  if (command == "dutta" || command == "decompose") {
    print_series_table(os, out["table"], &out["components"]);
    if (command == "dutta")
      os << "dutta = " << out["dutta"].get<std::string>() << "  (u = "
         << out["u"].dump() << ", t = " << out["t"].dump() << ")\n";
    return;
  }
  for (const auto& [key, value] : out.items()) {
    if (key == "schema") continue;
    os << key << " = " << (value.is_string() ? value.get<std::string>()
                                             : value.dump())
       << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact intersection multiplicities, Frobenius-twisted Euler "
               "characteristic series, and vanishing tests over graded "
               "quotients of F_p[x_1..x_n]"};
  app.require_subcommand(1);

  std::string file, x_name, y_name, u_text = "auto", format = "json";
  long long e_value = 0;
  long long emax_value = -1;
  bool have_e = false, have_u = false;
  std::vector<std::string> probe_names;

  std::vector<std::string> commands = {"validate",  "homology", "chi",
                                       "chi-series", "dutta",    "decompose",
                                       "vdim",      "fixed-point", "numvan"};
  for (const std::string& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("file", file, "problem file")->required();
    sub->add_option("--format", format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
    if (name != "validate") sub->add_option("--X", x_name, "complex name");
    if (name == "chi" || name == "chi-series" || name == "dutta" ||
        name == "decompose")
      sub->add_option("--Y", y_name, "probe module (or complex) name");
    if (name == "homology")
      sub->add_option("--e", e_value, "homological degree")
          ->each([&](const std::string&) { have_e = true; });
    if (name == "chi-series" || name == "dutta" || name == "decompose" ||
        name == "vdim" || name == "fixed-point" || name == "numvan")
      sub->add_option("--emax", emax_value, "largest Frobenius exponent e");
    if (name == "dutta" || name == "decompose")
      sub->add_option("--u", u_text, "eigencomponent count minus one, or auto")
          ->each([&](const std::string&) { have_u = true; });
    if (name == "vdim" || name == "fixed-point")
      sub->add_option("--probes", probe_names, "probe module names");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  std::ifstream in(file);
  if (!in) {
    std::cerr << "cannot open '" << file << "'\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  frobmult::RunOptions opts;
  opts.x = x_name;
  opts.y = y_name;
  if (have_e) opts.e = e_value;
  if (emax_value >= 0) opts.e_max = static_cast<unsigned>(emax_value);
  opts.probes = probe_names;
  if (u_text == "auto") {
    opts.u_forced_auto = have_u;
  } else {
    try {
      long long u = std::stoll(u_text);
      if (u < 0) throw std::invalid_argument("negative");
      opts.u = static_cast<unsigned>(u);
    } catch (const std::exception&) {
      std::cerr << "--u must be a non-negative integer or auto\n";
      return 2;
    }
  }

  auto [out, code] = frobmult::run_safe(command, buffer.str(), opts);
  if (format == "table")
    print_table(std::cout, command, out);
  else
    std::cout << out.dump(2) << "\n";
  return code;
}
