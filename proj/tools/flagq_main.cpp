// flagq: quandle quotient and FLAG invariant computations for knot diagrams.
//
// Subcommands: parse, quotient, flag, alexander, regress. Reports go to
// stdout as JSON (or text with --format text); diagnostics go to stderr.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "flagq/flag.hpp"
#include "flagq/knot_table.hpp"

using namespace flagq;
using nlohmann::json;

namespace {

struct InputOpts {
  std::string pd, gauss, file, knot;
  std::string data_dir = "data";
};

void add_input_opts(CLI::App* cmd, InputOpts& in) {
  auto* pd = cmd->add_option("--pd", in.pd, "PD code, e.g. PD[X[1,4,2,5],...]");
  auto* ga = cmd->add_option("--gauss", in.gauss, "signed Gauss code, e.g. O1+U2+O3+U1+O2+U3");
  auto* fi = cmd->add_option("--file", in.file, "file containing a PD or Gauss code");
  auto* kn = cmd->add_option("--knot", in.knot, "name from the bundled knot table");
  cmd->add_option("--data", in.data_dir, "data directory (bundled tables)");
  pd->excludes(ga)->excludes(fi)->excludes(kn);
  ga->excludes(fi)->excludes(kn);
  fi->excludes(kn);
}

KnotDiagram resolve_input(const InputOpts& in) {
  if (!in.pd.empty()) return parse_pd(in.pd);
  if (!in.gauss.empty()) return parse_gauss(in.gauss);
  if (!in.file.empty()) {
    std::ifstream f(in.file);
    if (!f) throw std::runtime_error("cannot open " + in.file);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
      text.pop_back();
    size_t start = text.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) throw std::runtime_error("empty input file");
    text = text.substr(start);
    return text.rfind("PD", 0) == 0 ? parse_pd(text) : parse_gauss(text);
  }
  if (!in.knot.empty()) {
    KnotTable table = KnotTable::load(in.data_dir + "/knots.json");
    const KnotTableEntry* e = table.find(in.knot);
    if (!e) throw std::runtime_error("unknown knot: " + in.knot);
    return e->diagram();
  }
  throw std::runtime_error("no input given (use --pd/--gauss/--file/--knot)");
}

MonomialOrder resolve_order(const std::string& spec) {
  auto ord = MonomialOrder::parse(spec);
  if (!ord) throw std::runtime_error("bad --order spec: " + spec);
  return *ord;
}

json flag_report(const KnotDiagram& d, int k, MonomialOrder ord,
                 CrossingConvention conv) {
  auto t0 = std::chrono::steady_clock::now();
  GroebnerBasis basis = flag_invariant(d, k, ord, conv);
  json j;
  if (!d.name.empty()) j["name"] = d.name;
  j["k"] = k;
  j["order"] = ord.to_string();
  j["cardinality"] = basis.elements.size();
  j["basis"] = basis.to_json();
  json elems = json::array();
  for (const auto& p : basis.elements) elems.push_back(p.to_string());
  j["elements"] = elems;
  if (k == 1) {
    Polynomial delta = alexander_poly(d, ord, conv);
    j["alexander"] = delta.to_string();
    if (delta.is_zero()) j["determinant"] = nullptr;
    else j["determinant"] = determinant(d, ord, conv).str();
  }
  j["timing_ms"] = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quandle quotients and FLAG invariants of knot diagrams"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));

  InputOpts parse_in;
  auto* cmd_parse = app.add_subcommand("parse", "parse and validate a diagram");
  add_input_opts(cmd_parse, parse_in);

  InputOpts quot_in;
  std::string axioms_csv;
  bool force_virtual = false;
  int max_gens = 4096;
  std::string strategy = "row-major";
  auto* cmd_quot = app.add_subcommand("quotient", "complete a quandle quotient");
  add_input_opts(cmd_quot, quot_in);
  cmd_quot->add_option("--axioms", axioms_csv,
                       "involutory,abelian,anti-abelian,left-distributive,"
                       "commutative-operator,latin,n-quandle=N");
  cmd_quot->add_flag("--virtual", force_virtual, "use the virtual presentation");
  cmd_quot->add_option("--max-gens", max_gens, "generator budget");
  cmd_quot->add_option("--strategy", strategy, "zero-selection strategy")
      ->check(CLI::IsMember({"row-major", "column-major", "most-constrained-row"}));

  InputOpts flag_in;
  int k = 1;
  std::string order_spec = "sinv>tinv>s>t";
  std::string conv_name = "in";
  auto* cmd_flag = app.add_subcommand("flag", "FLAG_k invariant");
  add_input_opts(cmd_flag, flag_in);
  cmd_flag->add_option("-k,--k", k, "elementary ideal index (default 1)");
  cmd_flag->add_option("--order", order_spec, "monomial precedence, e.g. sinv>tinv>s>t");
  cmd_flag->add_option("--convention", conv_name, "crossing relation convention")
      ->check(CLI::IsMember({"in", "out"}));

  InputOpts alex_in;
  auto* cmd_alex = app.add_subcommand("alexander", "Alexander polynomial and determinant");
  add_input_opts(cmd_alex, alex_in);

  std::string table_path, regress_data = "data";
  auto* cmd_regress = app.add_subcommand("regress", "run the regression table");
  cmd_regress->add_option("--table", table_path, "expectation table (JSON)");
  cmd_regress->add_option("--data", regress_data, "data directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_parse) {
      KnotDiagram d = resolve_input(parse_in);
      if (format == "text") {
        std::cout << d.to_pd() << "\n"
                  << "crossings: " << d.crossings.size() << " ("
                  << d.classical_count() << " classical), components: "
                  << d.components << "\n";
      } else {
        std::cout << d.to_json().dump(2) << "\n";
      }
      return 0;
    }
    if (*cmd_quot) {
      KnotDiagram d = resolve_input(quot_in);
      auto ax = AxiomSet::parse(axioms_csv);
      if (!ax) throw std::runtime_error("unknown axiom name in: " + axioms_csv);
      bool with_virtual = force_virtual || d.virtual_count() > 0;
      PresentationMatrix p = diagram_presentation(d, *ax, with_virtual);
      CompletionBudget budget;
      budget.max_generators = max_gens;
      ZeroStrategy strat = strategy == "column-major"
                               ? ZeroStrategy::ColumnMajor
                               : strategy == "most-constrained-row"
                                     ? ZeroStrategy::MostConstrainedRow
                                     : ZeroStrategy::RowMajor;
      CompletionResult res = complete(p, *ax, budget, strat);
      json stats = {{"generators_introduced", res.stats.generators_introduced},
                    {"merges", res.stats.merges},
                    {"rounds", res.stats.rounds}};
      if (res.status == CompletionResult::Completed) {
        if (format == "text") {
          std::cout << res.quandle->render();
        } else {
          json j = res.quandle->to_json();
          j["status"] = "completed";
          j["stats"] = stats;
          std::cout << j.dump(2) << "\n";
        }
        return 0;
      }
      json j = {{"status", "budget-exceeded"}, {"stats", stats}};
      std::cout << j.dump(2) << "\n";
      return 2;
    }
    if (*cmd_flag || *cmd_alex) {
      const InputOpts& in = *cmd_flag ? flag_in : alex_in;
      KnotDiagram d = resolve_input(in);
      MonomialOrder ord = resolve_order(order_spec);
      CrossingConvention conv = conv_name == "out"
                                    ? CrossingConvention::TIntoUnderOut
                                    : CrossingConvention::TIntoUnderIn;
      if (*cmd_alex) {
        Polynomial delta = alexander_poly(d, ord, conv);
        if (format == "text") {
          std::cout << delta.to_string() << "\n";
        } else {
          json j;
          if (!d.name.empty()) j["name"] = d.name;
          j["alexander"] = delta.to_string();
          if (delta.is_zero()) j["determinant"] = nullptr;
          else j["determinant"] = determinant(d, ord, conv).str();
          std::cout << j.dump(2) << "\n";
        }
        return 0;
      }
      json j = flag_report(d, *&k, ord, conv);
      if (format == "text") {
        for (const auto& el : j["elements"]) std::cout << el.get<std::string>() << "\n";
        if (j.contains("alexander"))
          std::cout << "alexander: " << j["alexander"].get<std::string>()
                    << ", determinant: "
                    << (j["determinant"].is_null() ? std::string("undefined")
                                                   : j["determinant"].get<std::string>())
                    << "\n";
      } else {
        std::cout << j.dump(2) << "\n";
      }
      return 0;
    }
    if (*cmd_regress) {
      KnotTable knots = KnotTable::load(regress_data + "/knots.json");
      std::string path = table_path.empty() ? regress_data + "/expectations.json"
                                            : table_path;
      ExpectationTable expect = ExpectationTable::load(path);
      RunReport report = run_regress(knots, expect);
      if (format == "text") {
        for (const auto& e : report.entries)
          std::cout << e.kind << " " << e.name << ": " << grade_name(e.grade)
                    << "\n";
        std::cout << (report.all_ok() ? "ok" : "FAILED") << "\n";
      } else {
        std::cout << report.to_json(true).dump(2) << "\n";
      }
      return report.all_ok() ? 0 : 1;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
