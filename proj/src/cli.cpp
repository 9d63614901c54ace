#include "nfold/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nfold/json_io.hpp"
#include "nfold/oracle.hpp"

namespace nfold {
namespace cli {

namespace {

using jsonio::ErrorCollector;
using jsonio::json;
using jsonio::ReportOptions;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitInfinite = 3;
constexpr int kExitValidation = 4;
constexpr int kExitBudget = 5;

struct CommonArgs {
  std::string input;
  std::string output;
  std::string format = "json";
  int threads = 1;
  bool check = false;
  bool timings = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--input", args.input, "instance file (JSON)")->required();
  cmd->add_option("--output", args.output, "write the report here instead of stdout");
  cmd->add_option("--format", args.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--threads", args.threads, "worker threads; never changes results")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--check", args.check, "re-verify the solution against the instance");
  cmd->add_flag("--timings", args.timings, "include wall_time_ms in the report");
}

int exit_code_for(const SolveResult& r) {
  switch (r.status) {
    case SolveResult::Status::Optimal: return kExitOk;
    case SolveResult::Status::Infeasible: return kExitInfeasible;
    default: return kExitInfinite;
  }
}

struct CheckOutcome {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

void check_eq(CheckOutcome& out, const std::string& label, const IntVec& got,
              const IntVec& want) {
  if (got.size() != want.size()) {
    out.violations.push_back(label + ": length mismatch");
    return;
  }
  for (std::size_t i = 0; i < got.size(); ++i)
    if (got[i] != want[i])
      out.violations.push_back(label + "[" + std::to_string(i) + "]: got " +
                               got[i].get_str() + ", want " + want[i].get_str());
}

void check_bounds(CheckOutcome& out, const std::string& label, const IntVec& x,
                  const BoundsBox& bounds) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    ExtInt xi{x[i]};
    if (xi < bounds.lower[i] || bounds.upper[i] < xi)
      out.violations.push_back(label + "[" + std::to_string(i) + "]: " + x[i].get_str() +
                               " outside [" + bounds.lower[i].str() + ", " +
                               bounds.upper[i].str() + "]");
  }
}

void check_value(CheckOutcome& out, const Int& got, const Int& want) {
  if (got != want)
    out.violations.push_back("value: reported " + got.get_str() + ", recomputed " +
                             want.get_str());
}

int emit(const std::string& report, const CommonArgs& args, std::ostream& out,
         std::ostream& err, int code) {
  if (!args.output.empty()) {
    std::ofstream f(args.output, std::ios::binary);
    if (!f) {
      err << "cannot write " << args.output << "\n";
      return kExitBudget;
    }
    f << report;
    return code;
  }
  out << report;
  return code;
}

int emit_check_failure(const CheckOutcome& chk, const CommonArgs& args, std::ostream& out,
                       std::ostream& err) {
  std::string s = "{\"status\": \"check-failed\", \"violations\": [";
  for (std::size_t i = 0; i < chk.violations.size(); ++i) {
    if (i) s += ", ";
    s += jsonio::quote(chk.violations[i]);
  }
  s += "]}\n";
  return emit(s, args, out, err, kExitBudget);
}

struct LoadedInstance {
  json payload;
};

int load_instance(const CommonArgs& args, const std::string& expected_kind,
                  LoadedInstance& loaded, std::ostream& err) {
  std::ifstream f(args.input, std::ios::binary);
  if (!f) {
    err << "cannot read " << args.input << "\n";
    return kExitValidation;
  }
  std::stringstream buffer;
  buffer << f.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    err << "malformed JSON: " << e.what() << "\n";
    return kExitValidation;
  }
  ErrorCollector ec;
  if (!doc.is_object()) {
    ec.add("$", "expected a JSON object");
  } else {
    jsonio::check_keys(doc, "$", {"format_version", "kind", "payload"}, ec);
    if (!doc.contains("format_version") || !doc["format_version"].is_string() ||
        doc["format_version"].get<std::string>() != "1")
      ec.add("$.format_version", "expected \"1\"");
    if (!doc.contains("kind") || !doc["kind"].is_string())
      ec.add("$.kind", "required string field");
    else if (doc["kind"].get<std::string>() != expected_kind)
      ec.add("$.kind", "expected \"" + expected_kind + "\" for this subcommand, got \"" +
                           doc["kind"].get<std::string>() + "\"");
    if (!doc.contains("payload") || !doc["payload"].is_object())
      ec.add("$.payload", "required object field");
  }
  if (!ec.ok()) {
    for (const auto& e : ec.errors) err << e << "\n";
    return kExitValidation;
  }
  loaded.payload = doc["payload"];
  return kExitOk;
}

long elapsed_ms(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

int run_graver(const CommonArgs& args, std::ostream& out, std::ostream& err) {
  LoadedInstance loaded;
  if (int rc = load_instance(args, "matrix-graver", loaded, err)) return rc;
  ErrorCollector ec;
  auto req = jsonio::parse_graver_request(loaded.payload, ec);
  if (!ec.ok()) {
    for (const auto& e : ec.errors) err << e << "\n";
    return kExitValidation;
  }
  const auto start = std::chrono::steady_clock::now();
  GraverBasis basis = graver_basis(req.matrix, ComputeOptions{args.threads});
  ReportOptions ropts{args.format, args.timings, elapsed_ms(start)};
  return emit(jsonio::render_basis_report(basis, ropts), args, out, err, kExitOk);
}

int run_nfold_graver(const CommonArgs& args, std::ostream& out, std::ostream& err) {
  LoadedInstance loaded;
  if (int rc = load_instance(args, "nfold-graver", loaded, err)) return rc;
  ErrorCollector ec;
  auto req = jsonio::parse_nfold_graver_request(loaded.payload, ec);
  if (!ec.ok()) {
    for (const auto& e : ec.errors) err << e << "\n";
    return kExitValidation;
  }
  const auto start = std::chrono::steady_clock::now();
  GraverBasis basis = nfold_graver(req.a, req.n, ComputeOptions{args.threads});
  ReportOptions ropts{args.format, args.timings, elapsed_ms(start)};
  return emit(jsonio::render_basis_report(basis, ropts), args, out, err, kExitOk);
}

int run_complexity(const CommonArgs& args, std::ostream& out, std::ostream& err) {
  LoadedInstance loaded;
  if (int rc = load_instance(args, "complexity", loaded, err)) return rc;
  ErrorCollector ec;
  auto req = jsonio::parse_complexity_request(loaded.payload, ec);
  if (!ec.ok()) {
    for (const auto& e : ec.errors) err << e << "\n";
    return kExitValidation;
  }
  const auto start = std::chrono::steady_clock::now();
  Int bound = req.bimatrix
                  ? graver_complexity_bound(*req.bimatrix, ComputeOptions{args.threads})
                  : graph_graver_complexity(*req.graph, ComputeOptions{args.threads});
  ReportOptions ropts{args.format, args.timings, elapsed_ms(start)};
  return emit(jsonio::render_complexity_report(bound, ropts), args, out, err, kExitOk);
}

int run_solve(const CommonArgs& args, std::ostream& out, std::ostream& err) {
  LoadedInstance loaded;
  if (int rc = load_instance(args, "nfold-solve", loaded, err)) return rc;
  ErrorCollector ec;
  auto req = jsonio::parse_solve_request(loaded.payload, ec);
  if (!ec.ok()) {
    for (const auto& e : ec.errors) err << e << "\n";
    return kExitValidation;
  }

  SolveOptions opts;
  opts.threads = args.threads;
  const auto start = std::chrono::steady_clock::now();
  SolveResult result;
  std::vector<std::pair<std::string, std::string>> extras;
  if (req.problem == "linear") {
    result = solve_nfold_linear(req.nfold, opts);
  } else if (req.problem == "separable") {
    result = solve_nfold_separable(req.nfold, opts);
  } else if (req.problem == "distance") {
    result = solve_nfold_distance(req.nfold, req.p, req.goal, opts);
    if (result.optimal_status() && !req.p.infinite && req.p.p >= 2)
      extras.emplace_back("distance_approx",
                          jsonio::quote(jsonio::approx_root_decimal(result.value, req.p.p)));
  } else if (req.problem == "max") {
    SeparableObjective composite{req.composite_terms};
    auto f = [&composite](const IntVec& y) { return composite.eval(y); };
    result = solve_nfold_max(req.nfold, req.weight_matrix, f, opts);
  } else {
    result = solve_nfold_generalized(req.generalized, opts);
  }

  if (args.check && result.optimal_status()) {
    CheckOutcome chk;
    if (req.problem == "generalized") {
      const auto& g = req.generalized;
      check_eq(chk, "equality", nfold_matrix(g.a, g.n).apply(result.point), g.rhs);
      check_bounds(chk, "point", result.point, g.bounds);
      IntVec wx = nfold_matrix(g.w, g.n).apply(result.point);
      check_bounds(chk, "weighted", wx, g.wbounds);
      check_value(chk, result.value, g.f.eval(wx) + g.g.eval(result.point));
    } else {
      const auto& inst = req.nfold;
      check_eq(chk, "equality", nfold_matrix(inst.a, inst.n).apply(result.point), inst.rhs);
      check_bounds(chk, "point", result.point, inst.bounds);
      if (req.problem == "linear" || req.problem == "separable")
        check_value(chk, result.value, inst.objective.eval(result.point));
      else if (req.problem == "distance" && !req.p.infinite)
        check_value(chk, result.value,
                    SeparableObjective::power_distance(req.goal, req.p.p).eval(result.point));
      else if (req.problem == "distance") {
        Int extreme = 0;
        for (std::size_t i = 0; i < result.point.size(); ++i) {
          Int d = abs_int(result.point[i] - req.goal[i]);
          if (d > extreme) extreme = d;
        }
        check_value(chk, result.value, extreme);
      } else if (req.problem == "max") {
        SeparableObjective composite{req.composite_terms};
        check_value(chk, result.value, composite.eval(req.weight_matrix.apply(result.point)));
      }
    }
    if (!chk.ok()) return emit_check_failure(chk, args, out, err);
    extras.emplace_back("check", "\"ok\"");
  }

  ReportOptions ropts{args.format, args.timings, elapsed_ms(start)};
  return emit(jsonio::render_solve_report(result, ropts, extras), args, out, err,
              exit_code_for(result));
}

int run_table(const CommonArgs& args, std::ostream& out, std::ostream& err) {
  LoadedInstance loaded;
  if (int rc = load_instance(args, "table", loaded, err)) return rc;
  ErrorCollector ec;
  auto req = jsonio::parse_table_request(loaded.payload, false, ec);
  if (!ec.ok()) {
    for (const auto& e : ec.errors) err << e << "\n";
    return kExitValidation;
  }
  SolveOptions opts;
  opts.threads = args.threads;
  const auto start = std::chrono::steady_clock::now();
  NFoldInstance enc = apps::encode_table(req.table);
  SolveResult result = enc.objective.all_linear() ? solve_nfold_linear(enc, opts)
                                                  : solve_nfold_separable(enc, opts);
  std::vector<std::pair<std::string, std::string>> extras;
  if (args.check && result.optimal_status()) {
    CheckOutcome chk;
    auto margins =
        apps::TableInstance::margins_of(req.table.dims, req.table.layers, result.point);
    for (std::size_t j = 0; j < margins.size(); ++j)
      check_eq(chk, "margins[" + std::to_string(j) + "]", margins[j], req.table.margins[j]);
    for (const auto& v : result.point)
      if (sgn(v) < 0) chk.violations.push_back("negative entry in table");
    if (!chk.ok()) return emit_check_failure(chk, args, out, err);
    extras.emplace_back("check", "\"ok\"");
  }
  ReportOptions ropts{args.format, args.timings, elapsed_ms(start)};
  return emit(jsonio::render_solve_report(result, ropts, extras), args, out, err,
              exit_code_for(result));
}

int run_entry_set(const CommonArgs& args, std::ostream& out, std::ostream& err) {
  LoadedInstance loaded;
  if (int rc = load_instance(args, "entry-set", loaded, err)) return rc;
  ErrorCollector ec;
  auto req = jsonio::parse_table_request(loaded.payload, true, ec);
  if (!ec.ok()) {
    for (const auto& e : ec.errors) err << e << "\n";
    return kExitValidation;
  }
  SolveOptions opts;
  opts.threads = args.threads;
  const auto start = std::chrono::steady_clock::now();
  std::set<Int> values = apps::entry_value_set(req.table, req.entry, opts);
  const bool empty_fiber = values.empty();
  ReportOptions ropts{args.format, args.timings, elapsed_ms(start)};
  return emit(jsonio::render_value_set_report(values, empty_fiber, ropts), args, out, err,
              empty_fiber ? kExitInfeasible : kExitOk);
}

int run_flow(const CommonArgs& args, std::ostream& out, std::ostream& err) {
  LoadedInstance loaded;
  if (int rc = load_instance(args, "transshipment", loaded, err)) return rc;
  ErrorCollector ec;
  auto req = jsonio::parse_flow_request(loaded.payload, ec);
  if (!ec.ok()) {
    for (const auto& e : ec.errors) err << e << "\n";
    return kExitValidation;
  }
  SolveOptions opts;
  opts.threads = args.threads;
  const auto start = std::chrono::steady_clock::now();
  SolveResult result;
  if (req.weighted) {
    GeneralizedInstance enc = apps::encode_transshipment_weighted(req.flow);
    result = solve_nfold_generalized(enc, opts);
  } else {
    NFoldInstance enc = apps::encode_transshipment_slack(req.flow);
    result = solve_nfold_separable(enc, opts);
  }
  std::vector<std::pair<std::string, std::string>> extras;
  if (result.optimal_status()) {
    IntVec flows = apps::decode_transshipment_flows(req.flow, result.point, !req.weighted);
    result.point = flows;
    if (args.check) {
      CheckOutcome chk;
      const IntMatrix d = incidence_matrix(req.flow.digraph);
      const std::size_t t = req.flow.digraph.edges.size();
      for (int k = 0; k < req.flow.commodities; ++k) {
        IntVec xk(flows.begin() + k * t, flows.begin() + (k + 1) * t);
        check_eq(chk, "demand[" + std::to_string(k) + "]", d.apply(xk), req.flow.demands[k]);
      }
      Int total_cost = 0;
      for (std::size_t e = 0; e < t; ++e) {
        Int combined = 0;
        for (int k = 0; k < req.flow.commodities; ++k) {
          const Int& fe = flows[k * t + e];
          if (sgn(fe) < 0) chk.violations.push_back("negative flow");
          combined += fe;
          total_cost += eval_term(req.flow.commodity_costs[k][e], fe);
        }
        if (combined > req.flow.capacities[e])
          chk.violations.push_back("capacity exceeded on edge " + std::to_string(e));
        total_cost += eval_term(req.flow.edge_costs[e], combined);
      }
      check_value(chk, result.value, total_cost);
      if (!chk.ok()) return emit_check_failure(chk, args, out, err);
      extras.emplace_back("check", "\"ok\"");
    }
  }
  ReportOptions ropts{args.format, args.timings, elapsed_ms(start)};
  return emit(jsonio::render_solve_report(result, ropts, extras), args, out, err,
              exit_code_for(result));
}

int run_transport(const CommonArgs& args, std::ostream& out, std::ostream& err) {
  LoadedInstance loaded;
  if (int rc = load_instance(args, "transportation", loaded, err)) return rc;
  ErrorCollector ec;
  auto inst = jsonio::parse_transport_request(loaded.payload, ec);
  if (!ec.ok()) {
    for (const auto& e : ec.errors) err << e << "\n";
    return kExitValidation;
  }
  SolveOptions opts;
  opts.threads = args.threads;
  const auto start = std::chrono::steady_clock::now();
  GeneralizedInstance enc = apps::encode_transportation(inst);
  SolveResult result = solve_nfold_generalized(enc, opts);
  std::vector<std::pair<std::string, std::string>> extras;
  if (args.check && result.optimal_status()) {
    CheckOutcome chk;
    const int m = inst.suppliers, n = inst.consumers, l = inst.commodities;
    auto x = [&](int j, int i, int k) -> const Int& {
      return result.point[(static_cast<std::size_t>(j) * m + i) * l + k];
    };
    Int total_cost = 0;
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < l; ++k) {
        Int s = 0;
        for (int j = 0; j < n; ++j) s += x(j, i, k);
        if (s != inst.supplies[i][k])
          chk.violations.push_back("supply[" + std::to_string(i) + "][" + std::to_string(k) +
                                   "] mismatch");
      }
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < l; ++k) {
        Int s = 0;
        for (int i = 0; i < m; ++i) s += x(j, i, k);
        if (s != inst.consumptions[j][k])
          chk.violations.push_back("consumption[" + std::to_string(j) + "][" +
                                   std::to_string(k) + "] mismatch");
      }
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < m; ++i) {
        Int weighted = 0;
        for (int k = 0; k < l; ++k) weighted += inst.volumes[k] * x(j, i, k);
        if (weighted > inst.capacities[i][j])
          chk.violations.push_back("capacity[" + std::to_string(i) + "][" + std::to_string(j) +
                                   "] exceeded");
        total_cost += eval_term(inst.edge_costs[i][j], weighted);
        for (int k = 0; k < l; ++k)
          total_cost += eval_term(inst.flow_costs[j][i][k], x(j, i, k));
      }
    check_value(chk, result.value, total_cost);
    if (!chk.ok()) return emit_check_failure(chk, args, out, err);
    extras.emplace_back("check", "\"ok\"");
  }
  ReportOptions ropts{args.format, args.timings, elapsed_ms(start)};
  return emit(jsonio::render_solve_report(result, ropts, extras), args, out, err,
              exit_code_for(result));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact n-fold integer programming over Graver bases"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const CommonArgs&, std::ostream&, std::ostream&);
  };
  static const Command commands[] = {
      {"graver", "Graver basis of an explicit matrix", run_graver},
      {"nfold-graver", "Graver basis of an n-fold product", run_nfold_graver},
      {"solve", "solve an n-fold or generalized instance", run_solve},
      {"table", "solve a multiway line-sum table instance", run_table},
      {"entry-set", "set of values an entry attains over a table fiber", run_entry_set},
      {"flow", "many-commodity transshipment", run_flow},
      {"transport", "multicommodity transportation", run_transport},
      {"complexity", "Graver complexity bound of a bimatrix or (di)graph", run_complexity},
  };

  std::vector<CommonArgs> parsed(std::size(commands));
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].name, commands[i].help);
    add_common(sub, parsed[i]);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitValidation;
  }

  for (std::size_t i = 0; i < std::size(commands); ++i) {
    if (app.got_subcommand(commands[i].name)) {
      try {
        return commands[i].fn(parsed[i], out, err);
      } catch (const validation_error& e) {
        for (const auto& msg : e.field_errors) err << msg << "\n";
        return kExitValidation;
      } catch (const budget_exceeded_error& e) {
        err << e.what() << "\n";
        return kExitBudget;
      } catch (const unsupported_error& e) {
        err << e.what() << "\n";
        return kExitBudget;
      } catch (const no_tables_error& e) {
        err << e.what() << "\n";
        return kExitInfeasible;
      } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitValidation;
      }
    }
  }
  err << "no subcommand selected\n";
  return kExitValidation;
}

}  // namespace cli
}  // namespace nfold
