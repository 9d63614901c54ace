#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "nfold/apps.hpp"
#include "nfold/solver.hpp"

namespace nfold {
namespace jsonio {

using nlohmann::json;

/// Field errors accumulate so a bad file reports everything at once.
struct ErrorCollector {
  std::vector<std::string> errors;

  void add(const std::string& path, const std::string& message) {
    errors.push_back(path + ": " + message);
  }
  bool ok() const { return errors.empty(); }
  [[noreturn]] void raise() const { throw validation_error(errors); }
};

/// Arbitrary-precision integers arrive as JSON integers or decimal strings;
/// anything that would round through a double is rejected.
Int parse_int(const json& j, const std::string& path, ErrorCollector& ec);
ExtInt parse_extint(const json& j, const std::string& path, ErrorCollector& ec);
long parse_count(const json& j, const std::string& path, ErrorCollector& ec);
IntVec parse_int_vec(const json& j, const std::string& path, ErrorCollector& ec);
ExtVec parse_ext_vec(const json& j, const std::string& path, ErrorCollector& ec);
IntMatrix parse_matrix(const json& j, const std::string& path, ErrorCollector& ec);
Bimatrix parse_bimatrix(const json& j, const std::string& path, ErrorCollector& ec);
Term parse_term(const json& j, const std::string& path, ErrorCollector& ec);
std::vector<Term> parse_terms(const json& j, const std::string& path, ErrorCollector& ec);

/// Rejects keys outside the allow list.
void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed, ErrorCollector& ec);

/// What a "nfold-solve" payload describes.
struct SolveRequest {
  std::string problem;  // linear | separable | distance | max | generalized
  NFoldInstance nfold;
  GeneralizedInstance generalized;
  PNorm p;
  IntVec goal;
  IntMatrix weight_matrix;
  std::vector<Term> composite_terms;
};

SolveRequest parse_solve_request(const json& payload, ErrorCollector& ec);

struct GraverRequest {
  IntMatrix matrix;
};
GraverRequest parse_graver_request(const json& payload, ErrorCollector& ec);

struct NfoldGraverRequest {
  Bimatrix a;
  int n = 1;
};
NfoldGraverRequest parse_nfold_graver_request(const json& payload, ErrorCollector& ec);

struct TableRequest {
  apps::TableInstance table;
  std::vector<int> entry;  // entry-set only
};
TableRequest parse_table_request(const json& payload, bool with_entry, ErrorCollector& ec);

struct FlowRequest {
  apps::TransshipmentInstance flow;
  bool weighted = false;
};
FlowRequest parse_flow_request(const json& payload, ErrorCollector& ec);

apps::TransportationInstance parse_transport_request(const json& payload,
                                                     ErrorCollector& ec);

struct ComplexityRequest {
  std::optional<Bimatrix> bimatrix;
  std::optional<Graph> graph;
};
ComplexityRequest parse_complexity_request(const json& payload, ErrorCollector& ec);

/// Deterministic, hand-built report documents. Integers render as decimal
/// strings so arbitrary precision survives.
struct ReportOptions {
  std::string format = "json";  // json | text
  bool timings = false;
  long wall_ms = 0;
};

std::string quote(const std::string& s);
std::string int_array(const IntVec& v);
std::string render_solve_report(const SolveResult& r, const ReportOptions& opts,
                                const std::vector<std::pair<std::string, std::string>>&
                                    extra_json_fields = {});
std::string render_value_set_report(const std::set<Int>& values, bool empty_fiber,
                                    const ReportOptions& opts);
std::string render_complexity_report(const Int& bound, const ReportOptions& opts);
std::string render_basis_report(const GraverBasis& basis, const ReportOptions& opts);

/// Fixed-point decimal approximation of value^(1/p), six digits, truncated.
/// Non-contractual rendering for distance reports.
std::string approx_root_decimal(const Int& value, unsigned p);

}  // namespace jsonio
}  // namespace nfold
