#include "nfold/json_io.hpp"

#include <algorithm>
#include <cctype>

namespace nfold {
namespace jsonio {

namespace {

bool decimal_string(const std::string& s) {
  if (s.empty()) return false;
  std::size_t start = s[0] == '-' ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string elem_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

}  // namespace

Int parse_int(const json& j, const std::string& path, ErrorCollector& ec) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
      return Int(static_cast<long>(v));
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (decimal_string(s)) return Int(s);
    ec.add(path, "expected an integer or decimal string, got \"" + s + "\"");
    return 0;
  }
  if (j.is_number_float()) {
    ec.add(path, "not an exact integer; quote values beyond 64 bits as strings");
    return 0;
  }
  ec.add(path, "expected an integer");
  return 0;
}

ExtInt parse_extint(const json& j, const std::string& path, ErrorCollector& ec) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return ExtInt::pos_inf();
    if (s == "-inf") return ExtInt::neg_inf();
    if (decimal_string(s)) return ExtInt(Int(s));
    ec.add(path, "expected an integer, \"inf\" or \"-inf\"");
    return ExtInt(0);
  }
  return ExtInt(parse_int(j, path, ec));
}

long parse_count(const json& j, const std::string& path, ErrorCollector& ec) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    ec.add(path, "expected a small nonnegative integer");
    return 0;
  }
  const auto v = j.get<std::int64_t>();
  if (v < 0 || v > 1'000'000'000) {
    ec.add(path, "count out of range");
    return 0;
  }
  return static_cast<long>(v);
}

IntVec parse_int_vec(const json& j, const std::string& path, ErrorCollector& ec) {
  IntVec out;
  if (!j.is_array()) {
    ec.add(path, "expected an array of integers");
    return out;
  }
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_int(j[i], elem_path(path, i), ec));
  return out;
}

ExtVec parse_ext_vec(const json& j, const std::string& path, ErrorCollector& ec) {
  ExtVec out;
  if (!j.is_array()) {
    ec.add(path, "expected an array of integers / \"inf\" / \"-inf\"");
    return out;
  }
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_extint(j[i], elem_path(path, i), ec));
  return out;
}

IntMatrix parse_matrix(const json& j, const std::string& path, ErrorCollector& ec) {
  if (!j.is_array()) {
    ec.add(path, "expected an array of rows");
    return IntMatrix(0, 0);
  }
  std::vector<IntVec> rows;
  rows.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(parse_int_vec(j[i], elem_path(path, i), ec));
    if (i > 0 && rows[i].size() != rows[0].size()) {
      ec.add(elem_path(path, i), "ragged row");
      return IntMatrix(0, 0);
    }
  }
  if (rows.empty()) return IntMatrix(0, 0);
  return IntMatrix::from_rows(rows);
}

Bimatrix parse_bimatrix(const json& j, const std::string& path, ErrorCollector& ec) {
  if (!j.is_object()) {
    ec.add(path, "expected an object with \"a1\" and \"a2\"");
    return Bimatrix(IntMatrix(0, 1), IntMatrix(0, 1));
  }
  check_keys(j, path, {"a1", "a2"}, ec);
  if (!j.contains("a1") || !j.contains("a2")) {
    ec.add(path, "both \"a1\" and \"a2\" are required (use [] for an empty block)");
    return Bimatrix(IntMatrix(0, 1), IntMatrix(0, 1));
  }
  IntMatrix a1 = parse_matrix(j["a1"], path + ".a1", ec);
  IntMatrix a2 = parse_matrix(j["a2"], path + ".a2", ec);
  int t = a1.rows() > 0 ? a1.cols() : a2.cols();
  if (t < 1) {
    ec.add(path, "at least one block must be nonempty");
    return Bimatrix(IntMatrix(0, 1), IntMatrix(0, 1));
  }
  if (a1.rows() == 0) a1 = IntMatrix(0, t);
  if (a2.rows() == 0) a2 = IntMatrix(0, t);
  try {
    return Bimatrix(std::move(a1), std::move(a2));
  } catch (const std::exception& e) {
    ec.add(path, e.what());
    return Bimatrix(IntMatrix(0, 1), IntMatrix(0, 1));
  }
}

Term parse_term(const json& j, const std::string& path, ErrorCollector& ec) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    ec.add(path, "expected a term object with a \"type\"");
    return LinearTerm{0};
  }
  const auto type = j["type"].get<std::string>();
  Term term = LinearTerm{0};
  if (type == "linear") {
    check_keys(j, path, {"type", "slope"}, ec);
    if (!j.contains("slope")) {
      ec.add(path, "linear term needs \"slope\"");
      return term;
    }
    term = LinearTerm{parse_int(j["slope"], path + ".slope", ec)};
  } else if (type == "power") {
    check_keys(j, path, {"type", "alpha", "beta", "center"}, ec);
    PowerTerm t;
    if (j.contains("alpha")) t.alpha = parse_int(j["alpha"], path + ".alpha", ec);
    else t.alpha = 1;
    if (j.contains("beta")) t.beta = static_cast<unsigned>(parse_count(j["beta"], path + ".beta", ec));
    if (j.contains("center")) t.center = parse_int(j["center"], path + ".center", ec);
    term = t;
  } else if (type == "pwl") {
    check_keys(j, path, {"type", "breaks", "slopes", "ref_x", "ref_val"}, ec);
    PwlTerm t;
    if (j.contains("breaks")) t.breaks = parse_int_vec(j["breaks"], path + ".breaks", ec);
    if (j.contains("slopes")) t.slopes = parse_int_vec(j["slopes"], path + ".slopes", ec);
    if (j.contains("ref_x")) t.ref_x = parse_int(j["ref_x"], path + ".ref_x", ec);
    if (j.contains("ref_val")) t.ref_val = parse_int(j["ref_val"], path + ".ref_val", ec);
    term = t;
  } else {
    ec.add(path + ".type", "unknown term type \"" + type + "\"");
    return term;
  }
  try {
    validate_term(term);
  } catch (const std::exception& e) {
    ec.add(path, e.what());
  }
  return term;
}

std::vector<Term> parse_terms(const json& j, const std::string& path, ErrorCollector& ec) {
  std::vector<Term> out;
  if (!j.is_array()) {
    ec.add(path, "expected an array of terms");
    return out;
  }
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_term(j[i], elem_path(path, i), ec));
  return out;
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed, ErrorCollector& ec) {
  if (!j.is_object()) return;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return it.key() == k; });
    if (!known) ec.add(path + "." + it.key(), "unknown field");
  }
}

namespace {

void require(const json& payload, const char* key, const std::string& path,
             ErrorCollector& ec) {
  if (!payload.contains(key)) ec.add(path + "." + key, "required field missing");
}

BoundsBox parse_bounds(const json& payload, const char* lo_key, const char* hi_key,
                       const std::string& path, ErrorCollector& ec) {
  ExtVec lo, hi;
  if (payload.contains(lo_key)) lo = parse_ext_vec(payload[lo_key], path + "." + lo_key, ec);
  if (payload.contains(hi_key)) hi = parse_ext_vec(payload[hi_key], path + "." + hi_key, ec);
  if (lo.size() != hi.size()) {
    ec.add(path, std::string(lo_key) + " and " + hi_key + " must have equal lengths");
    return BoundsBox();
  }
  return BoundsBox(std::move(lo), std::move(hi));
}

}  // namespace

SolveRequest parse_solve_request(const json& payload, ErrorCollector& ec) {
  SolveRequest req;
  if (!payload.is_object()) {
    ec.add("payload", "expected an object");
    return req;
  }
  if (!payload.contains("problem") || !payload["problem"].is_string()) {
    ec.add("payload.problem", "required string field");
    return req;
  }
  req.problem = payload["problem"].get<std::string>();

  const std::string path = "payload";
  if (req.problem == "generalized") {
    check_keys(payload, path,
               {"problem", "bimatrix", "weight_bimatrix", "n", "lower", "upper", "wlower",
                "wupper", "rhs", "f", "g"},
               ec);
    for (const char* k :
         {"bimatrix", "weight_bimatrix", "n", "lower", "upper", "wlower", "wupper", "rhs",
          "f", "g"})
      require(payload, k, path, ec);
    if (!ec.ok()) return req;
    req.generalized.a = parse_bimatrix(payload["bimatrix"], path + ".bimatrix", ec);
    req.generalized.w =
        parse_bimatrix(payload["weight_bimatrix"], path + ".weight_bimatrix", ec);
    req.generalized.n = static_cast<int>(parse_count(payload["n"], path + ".n", ec));
    req.generalized.bounds = parse_bounds(payload, "lower", "upper", path, ec);
    req.generalized.wbounds = parse_bounds(payload, "wlower", "wupper", path, ec);
    req.generalized.rhs = parse_int_vec(payload["rhs"], path + ".rhs", ec);
    if (ec.ok()) {
      try {
        req.generalized.f = SeparableObjective(parse_terms(payload["f"], path + ".f", ec));
        req.generalized.g = SeparableObjective(parse_terms(payload["g"], path + ".g", ec));
        req.generalized.validate();
      } catch (const std::exception& e) {
        ec.add(path, e.what());
      }
    }
    return req;
  }

  if (req.problem != "linear" && req.problem != "separable" && req.problem != "distance" &&
      req.problem != "max") {
    ec.add(path + ".problem", "unknown problem \"" + req.problem + "\"");
    return req;
  }

  if (req.problem == "linear")
    check_keys(payload, path,
               {"problem", "bimatrix", "n", "lower", "upper", "rhs", "weights", "objective"},
               ec);
  else if (req.problem == "separable")
    check_keys(payload, path, {"problem", "bimatrix", "n", "lower", "upper", "rhs", "objective"},
               ec);
  else if (req.problem == "distance")
    check_keys(payload, path, {"problem", "bimatrix", "n", "lower", "upper", "rhs", "p", "goal"},
               ec);
  else
    check_keys(payload, path,
               {"problem", "bimatrix", "n", "lower", "upper", "rhs", "weight_matrix",
                "composite"},
               ec);

  for (const char* k : {"bimatrix", "n", "lower", "upper", "rhs"}) require(payload, k, path, ec);
  if (!ec.ok()) return req;

  req.nfold.a = parse_bimatrix(payload["bimatrix"], path + ".bimatrix", ec);
  req.nfold.n = static_cast<int>(parse_count(payload["n"], path + ".n", ec));
  req.nfold.bounds = parse_bounds(payload, "lower", "upper", path, ec);
  req.nfold.rhs = parse_int_vec(payload["rhs"], path + ".rhs", ec);
  if (!ec.ok()) return req;
  const std::size_t nt = static_cast<std::size_t>(req.nfold.n) * req.nfold.a.t();

  try {
    if (req.problem == "linear") {
      if (payload.contains("weights") == payload.contains("objective")) {
        ec.add(path, "linear solve takes exactly one of \"weights\" or \"objective\"");
        return req;
      }
      if (payload.contains("weights")) {
        req.nfold.objective =
            SeparableObjective::linear(parse_int_vec(payload["weights"], path + ".weights", ec));
      } else {
        req.nfold.objective =
            SeparableObjective(parse_terms(payload["objective"], path + ".objective", ec));
        if (!req.nfold.objective.all_linear())
          ec.add(path + ".objective", "linear solve requires linear terms only");
      }
    } else if (req.problem == "separable") {
      require(payload, "objective", path, ec);
      if (!ec.ok()) return req;
      req.nfold.objective =
          SeparableObjective(parse_terms(payload["objective"], path + ".objective", ec));
    } else if (req.problem == "distance") {
      require(payload, "p", path, ec);
      require(payload, "goal", path, ec);
      if (!ec.ok()) return req;
      if (payload["p"].is_string() && payload["p"].get<std::string>() == "inf") {
        req.p = PNorm::inf();
      } else {
        long p = parse_count(payload["p"], path + ".p", ec);
        if (p < 1) ec.add(path + ".p", "p must be a positive integer or \"inf\"");
        req.p = PNorm::finite(static_cast<unsigned>(p));
      }
      req.goal = parse_int_vec(payload["goal"], path + ".goal", ec);
      req.nfold.objective = SeparableObjective::zero(nt);
    } else {  // max
      require(payload, "weight_matrix", path, ec);
      require(payload, "composite", path, ec);
      if (!ec.ok()) return req;
      req.weight_matrix = parse_matrix(payload["weight_matrix"], path + ".weight_matrix", ec);
      req.composite_terms = parse_terms(payload["composite"], path + ".composite", ec);
      if (req.weight_matrix.rows() < 1 || req.weight_matrix.rows() > 2)
        ec.add(path + ".weight_matrix", "convex maximization supports 1 or 2 rows");
      if (req.composite_terms.size() != static_cast<std::size_t>(req.weight_matrix.rows()))
        ec.add(path + ".composite", "one term per weight matrix row");
      req.nfold.objective = SeparableObjective::zero(nt);
    }
    if (ec.ok()) req.nfold.validate();
  } catch (const std::exception& e) {
    ec.add(path, e.what());
  }
  if (req.problem == "distance" && ec.ok() && req.goal.size() != nt)
    ec.add(path + ".goal", "goal length must equal n*t");
  return req;
}

GraverRequest parse_graver_request(const json& payload, ErrorCollector& ec) {
  GraverRequest req;
  if (!payload.is_object()) {
    ec.add("payload", "expected an object");
    return req;
  }
  check_keys(payload, "payload", {"matrix"}, ec);
  require(payload, "matrix", "payload", ec);
  if (!ec.ok()) return req;
  req.matrix = parse_matrix(payload["matrix"], "payload.matrix", ec);
  if (ec.ok() && req.matrix.cols() == 0) ec.add("payload.matrix", "matrix needs columns");
  return req;
}

NfoldGraverRequest parse_nfold_graver_request(const json& payload, ErrorCollector& ec) {
  NfoldGraverRequest req;
  if (!payload.is_object()) {
    ec.add("payload", "expected an object");
    return req;
  }
  check_keys(payload, "payload", {"bimatrix", "n"}, ec);
  require(payload, "bimatrix", "payload", ec);
  require(payload, "n", "payload", ec);
  if (!ec.ok()) return req;
  req.a = parse_bimatrix(payload["bimatrix"], "payload.bimatrix", ec);
  req.n = static_cast<int>(parse_count(payload["n"], "payload.n", ec));
  if (ec.ok() && req.n < 1) ec.add("payload.n", "n must be >= 1");
  return req;
}

namespace {

// Nested rectangular array of integers flattened row-major against `shape`.
void flatten_nested(const json& j, const std::vector<int>& shape, std::size_t depth,
                    const std::string& path, ErrorCollector& ec, IntVec& out) {
  if (depth == shape.size()) {
    out.push_back(parse_int(j, path, ec));
    return;
  }
  if (!j.is_array() || j.size() != static_cast<std::size_t>(shape[depth])) {
    ec.add(path, "expected an array of length " + std::to_string(shape[depth]));
    return;
  }
  for (std::size_t i = 0; i < j.size(); ++i)
    flatten_nested(j[i], shape, depth + 1, elem_path(path, i), ec, out);
}

}  // namespace

TableRequest parse_table_request(const json& payload, bool with_entry, ErrorCollector& ec) {
  TableRequest req;
  if (!payload.is_object()) {
    ec.add("payload", "expected an object");
    return req;
  }
  if (with_entry)
    check_keys(payload, "payload", {"dims", "layers", "margins", "cost", "cost_terms", "entry"},
               ec);
  else
    check_keys(payload, "payload", {"dims", "layers", "margins", "cost", "cost_terms"}, ec);
  for (const char* k : {"dims", "layers", "margins"}) require(payload, k, "payload", ec);
  if (with_entry) require(payload, "entry", "payload", ec);
  if (!ec.ok()) return req;

  if (!payload["dims"].is_array()) {
    ec.add("payload.dims", "expected an array of counts");
    return req;
  }
  for (std::size_t i = 0; i < payload["dims"].size(); ++i)
    req.table.dims.push_back(
        static_cast<int>(parse_count(payload["dims"][i], elem_path("payload.dims", i), ec)));
  req.table.layers = static_cast<int>(parse_count(payload["layers"], "payload.layers", ec));
  if (!ec.ok()) return req;

  std::vector<int> full = req.table.dims;
  full.push_back(req.table.layers);
  if (!payload["margins"].is_array() || payload["margins"].size() != full.size()) {
    ec.add("payload.margins",
           "expected " + std::to_string(full.size()) + " margin blocks (one per index)");
    return req;
  }
  for (std::size_t j = 0; j < full.size(); ++j) {
    std::vector<int> rest;
    for (std::size_t k = 0; k < full.size(); ++k)
      if (k != j) rest.push_back(full[k]);
    IntVec flat;
    flatten_nested(payload["margins"][j], rest, 0, elem_path("payload.margins", j), ec, flat);
    req.table.margins.push_back(std::move(flat));
  }

  if (payload.contains("cost")) {
    // natural nesting (i_1, ..., i_d, layer), reordered to the layer-major
    // variable layout
    IntVec natural;
    flatten_nested(payload["cost"], full, 0, "payload.cost", ec, natural);
    if (ec.ok()) {
      const int cells = static_cast<int>(natural.size()) / req.table.layers;
      IntVec layer_major(natural.size());
      for (int cell = 0; cell < cells; ++cell)
        for (int layer = 0; layer < req.table.layers; ++layer)
          layer_major[static_cast<std::size_t>(layer) * cells + cell] =
              natural[static_cast<std::size_t>(cell) * req.table.layers + layer];
      req.table.cost = std::move(layer_major);
    }
  }
  if (payload.contains("cost_terms"))
    req.table.cost_terms = parse_terms(payload["cost_terms"], "payload.cost_terms", ec);

  if (with_entry) {
    if (!payload["entry"].is_array() || payload["entry"].size() != full.size()) {
      ec.add("payload.entry", "expected one index per dimension plus the layer");
    } else {
      for (std::size_t i = 0; i < payload["entry"].size(); ++i)
        req.entry.push_back(
            static_cast<int>(parse_count(payload["entry"][i], elem_path("payload.entry", i), ec)));
    }
  }
  if (ec.ok()) {
    try {
      req.table.validate();
    } catch (const std::exception& e) {
      ec.add("payload", e.what());
    }
  }
  return req;
}

namespace {

Graph parse_graph(const json& j, const std::string& path, bool directed_default,
                  ErrorCollector& ec) {
  Graph g;
  g.directed = directed_default;
  if (!j.is_object()) {
    ec.add(path, "expected an object");
    return g;
  }
  check_keys(j, path, {"vertices", "edges", "directed"}, ec);
  require(j, "vertices", path, ec);
  require(j, "edges", path, ec);
  if (!ec.ok()) return g;
  g.vertices = static_cast<int>(parse_count(j["vertices"], path + ".vertices", ec));
  if (j.contains("directed")) {
    if (!j["directed"].is_boolean())
      ec.add(path + ".directed", "expected a boolean");
    else
      g.directed = j["directed"].get<bool>();
  }
  if (!j["edges"].is_array()) {
    ec.add(path + ".edges", "expected an array of [from, to] pairs");
    return g;
  }
  for (std::size_t e = 0; e < j["edges"].size(); ++e) {
    const auto& pair = j["edges"][e];
    const std::string epath = elem_path(path + ".edges", e);
    if (!pair.is_array() || pair.size() != 2) {
      ec.add(epath, "expected [from, to]");
      continue;
    }
    int from = static_cast<int>(parse_count(pair[0], epath + "[0]", ec));
    int to = static_cast<int>(parse_count(pair[1], epath + "[1]", ec));
    if (from >= g.vertices || to >= g.vertices) ec.add(epath, "endpoint out of range");
    g.edges.emplace_back(from, to);
  }
  return g;
}

}  // namespace

FlowRequest parse_flow_request(const json& payload, ErrorCollector& ec) {
  FlowRequest req;
  if (!payload.is_object()) {
    ec.add("payload", "expected an object");
    return req;
  }
  check_keys(payload, "payload",
             {"vertices", "edges", "commodities", "demands", "capacities", "edge_costs",
              "commodity_costs", "encoding"},
             ec);
  for (const char* k :
       {"vertices", "edges", "commodities", "demands", "capacities", "edge_costs",
        "commodity_costs"})
    require(payload, k, "payload", ec);
  if (!ec.ok()) return req;

  json graph_json = {{"vertices", payload["vertices"]}, {"edges", payload["edges"]}};
  req.flow.digraph = parse_graph(graph_json, "payload", true, ec);
  req.flow.commodities =
      static_cast<int>(parse_count(payload["commodities"], "payload.commodities", ec));
  if (payload["demands"].is_array()) {
    for (std::size_t k = 0; k < payload["demands"].size(); ++k)
      req.flow.demands.push_back(
          parse_int_vec(payload["demands"][k], elem_path("payload.demands", k), ec));
  } else {
    ec.add("payload.demands", "expected one demand vector per commodity");
  }
  req.flow.capacities = parse_int_vec(payload["capacities"], "payload.capacities", ec);
  req.flow.edge_costs = parse_terms(payload["edge_costs"], "payload.edge_costs", ec);
  if (payload["commodity_costs"].is_array()) {
    for (std::size_t k = 0; k < payload["commodity_costs"].size(); ++k)
      req.flow.commodity_costs.push_back(parse_terms(
          payload["commodity_costs"][k], elem_path("payload.commodity_costs", k), ec));
  } else {
    ec.add("payload.commodity_costs", "expected one term array per commodity");
  }
  if (payload.contains("encoding")) {
    const auto enc = payload["encoding"].is_string() ? payload["encoding"].get<std::string>() : "";
    if (enc == "weighted")
      req.weighted = true;
    else if (enc != "slack")
      ec.add("payload.encoding", "expected \"slack\" or \"weighted\"");
  }
  if (ec.ok()) {
    try {
      req.flow.validate();
    } catch (const std::exception& e) {
      ec.add("payload", e.what());
    }
  }
  return req;
}

apps::TransportationInstance parse_transport_request(const json& payload,
                                                     ErrorCollector& ec) {
  apps::TransportationInstance inst;
  if (!payload.is_object()) {
    ec.add("payload", "expected an object");
    return inst;
  }
  check_keys(payload, "payload",
             {"suppliers", "consumers", "commodities", "volumes", "supplies", "consumptions",
              "capacities", "edge_costs", "flow_costs"},
             ec);
  for (const char* k : {"suppliers", "consumers", "commodities", "volumes", "supplies",
                        "consumptions", "capacities", "edge_costs", "flow_costs"})
    require(payload, k, "payload", ec);
  if (!ec.ok()) return inst;

  inst.suppliers = static_cast<int>(parse_count(payload["suppliers"], "payload.suppliers", ec));
  inst.consumers = static_cast<int>(parse_count(payload["consumers"], "payload.consumers", ec));
  inst.commodities =
      static_cast<int>(parse_count(payload["commodities"], "payload.commodities", ec));
  inst.volumes = parse_int_vec(payload["volumes"], "payload.volumes", ec);

  auto vec_rows = [&](const char* key, std::vector<IntVec>& out) {
    if (!payload[key].is_array()) {
      ec.add(std::string("payload.") + key, "expected an array of arrays");
      return;
    }
    for (std::size_t i = 0; i < payload[key].size(); ++i)
      out.push_back(parse_int_vec(payload[key][i], elem_path(std::string("payload.") + key, i), ec));
  };
  vec_rows("supplies", inst.supplies);
  vec_rows("consumptions", inst.consumptions);
  vec_rows("capacities", inst.capacities);

  if (payload["edge_costs"].is_array()) {
    for (std::size_t i = 0; i < payload["edge_costs"].size(); ++i)
      inst.edge_costs.push_back(
          parse_terms(payload["edge_costs"][i], elem_path("payload.edge_costs", i), ec));
  } else {
    ec.add("payload.edge_costs", "expected an array of term rows");
  }
  if (payload["flow_costs"].is_array()) {
    for (std::size_t j = 0; j < payload["flow_costs"].size(); ++j) {
      std::vector<std::vector<Term>> block;
      const auto& jblock = payload["flow_costs"][j];
      const std::string bpath = elem_path("payload.flow_costs", j);
      if (!jblock.is_array()) {
        ec.add(bpath, "expected an array of term rows");
        continue;
      }
      for (std::size_t i = 0; i < jblock.size(); ++i)
        block.push_back(parse_terms(jblock[i], elem_path(bpath, i), ec));
      inst.flow_costs.push_back(std::move(block));
    }
  } else {
    ec.add("payload.flow_costs", "expected an array of per-consumer blocks");
  }
  if (ec.ok()) {
    try {
      inst.validate();
    } catch (const std::exception& e) {
      ec.add("payload", e.what());
    }
  }
  return inst;
}

ComplexityRequest parse_complexity_request(const json& payload, ErrorCollector& ec) {
  ComplexityRequest req;
  if (!payload.is_object()) {
    ec.add("payload", "expected an object");
    return req;
  }
  check_keys(payload, "payload", {"bimatrix", "graph"}, ec);
  const bool has_bimatrix = payload.contains("bimatrix");
  const bool has_graph = payload.contains("graph");
  if (has_bimatrix == has_graph) {
    ec.add("payload", "exactly one of \"bimatrix\" or \"graph\" is required");
    return req;
  }
  if (has_bimatrix)
    req.bimatrix = parse_bimatrix(payload["bimatrix"], "payload.bimatrix", ec);
  else
    req.graph = parse_graph(payload["graph"], "payload.graph", false, ec);
  return req;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += "\"";
  return out;
}

std::string int_array(const IntVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += quote(v[i].get_str());
  }
  s += "]";
  return s;
}

namespace {

std::string status_name(SolveResult::Status s) {
  switch (s) {
    case SolveResult::Status::Optimal: return "optimal";
    case SolveResult::Status::Infeasible: return "infeasible";
    default: return "infinite-if-nonempty";
  }
}

std::string strip_quotes(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    return s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

std::string render_solve_report(
    const SolveResult& r, const ReportOptions& opts,
    const std::vector<std::pair<std::string, std::string>>& extra_json_fields) {
  if (opts.format == "text") {
    std::string s = "status: " + status_name(r.status) + "\n";
    if (r.status == SolveResult::Status::Optimal) {
      s += "value: " + r.value.get_str() + "\n";
      s += "point:";
      for (const auto& x : r.point) s += " " + x.get_str();
      s += "\n";
      s += "steps: " + std::to_string(r.steps) + "\n";
      s += "basis_size: " + std::to_string(r.basis_size) + "\n";
    } else if (r.status == SolveResult::Status::InfiniteIfNonempty) {
      s += "witness:";
      for (const auto& x : r.witness) s += " " + x.get_str();
      s += "\n";
    }
    for (const auto& [k, v] : extra_json_fields) s += k + ": " + strip_quotes(v) + "\n";
    if (opts.timings) s += "wall_time_ms: " + std::to_string(opts.wall_ms) + "\n";
    return s;
  }
  std::string s = "{\"status\": " + quote(status_name(r.status));
  if (r.status == SolveResult::Status::Optimal) {
    s += ", \"value\": " + quote(r.value.get_str());
    s += ", \"point\": " + int_array(r.point);
    s += ", \"steps\": " + std::to_string(r.steps);
    s += ", \"basis_size\": " + std::to_string(r.basis_size);
  } else if (r.status == SolveResult::Status::InfiniteIfNonempty) {
    s += ", \"witness\": " + int_array(r.witness);
  }
  for (const auto& [k, v] : extra_json_fields) s += ", " + quote(k) + ": " + v;
  if (opts.timings) s += ", \"wall_time_ms\": " + std::to_string(opts.wall_ms);
  s += "}\n";
  return s;
}

std::string render_value_set_report(const std::set<Int>& values, bool empty_fiber,
                                    const ReportOptions& opts) {
  IntVec sorted(values.begin(), values.end());
  if (opts.format == "text") {
    std::string s = std::string("status: ") + (empty_fiber ? "empty-fiber" : "ok") + "\n";
    s += "values:";
    for (const auto& v : sorted) s += " " + v.get_str();
    s += "\n";
    if (!empty_fiber)
      s += std::string("unique: ") + (values.size() == 1 ? "true" : "false") + "\n";
    if (opts.timings) s += "wall_time_ms: " + std::to_string(opts.wall_ms) + "\n";
    return s;
  }
  std::string s = std::string("{\"status\": ") + (empty_fiber ? "\"empty-fiber\"" : "\"ok\"");
  s += ", \"values\": " + int_array(sorted);
  if (!empty_fiber) s += std::string(", \"unique\": ") + (values.size() == 1 ? "true" : "false");
  if (opts.timings) s += ", \"wall_time_ms\": " + std::to_string(opts.wall_ms);
  s += "}\n";
  return s;
}

std::string render_complexity_report(const Int& bound, const ReportOptions& opts) {
  if (opts.format == "text") {
    std::string s = "bound: " + bound.get_str() + "\n";
    if (opts.timings) s += "wall_time_ms: " + std::to_string(opts.wall_ms) + "\n";
    return s;
  }
  std::string s = "{\"status\": \"ok\", \"bound\": " + quote(bound.get_str());
  if (opts.timings) s += ", \"wall_time_ms\": " + std::to_string(opts.wall_ms);
  s += "}\n";
  return s;
}

std::string render_basis_report(const GraverBasis& basis, const ReportOptions& opts) {
  if (opts.format == "text") {
    std::string s = "ambient_dim: " + std::to_string(basis.ambient_dim()) + "\n";
    s += "elements: " + std::to_string(basis.size()) + "\n";
    for (const auto& e : basis.elements()) {
      std::string line;
      for (const auto& x : e) line += (line.empty() ? "" : " ") + x.get_str();
      s += line + "\n";
    }
    if (opts.timings) s += "wall_time_ms: " + std::to_string(opts.wall_ms) + "\n";
    return s;
  }
  return basis.to_json() + "\n";
}

std::string approx_root_decimal(const Int& value, unsigned p) {
  if (p == 0 || sgn(value) < 0) return "nan";
  if (p == 1) return value.get_str() + ".000000";
  Int scaled = value * pow_int(Int(10), 6ul * p);
  Int root;
  mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), p);
  std::string digits = root.get_str();
  if (digits.size() <= 6) digits.insert(0, 7 - digits.size(), '0');
  digits.insert(digits.size() - 6, ".");
  return digits;
}

}  // namespace jsonio
}  // namespace nfold
