#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "efx/dc.hpp"
#include "efx/document.hpp"
#include "efx/extension.hpp"
#include "efx/fixedpoint.hpp"
#include "efx/generate.hpp"
#include "efx/instance.hpp"
#include "efx/lovasz.hpp"
#include "efx/oracle.hpp"
#include "efx/setfun.hpp"
#include "json.hpp"

namespace efx::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

json matrix_json(const Matrix& mat) {
  json rows = json::array();
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    rows.push_back(std::vector<double>(mat.row(r).begin(), mat.row(r).end()));
  }
  return rows;
}

json allocation_json(const Allocation& alloc) {
  json owner = json::array();
  for (std::size_t a : alloc.owners()) owner.push_back(a + 1);
  json bundles = json::array();
  for (std::size_t a = 0; a < alloc.agents(); ++a) {
    json items = json::array();
    for (std::size_t k : alloc.bundle(a)) items.push_back(k + 1);
    bundles.push_back(std::move(items));
  }
  return {{"owner", owner}, {"bundles", bundles}};
}

json one_based(const std::vector<std::size_t>& ids) {
  json out = json::array();
  for (std::size_t id : ids) out.push_back(id + 1);
  return out;
}

// An instance after dropping agents that value every item at zero. Such
// agents never envy anyone and nothing they hold is envied.
struct Prepared {
  Instance original;
  AgentReduction reduction;
  std::optional<Instance> reduced;  // empty when fewer than two agents remain

  Allocation lift(const Allocation& alloc) const {
    return expand_allocation(alloc, reduction, original.agents());
  }

  // Everything to the one agent who values anything (or to agent 1).
  Allocation trivial_allocation() const {
    const std::size_t to = reduction.kept.empty() ? 0 : reduction.kept.front();
    return Allocation(std::vector<std::size_t>(original.items(), to), original.agents());
  }

  json reduction_json() const {
    return {{"removed_agents", one_based(reduction.removed)},
            {"kept_agents", one_based(reduction.kept)}};
  }
};

Prepared prepare(const std::string& path) {
  Instance inst = parse_instance(read_text_file(path));
  AgentReduction reduction = zero_value_agents(inst);
  std::optional<Instance> reduced;
  if (reduction.removed.empty()) {
    reduced = inst;
  } else if (reduction.kept.size() >= 2) {
    reduced = restrict_agents(inst, reduction.kept);
  }
  return {std::move(inst), std::move(reduction), std::move(reduced)};
}

json trivial_result(const Prepared& p) {
  const Allocation alloc = p.trivial_allocation();
  return {{"trivial", true},
          {"allocation", allocation_json(alloc)},
          {"efx", is_efx(p.original, alloc).efx},
          {"verdict", "efx-verified"}};
}

json document(const std::string& command, json config) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"config", std::move(config)}};
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << text;
}

std::vector<double> parse_lambdas(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw InputError("lambda list entry '" + part + "' is not a number");
    }
    InverseTemperature check(out.back());
    if (out.size() > 1 && !(out.back() > out[out.size() - 2])) {
      throw InputError("lambda list must be increasing");
    }
  }
  if (out.empty()) throw InputError("lambda list is empty");
  return out;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::size_t agents = 2;
  std::size_t items = 3;
  std::string dist = "uniform01";
  std::uint64_t seed = 0;
  int max_int = 10;
  std::string out;
};

json run_gen(const GenArgs& a) {
  const ValueDistribution dist = parse_distribution(a.dist);
  const Instance inst = generate_instance(a.agents, a.items, dist, a.seed, a.max_int);
  json doc = json::parse(instance_document(inst));
  doc["schema_version"] = kSchemaVersion;
  doc["config"] = {{"agents", a.agents},
                   {"items", a.items},
                   {"distribution", distribution_name(dist)},
                   {"seed", a.seed},
                   {"max_int", a.max_int}};
  return doc;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string instance;
  std::string allocation;
  double tolerance = kDefaultEfxTolerance;
  std::string out;
};

json run_check(const CheckArgs& a) {
  const Instance inst = parse_instance(read_text_file(a.instance));
  const Allocation alloc = parse_allocation(read_text_file(a.allocation), inst.agents());
  check_compatible(inst, alloc);
  const EfxReport report = is_efx(inst, alloc, a.tolerance);

  json doc = document("check", {{"instance", a.instance},
                                {"allocation", a.allocation},
                                {"tolerance", a.tolerance}});
  doc["efx"] = report.efx;
  doc["slack"] = efx_slack(inst, alloc);
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"envious", v.envious + 1}, {"envied", v.envied + 1}, {"slack", v.slack}});
  }
  doc["violations"] = violations;
  doc["F_raw"] = max_pair_envy(inst, alloc, EnvyForm::raw);
  try {
    doc["F_shifted"] = max_pair_envy(normalize(inst), alloc, EnvyForm::shifted);
  } catch (const ZeroColumnError&) {
    doc["F_shifted"] = nullptr;
  }
  doc["allocation"] = allocation_json(alloc);
  return doc;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
  std::string instance;
  std::size_t cap = 64;
  bool all = false;
  unsigned threads = 1;
  double tolerance = kDefaultEfxTolerance;
  std::string out;
};

json run_oracle(const OracleArgs& a) {
  const Prepared p = prepare(a.instance);
  OracleOptions options;
  options.cap = a.all ? 0 : a.cap;
  options.threads = a.threads;
  options.tolerance = a.tolerance;
  const OracleResult result = enumerate_efx(p.original, options);

  json doc = document("oracle", {{"instance", a.instance},
                                 {"cap", a.cap},
                                 {"all", a.all},
                                 {"threads", a.threads},
                                 {"tolerance", a.tolerance}});
  doc["exists"] = result.exists;
  doc["witness_count"] = result.witness_count;
  doc["scanned"] = result.scanned;
  json witnesses = json::array();
  for (const auto& w : result.witnesses) witnesses.push_back(allocation_json(w));
  doc["witnesses"] = witnesses;
  doc["reduction"] = p.reduction_json();
  if (p.reduced) {
    const EnvyMinimum best = min_max_pair_envy(normalize(*p.reduced), EnvyForm::shifted);
    doc["min_F"] = {{"form", "shifted"},
                    {"threshold", efx_threshold(EnvyForm::shifted)},
                    {"value", best.value},
                    {"argmin", allocation_json(p.lift(best.argmin))}};
  } else {
    doc["min_F"] = nullptr;
  }
  return doc;
}

// ---------------------------------------------------------------- lovasz

struct LovaszArgs {
  std::string instance;
  std::size_t iterations = 500;
  double step0 = 0.5;
  std::uint64_t seed = 0;
  std::string out;
};

json lovasz_result(const Prepared& p, const LovaszArgs& a) {
  if (!p.reduced) return trivial_result(p);
  const Instance inst = normalize(*p.reduced);
  const RelaxationResult relax = minimize_relaxation(inst, {a.iterations, a.step0});
  const ThresholdRounding rounding = threshold_round(relax.best, a.seed);

  double min_value = std::numeric_limits<double>::infinity();
  for (double v : inst.values().flat()) min_value = std::min(min_value, v);
  json bundles = json::array();
  for (const ItemSet& s : rounding.bundles) {
    json items = json::array();
    for (std::size_t k : s.elements()) items.push_back(k + 1);
    bundles.push_back(std::move(items));
  }
  // Agents removed by the reduction are left out of x and the bundles.
  return {{"form", "shifted"},
          {"threshold", efx_threshold(EnvyForm::shifted)},
          {"f_star", relax.value},
          {"initial_value", relax.initial_value},
          {"uniform_bound", 1.0 - min_value / static_cast<double>(inst.agents())},
          {"best_iteration", relax.best_iteration},
          {"max_row_error", relax.max_row_error},
          {"exceeds_threshold", relax.value > efx_threshold(EnvyForm::shifted)},
          {"verdict", "inconclusive"},
          {"agents", one_based(p.reduction.kept)},
          {"x", matrix_json(relax.best.matrix())},
          {"rounding",
           {{"thresholds", rounding.thresholds},
            {"bundles", bundles},
            {"unassigned", one_based(rounding.unassigned)},
            {"multiply_assigned", one_based(rounding.multiply_assigned)},
            {"feasible", rounding.feasible()}}}};
}

json run_lovasz(const LovaszArgs& a) {
  const Prepared p = prepare(a.instance);
  json doc = document("lovasz", {{"instance", a.instance},
                                 {"iterations", a.iterations},
                                 {"step0", a.step0},
                                 {"seed", a.seed}});
  doc["reduction"] = p.reduction_json();
  doc["result"] = lovasz_result(p, a);
  return doc;
}

// ---------------------------------------------------------------- extension eval

struct ExtensionArgs {
  std::string instance;
  std::string y_path;
  std::string x_path;
  std::string allocation;
  std::string lambdas = "1,10,100,1000";
  std::optional<double> m_const;
  std::string out;
};

json run_extension(const ExtensionArgs& a) {
  const Instance inst = parse_instance(read_text_file(a.instance));
  const int sources = !a.y_path.empty() + !a.x_path.empty() + !a.allocation.empty();
  if (sources != 1) throw InputError("give exactly one of --y, --x, --allocation");
  const std::vector<double> lambdas = parse_lambdas(a.lambdas);
  const double nm = static_cast<double>(inst.items() * inst.agents());

  json doc = document("extension eval", {{"instance", a.instance},
                                         {"y", a.y_path},
                                         {"x", a.x_path},
                                         {"allocation", a.allocation},
                                         {"lambdas", lambdas},
                                         {"m_const", a.m_const ? json(*a.m_const) : json()}});
  json bound = json::array();
  for (double lam : lambdas) bound.push_back(std::log(nm) / lam);
  doc["bound"] = bound;

  std::optional<DualPoint> y;
  std::optional<FractionalPoint> x;
  if (!a.y_path.empty()) {
    Matrix m = parse_matrix_field(read_text_file(a.y_path), "y");
    if (m.empty()) throw InputError("document has no \"y\" matrix");
    y.emplace(std::move(m));
  } else if (!a.x_path.empty()) {
    Matrix m = parse_matrix_field(read_text_file(a.x_path), "x");
    if (m.empty()) throw InputError("document has no \"x\" matrix");
    x.emplace(std::move(m));
  } else {
    const Allocation alloc = parse_allocation(read_text_file(a.allocation), inst.agents());
    check_compatible(inst, alloc);
    x.emplace(FractionalPoint::from_allocation(alloc));
    const EncodingConstant m =
        a.m_const ? EncodingConstant(*a.m_const) : EncodingConstant::for_instance(inst);
    y.emplace(encode_allocation(inst, alloc, m));
  }

  json g = json::array();
  if (y) {
    const DcObjective f = dc_objective_detail(inst, *y);
    doc["f"] = f.value;
    doc["f_argmax"] = {{"item", f.item + 1}, {"envious", f.envious + 1}, {"envied", f.envied + 1}};
    doc["gaps"] = limit_gaps(inst, *y, lambdas);
  } else {
    doc["f"] = nullptr;
  }
  for (double lam : lambdas) {
    const InverseTemperature lambda(lam);
    g.push_back(x ? expected_envy_bound(inst, *x, lambda)
                  : expected_envy_bound_log(inst, log_softmax(*y, lambda), lambda));
  }
  doc["g"] = g;
  return doc;
}

// ---------------------------------------------------------------- dca

struct DcaArgs {
  std::string instance;
  double delta = 1e-8;
  std::size_t max_iterations = 200;
  std::size_t starts = 1;
  std::uint64_t seed = 0;
  std::optional<double> m_const;
  double tolerance = kDefaultEfxTolerance;
  std::string out;
};

struct DcaOutcome {
  json body;
  bool efx = false;
  double objective = 0.0;
  std::size_t iterations = 0;
  bool failed = false;
};

DcaOutcome dca_outcome(const Prepared& p, const DcaArgs& a) {
  if (!p.reduced) return {trivial_result(p), true, 0.0, 0, false};
  DcaOptions options;
  options.delta = a.delta;
  options.max_iterations = a.max_iterations;
  options.m_const = a.m_const;
  options.efx_tolerance = a.tolerance;
  const MultiStartResult multi = dca_multistart(*p.reduced, a.starts, a.seed, options);
  const DcaResult& r = multi.best;
  const Allocation alloc = p.lift(r.allocation);
  const bool efx = is_efx(p.original, alloc, a.tolerance).efx;

  json trace = json::array();
  for (const DcaStep& s : r.trace) {
    trace.push_back({{"iteration", s.iteration},
                     {"objective", s.objective},
                     {"f", s.f_value},
                     {"step", s.step_norm},
                     {"pivots", s.pivots}});
  }
  json body = {{"status", to_string(r.status)},
               {"objective", r.objective},
               {"iterations", r.iterations},
               {"monotone", r.monotone},
               {"allocation", allocation_json(alloc)},
               {"efx", efx},
               {"verdict", efx ? "efx-verified" : "inconclusive"},
               {"best_start", multi.best_start},
               {"start_objectives", multi.objectives},
               {"trace", trace},
               {"y", matrix_json(r.y.matrix())}};
  if (!r.detail.empty()) body["detail"] = r.detail;
  return {std::move(body), efx, r.objective, r.iterations, r.status == DcaStatus::lp_failure};
}

json dca_config(const DcaArgs& a) {
  return {{"instance", a.instance},
          {"delta", a.delta},
          {"max_iters", a.max_iterations},
          {"starts", a.starts},
          {"seed", a.seed},
          {"m_const", a.m_const ? json(*a.m_const) : json("2V+1")},
          {"tolerance", a.tolerance},
          {"start_rule", "greedy, then uniform random in [-M,0]"},
          {"norm", "infinity"}};
}

// ---------------------------------------------------------------- fixedpoint

struct FixedPointArgs {
  std::string instance;
  std::string map = "Ttilde";
  double alpha = 0.5;
  double tolerance = 1e-8;
  std::size_t max_iterations = 5000;
  std::size_t starts = 8;
  std::uint64_t seed = 0;
  double slack_tolerance = 1e-6;
  std::optional<double> m_const;
  std::string out;
};

json negative_row_json(const std::vector<NegativeRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json entries = json::array();
    for (const auto& e : row.entries) {
      entries.push_back({{"agent", e.agent + 1},
                         {"skipped", e.skipped},
                         {"residual", e.skipped ? json() : json(e.residual)}});
    }
    out.push_back({{"item", row.item + 1},
                   {"h", row.h},
                   {"log_bound", row.log_bound},
                   {"entries", entries}});
  }
  return out;
}

struct FixedPointOutcome {
  json body;
  bool efx = false;
  double slack = 0.0;
  std::size_t iterations = 0;
};

FixedPointOutcome fixedpoint_outcome(const Prepared& p, const FixedPointArgs& a) {
  if (!p.reduced) return {trivial_result(p), true, 0.0, 0};
  PicardOptions options;
  options.map = parse_fixed_point_map(a.map);
  options.alpha = a.alpha;
  options.tolerance = a.tolerance;
  options.max_iterations = a.max_iterations;
  options.slack_tolerance = a.slack_tolerance;
  options.m_const = a.m_const;
  const FixedPointMultiStart multi = picard_multistart(*p.reduced, a.starts, a.seed, options);

  json runs = json::array();
  for (std::size_t s = 0; s < multi.runs.size(); ++s) {
    const FixedPointReport& r = multi.runs[s];
    runs.push_back({{"start", s},
                    {"status", r.converged ? "converged" : "stalled"},
                    {"iterations", r.iterations},
                    {"residual", r.residual},
                    {"constraint_slack", r.constraints.slack},
                    {"efx", r.efx},
                    {"negative_rows", negative_row_json(r.negative_rows)}});
  }
  const FixedPointReport& best = multi.best;
  const Allocation alloc = p.lift(best.extracted);
  const bool efx = is_efx(p.original, alloc).efx;
  json body = {{"status", best.converged ? "converged" : "stalled"},
               {"residual", best.residual},
               {"iterations", best.iterations},
               {"constraint_slack", best.constraints.slack},
               {"constraints_hold", best.constraints_hold()},
               {"negative_rows", negative_row_json(best.negative_rows)},
               {"allocation", allocation_json(alloc)},
               {"efx", efx},
               {"verdict", efx ? "efx-verified" : "inconclusive"},
               {"best_start", multi.best_start},
               {"y", matrix_json(best.y.matrix())},
               {"runs", runs}};
  return {std::move(body), efx, best.constraints.slack, best.iterations};
}

json fixedpoint_config(const FixedPointArgs& a) {
  return {{"instance", a.instance},
          {"map", a.map},
          {"alpha", a.alpha},
          {"tol", a.tolerance},
          {"max_iters", a.max_iterations},
          {"starts", a.starts},
          {"seed", a.seed},
          {"slack_tol", a.slack_tolerance},
          {"m_const", a.m_const ? json(*a.m_const) : json("2V+1")}};
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::string instance;
  std::uint64_t seed = 0;
  std::size_t dca_starts = 4;
  std::size_t fixedpoint_starts = 8;
  std::size_t lovasz_iterations = 500;
  bool timing = false;
  std::string csv;
  std::string out;
};

struct Row {
  std::string method;
  std::optional<bool> found_efx;
  std::optional<double> value;
  std::optional<std::size_t> iterations;
  std::string status;
  std::string flag;
  std::string error;
  double wall_ms = 0.0;
};

json run_compare(const CompareArgs& a, const Prepared& p, std::vector<Row>& rows) {
  json doc = document("compare", {{"instance", a.instance},
                                  {"seed", a.seed},
                                  {"dca_starts", a.dca_starts},
                                  {"fixedpoint_starts", a.fixedpoint_starts},
                                  {"lovasz_iters", a.lovasz_iterations},
                                  {"timing", a.timing}});
  doc["reduction"] = p.reduction_json();

  auto timed = [&](const std::string& method, const std::function<void(Row&)>& body) {
    Row row;
    row.method = method;
    const auto start = Clock::now();
    try {
      body(row);
    } catch (const std::exception& e) {
      row.status = "error";
      row.error = e.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    rows.push_back(std::move(row));
  };

  std::optional<bool> exists;
  timed("oracle", [&](Row& row) {
    const OracleResult r = enumerate_efx(p.original);
    exists = r.exists;
    row.found_efx = r.exists;
    row.iterations = static_cast<std::size_t>(r.scanned);
    if (p.reduced) row.value = min_max_pair_envy(normalize(*p.reduced)).value;
    row.status = r.exists ? "exists" : "none";
  });
  timed("lovasz", [&](Row& row) {
    LovaszArgs la;
    la.iterations = a.lovasz_iterations;
    la.seed = a.seed;
    const json r = lovasz_result(p, la);
    row.found_efx = false;
    if (r.contains("f_star")) row.value = r["f_star"].get<double>();
    row.iterations = a.lovasz_iterations;
    row.status = "inconclusive";
  });
  timed("dca", [&](Row& row) {
    DcaArgs da;
    da.starts = a.dca_starts;
    da.seed = a.seed;
    const DcaOutcome r = dca_outcome(p, da);
    row.found_efx = r.efx;
    row.value = r.objective;
    row.iterations = r.iterations;
    row.status = r.failed ? "lp-failure" : (r.efx ? "efx-verified" : "inconclusive");
  });
  timed("fixedpoint", [&](Row& row) {
    FixedPointArgs fa;
    fa.starts = a.fixedpoint_starts;
    fa.seed = a.seed;
    const FixedPointOutcome r = fixedpoint_outcome(p, fa);
    row.found_efx = r.efx;
    row.value = r.slack;
    row.iterations = r.iterations;
    row.status = r.efx ? "efx-verified" : "inconclusive";
  });

  json findings = json::array();
  for (Row& row : rows) {
    if (row.method == "oracle" || !exists || !row.found_efx) continue;
    if (*row.found_efx && !*exists) {
      row.flag = "disagreement";
    } else if (!*row.found_efx && *exists && row.method != "lovasz") {
      row.flag = "stationary-miss";
    }
    if (!row.flag.empty()) findings.push_back({{"method", row.method}, {"flag", row.flag}});
  }

  json table = json::array();
  for (const Row& row : rows) {
    json r = {{"method", row.method},
              {"found_efx", row.found_efx ? json(*row.found_efx) : json()},
              {"value", row.value ? json(*row.value) : json()},
              {"iterations", row.iterations ? json(*row.iterations) : json()},
              {"status", row.status},
              {"flag", row.flag.empty() ? json() : json(row.flag)}};
    if (!row.error.empty()) r["error"] = row.error;
    if (a.timing) r["wall_time_ms"] = row.wall_ms;
    table.push_back(std::move(r));
  }
  doc["rows"] = table;
  doc["findings"] = findings;
  return doc;
}

void write_compare_csv(const std::string& path, const std::vector<Row>& rows, bool timing) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << "method,found_efx,value,iterations,status,flag" << (timing ? ",wall_time_ms" : "")
       << "\n";
  for (const Row& row : rows) {
    file << row.method << ',' << (row.found_efx ? (*row.found_efx ? "true" : "false") : "")
         << ',' << (row.value ? json(*row.value).dump() : "") << ','
         << (row.iterations ? std::to_string(*row.iterations) : "") << ',' << row.status << ','
         << row.flag;
    if (timing) file << ',' << row.wall_ms;
    file << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"EFX allocations: exhaustive search, convex relaxation, DCA and fixed-point maps",
               "efx"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance document");
  gen_cmd->add_option("-n,--agents", gen.agents, "Number of agents (>= 2)")->required();
  gen_cmd->add_option("-m,--items", gen.items, "Number of items (>= 1)")->required();
  gen_cmd->add_option("--dist", gen.dist, "uniform01 | integer | identical-agents")
      ->capture_default_str();
  gen_cmd->add_option("--max-int", gen.max_int, "Upper end K for the integer distribution")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("-o,--out", gen.out, "Output path (default stdout)");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Test an allocation for EFX");
  check_cmd->add_option("-i,--instance", check.instance)->required();
  check_cmd->add_option("-a,--allocation", check.allocation)->required();
  check_cmd->add_option("--tol", check.tolerance)->capture_default_str();
  check_cmd->add_option("-o,--out", check.out);

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Enumerate every allocation");
  oracle_cmd->add_option("-i,--instance", oracle.instance)->required();
  oracle_cmd->add_option("--cap", oracle.cap, "Witnesses kept")->capture_default_str();
  oracle_cmd->add_flag("--all", oracle.all, "Keep every witness");
  oracle_cmd->add_option("--threads", oracle.threads)->capture_default_str();
  oracle_cmd->add_option("--tol", oracle.tolerance)->capture_default_str();
  oracle_cmd->add_option("-o,--out", oracle.out);

  LovaszArgs lovasz;
  auto* lovasz_cmd = app.add_subcommand("lovasz", "Minimize the convex relaxation");
  lovasz_cmd->add_option("-i,--instance", lovasz.instance)->required();
  lovasz_cmd->add_option("--iters", lovasz.iterations)->capture_default_str();
  lovasz_cmd->add_option("--step0", lovasz.step0)->capture_default_str();
  lovasz_cmd->add_option("--seed", lovasz.seed, "Seed for threshold rounding")
      ->capture_default_str();
  lovasz_cmd->add_option("-o,--out", lovasz.out);

  ExtensionArgs ext;
  auto* ext_cmd = app.add_subcommand("extension", "Continuous extension tools");
  ext_cmd->require_subcommand(1);
  auto* eval_cmd = ext_cmd->add_subcommand("eval", "Evaluate f(y) and g(x, lambda)");
  eval_cmd->add_option("-i,--instance", ext.instance)->required();
  eval_cmd->add_option("--y", ext.y_path, "Document with a \"y\" matrix");
  eval_cmd->add_option("--x", ext.x_path, "Document with an \"x\" matrix");
  eval_cmd->add_option("-a,--allocation", ext.allocation, "Allocation document");
  eval_cmd->add_option("--lambdas", ext.lambdas, "Comma-separated increasing list")
      ->capture_default_str();
  eval_cmd->add_option("--m-const", ext.m_const, "Encoding constant M (default 2V+1)");
  eval_cmd->add_option("-o,--out", ext.out);

  DcaArgs dca;
  auto* dca_cmd = app.add_subcommand("dca", "Run DCA on the DC objective");
  dca_cmd->add_option("-i,--instance", dca.instance)->required();
  dca_cmd->add_option("--delta", dca.delta)->capture_default_str();
  dca_cmd->add_option("--max-iters", dca.max_iterations)->capture_default_str();
  dca_cmd->add_option("--starts", dca.starts)->capture_default_str();
  dca_cmd->add_option("--seed", dca.seed)->capture_default_str();
  dca_cmd->add_option("--m-const", dca.m_const, "Box size M (default 2V+1)");
  dca_cmd->add_option("--tol", dca.tolerance)->capture_default_str();
  dca_cmd->add_option("-o,--out", dca.out);

  FixedPointArgs fp;
  auto* fp_cmd = app.add_subcommand("fixedpoint", "Damped Picard iteration of T, T' or T~");
  fp_cmd->add_option("-i,--instance", fp.instance)->required();
  fp_cmd->add_option("--map", fp.map, "T | Tprime | Ttilde")->capture_default_str();
  fp_cmd->add_option("--alpha", fp.alpha)->capture_default_str();
  fp_cmd->add_option("--tol", fp.tolerance)->capture_default_str();
  fp_cmd->add_option("--max-iters", fp.max_iterations)->capture_default_str();
  fp_cmd->add_option("--starts", fp.starts)->capture_default_str();
  fp_cmd->add_option("--seed", fp.seed)->capture_default_str();
  fp_cmd->add_option("--slack-tol", fp.slack_tolerance)->capture_default_str();
  fp_cmd->add_option("--m-const", fp.m_const, "Box size M (default 2V+1)");
  fp_cmd->add_option("-o,--out", fp.out);

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Run every method against the oracle");
  cmp_cmd->add_option("-i,--instance", cmp.instance)->required();
  cmp_cmd->add_option("--seed", cmp.seed)->capture_default_str();
  cmp_cmd->add_option("--dca-starts", cmp.dca_starts)->capture_default_str();
  cmp_cmd->add_option("--fixedpoint-starts", cmp.fixedpoint_starts)->capture_default_str();
  cmp_cmd->add_option("--lovasz-iters", cmp.lovasz_iterations)->capture_default_str();
  cmp_cmd->add_flag("--timing", cmp.timing, "Add wall-clock times (breaks byte determinism)");
  cmp_cmd->add_option("--csv", cmp.csv, "Also write the table as CSV");
  cmp_cmd->add_option("-o,--out", cmp.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) {
      emit(run_gen(gen), gen.out, out);
    } else if (*check_cmd) {
      emit(run_check(check), check.out, out);
    } else if (*oracle_cmd) {
      emit(run_oracle(oracle), oracle.out, out);
    } else if (*lovasz_cmd) {
      emit(run_lovasz(lovasz), lovasz.out, out);
    } else if (*eval_cmd) {
      emit(run_extension(ext), ext.out, out);
    } else if (*dca_cmd) {
      const Prepared p = prepare(dca.instance);
      json doc = document("dca", dca_config(dca));
      doc["reduction"] = p.reduction_json();
      DcaOutcome r = dca_outcome(p, dca);
      doc["result"] = std::move(r.body);
      emit(doc, dca.out, out);
      if (r.failed) {
        err << "error: LP solve failed during DCA\n";
        return kInternalError;
      }
    } else if (*fp_cmd) {
      const Prepared p = prepare(fp.instance);
      json doc = document("fixedpoint", fixedpoint_config(fp));
      doc["reduction"] = p.reduction_json();
      doc["result"] = fixedpoint_outcome(p, fp).body;
      emit(doc, fp.out, out);
    } else if (*cmp_cmd) {
      const Prepared p = prepare(cmp.instance);
      std::vector<Row> rows;
      emit(run_compare(cmp, p, rows), cmp.out, out);
      if (!cmp.csv.empty()) write_compare_csv(cmp.csv, rows, cmp.timing);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}

}  // namespace efx::cli
