// Command-line surface: ingest rule documents or presets, run simulations,
// exhaustive counts, statistics, probabilities, and parameter sweeps, and
// emit machine-readable JSON/CSV.
//
// Exit codes, stable across subcommands:
//   0  success (the list parks / the run completed)
//   1  valid run with a negative answer (the list fails to park, violations found)
//   2  usage or input error (malformed input, invalid rule, budget refusal)

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "parkfn/core.hpp"
#include "parkfn/engine.hpp"
#include "parkfn/enumerate.hpp"
#include "parkfn/prob.hpp"
#include "parkfn/rule_json.hpp"
#include "parkfn/stats.hpp"

namespace {

using nlohmann::json;

constexpr const char* kSchemaVersion = "1.0";

struct RuleSource {
  std::string preset;
  std::string rule_file;
};

void add_rule_source(CLI::App* cmd, RuleSource& src) {
  cmd->add_option("--preset", src.preset,
                  "named preset, e.g. classical:5, naples:4,2, obstructed:5,3,[1,4]");
  cmd->add_option("--rule-file", src.rule_file, "path to a rule JSON document");
}

json load_rule_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open rule file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("rule file '" + path + "' is not valid JSON: " + e.what());
  }
  return doc;
}

parkfn::RuleSpec resolve_rule(const RuleSource& src, bool check = true) {
  if (src.preset.empty() == src.rule_file.empty()) {
    throw std::invalid_argument("exactly one of --preset or --rule-file is required");
  }
  if (!src.preset.empty()) return parkfn::expand_preset(src.preset);
  parkfn::RuleSpec rule = parkfn::rule_from_json(load_rule_document(src.rule_file));
  if (check) parkfn::ensure_valid(rule);
  return rule;
}

parkfn::PreferenceList parse_prefs(const std::string& text) {
  parkfn::PreferenceList prefs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      prefs.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("--prefs: malformed integer '" + tok + "'");
    }
  }
  if (prefs.empty()) throw std::invalid_argument("--prefs: at least one preference is required");
  return prefs;
}

// "a..b", "a", or a comma list of those.
std::vector<long long> parse_range(const std::string& flag, const std::string& text) {
  std::vector<long long> values;
  std::stringstream ss(text);
  std::string tok;
  auto parse_one = [&](const std::string& t) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument(flag + ": malformed integer '" + t + "'");
    }
  };
  while (std::getline(ss, tok, ',')) {
    const std::size_t dots = tok.find("..");
    if (dots == std::string::npos) {
      values.push_back(parse_one(tok));
    } else {
      const long long lo = parse_one(tok.substr(0, dots));
      const long long hi = parse_one(tok.substr(dots + 2));
      if (hi < lo) throw std::invalid_argument(flag + ": empty range '" + tok + "'");
      for (long long v = lo; v <= hi; ++v) values.push_back(v);
    }
  }
  if (values.empty()) throw std::invalid_argument(flag + ": no values");
  return values;
}

void emit(const std::string& command, const parkfn::RuleSpec& rule, json payload) {
  const json record = {{"schema_version", kSchemaVersion},
                       {"command", command},
                       {"rule", parkfn::rule_to_json(rule)},
                       {"payload", std::move(payload)}};
  std::cout << record.dump(2) << "\n";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

json trace_json(const std::vector<parkfn::TraceStep>& steps) {
  json arr = json::array();
  for (const auto& step : steps) {
    json rec = {{"car", step.car}, {"probes", step.probes}};
    if (step.parked) {
      rec["parked"] = step.parked;
    } else {
      rec["parked"] = nullptr;
    }
    arr.push_back(std::move(rec));
  }
  return arr;
}

json aggregate_json(const parkfn::AggregateStatistics& a) {
  return {{"list_count", a.list_count},
          {"totals",
           {{"lucky", a.lucky_total},
            {"displacement_signed", a.displacement_signed_total},
            {"displacement_abs", a.displacement_abs_total},
            {"bumps", a.bump_total},
            {"ascents", a.ascent_total},
            {"descents", a.descent_total},
            {"ties", a.tie_total},
            {"peaks", a.peak_total},
            {"valleys", a.valley_total}}},
          {"positional",
           {{"lucky", a.lucky_at},
            {"ascents", a.ascent_at},
            {"descents", a.descent_at},
            {"ties", a.tie_at}}}};
}

void print_aggregate_csv(const parkfn::AggregateStatistics& a) {
  std::cout << "metric,index,value\n";
  auto row = [](const std::string& metric, const std::string& index, std::uint64_t value) {
    std::cout << metric << "," << index << "," << value << "\n";
  };
  row("list_count", "", a.list_count);
  row("lucky_total", "", a.lucky_total);
  std::cout << "displacement_signed_total,," << a.displacement_signed_total << "\n";
  row("displacement_abs_total", "", a.displacement_abs_total);
  row("bump_total", "", a.bump_total);
  row("ascent_total", "", a.ascent_total);
  row("descent_total", "", a.descent_total);
  row("tie_total", "", a.tie_total);
  row("peak_total", "", a.peak_total);
  row("valley_total", "", a.valley_total);
  for (std::size_t i = 0; i < a.lucky_at.size(); ++i) {
    row("lucky_at", std::to_string(i + 1), a.lucky_at[i]);
  }
  for (std::size_t i = 0; i < a.ascent_at.size(); ++i) {
    row("ascent_at", std::to_string(i + 1), a.ascent_at[i]);
  }
  for (std::size_t i = 0; i < a.descent_at.size(); ++i) {
    row("descent_at", std::to_string(i + 1), a.descent_at[i]);
  }
  for (std::size_t i = 0; i < a.tie_at.size(); ++i) {
    row("tie_at", std::to_string(i + 1), a.tie_at[i]);
  }
}

mpq_class parse_rational(const std::string& flag, const std::string& text) {
  try {
    mpq_class q(text);
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    throw std::invalid_argument(flag + ": expected a rational like 1/2, got '" + text + "'");
  }
}

// --- subcommand option bags -------------------------------------------------

struct SimulateOpts {
  RuleSource src;
  std::string prefs;
  bool with_trace = false;
};

struct CountOpts {
  RuleSource src;
  int workers = 0;
  std::uint64_t budget = parkfn::kDefaultBudget;
  bool prune = false;
  bool with_stats = false;
  std::string format = "json";
};

struct StatsOpts {
  RuleSource src;
  std::string prefs;
  int workers = 0;
  std::uint64_t budget = parkfn::kDefaultBudget;
  std::string format = "json";
};

struct ProbOpts {
  RuleSource src;
  std::string prefs;
  bool exact = false;
  bool expected = false;
  std::uint64_t trials = 100000;
  bool trials_given = false;
  std::uint64_t seed = parkfn::kDefaultSeed;
  std::string p_heads = "1/2";
  int workers = 0;
  std::uint64_t budget = parkfn::kDefaultBudget;
};

struct SweepOpts {
  std::string family;
  std::string n, k, m, d;
  int workers = 0;
  std::uint64_t budget = parkfn::kDefaultBudget;
  std::string format = "json";
};

struct ValidateOpts {
  RuleSource src;
};

int run_simulate(const SimulateOpts& o) {
  const parkfn::RuleSpec rule = resolve_rule(o.src);
  const parkfn::PreferenceList prefs = parse_prefs(o.prefs);
  const parkfn::ParkingOutcome outcome = parkfn::park(prefs, rule);

  json payload;
  payload["prefs"] = prefs;
  if (outcome.success()) {
    payload["outcome"] = "success";
    payload["assignment"] = outcome.assignment;
  } else {
    payload["outcome"] = "failure";
    payload["first_fail"] = outcome.first_fail;
  }
  if (o.with_trace) payload["trace"] = trace_json(parkfn::trace(prefs, rule));
  emit("simulate", rule, std::move(payload));
  return outcome.success() ? 0 : 1;
}

int run_count(const CountOpts& o) {
  const parkfn::RuleSpec rule = resolve_rule(o.src);
  parkfn::CountOptions opts;
  opts.workers = o.workers;
  opts.budget = o.budget;
  opts.prune = o.prune;
  opts.with_stats = o.with_stats;
  const parkfn::CountReport report = parkfn::count_parking(rule, opts);

  if (o.format == "csv") {
    std::cout << "domain_size,parking_count\n"
              << report.domain_size.get_str() << "," << report.parking_count.get_str() << "\n";
    return 0;
  }
  json payload = {{"domain_size", report.domain_size.get_str()},
                  {"parking_count", report.parking_count.get_str()},
                  {"elapsed_seconds", report.elapsed.count()}};
  if (report.stats) payload["stats"] = aggregate_json(*report.stats);
  emit("count", rule, std::move(payload));
  return 0;
}

int run_stats(const StatsOpts& o) {
  const parkfn::RuleSpec rule = resolve_rule(o.src);

  if (!o.prefs.empty()) {
    if (o.format == "csv") {
      throw std::invalid_argument("--format csv is only available for aggregate statistics");
    }
    const parkfn::PreferenceList prefs = parse_prefs(o.prefs);
    const parkfn::ParkingOutcome outcome = parkfn::park(prefs, rule);
    if (!outcome.success()) {
      emit("stats", rule,
           {{"prefs", prefs}, {"outcome", "failure"}, {"first_fail", outcome.first_fail}});
      return 1;
    }
    const parkfn::ListStatistics st = parkfn::list_stats(prefs, outcome);
    json payload = {{"prefs", prefs},
                    {"outcome", "success"},
                    {"assignment", outcome.assignment},
                    {"lucky_count", st.lucky_count},
                    {"lucky_mask", st.lucky_mask},
                    {"displacement_signed", st.displacement_signed},
                    {"displacement_abs", st.displacement_abs},
                    {"bump_count", st.bump_count},
                    {"ascents", st.ascents},
                    {"descents", st.descents},
                    {"ties", st.ties},
                    {"peaks", st.peaks},
                    {"valleys", st.valleys}};
    emit("stats", rule, std::move(payload));
    return 0;
  }

  parkfn::CountOptions opts;
  opts.workers = o.workers;
  opts.budget = o.budget;
  opts.with_stats = true;
  const parkfn::CountReport report = parkfn::count_parking(rule, opts);
  if (o.format == "csv") {
    print_aggregate_csv(*report.stats);
    return 0;
  }
  json payload = {{"domain_size", report.domain_size.get_str()},
                  {"parking_count", report.parking_count.get_str()},
                  {"elapsed_seconds", report.elapsed.count()},
                  {"aggregate", aggregate_json(*report.stats)}};
  emit("stats", rule, std::move(payload));
  return 0;
}

int run_prob(const ProbOpts& o) {
  const parkfn::RuleSpec rule = resolve_rule(o.src);
  const mpq_class p = parse_rational("--p-heads", o.p_heads);

  if (o.expected) {
    if (!o.prefs.empty()) {
      throw std::invalid_argument("--expected sums over all lists; drop --prefs");
    }
    parkfn::CountOptions opts;
    opts.workers = o.workers;
    opts.budget = o.budget;
    const mpq_class expected = parkfn::expected_park_count(rule, opts, p);
    emit("prob", rule,
         {{"mode", "expected"}, {"p_heads", p.get_str()}, {"expected", expected.get_str()}});
    return 0;
  }

  if (o.prefs.empty()) {
    throw std::invalid_argument("--prefs is required unless --expected is given");
  }
  const parkfn::PreferenceList prefs = parse_prefs(o.prefs);

  if (o.exact) {
    if (o.trials_given) {
      throw std::invalid_argument("--exact and --trials are mutually exclusive");
    }
    const parkfn::ExactProbability e = parkfn::exact_park_probability(prefs, rule, p);
    emit("prob", rule,
         {{"mode", "exact"},
          {"p_heads", p.get_str()},
          {"prefs", prefs},
          {"probability", e.str()}});
    return 0;
  }

  const parkfn::McEstimate est =
      parkfn::mc_park_probability(prefs, rule, o.trials, o.seed, p.get_d(), o.workers);
  emit("prob", rule,
       {{"mode", "mc"},
        {"p_heads", p.get_str()},
        {"prefs", prefs},
        {"trials", est.trials},
        {"successes", est.successes},
        {"estimate", est.estimate},
        {"standard_error", est.standard_error},
        {"seed", std::to_string(est.seed)}});
  return 0;
}

int run_sweep(const SweepOpts& o) {
  const std::vector<std::string> axis_names = parkfn::sweep_axes(o.family);
  auto axis_text = [&](const std::string& name) -> const std::string& {
    if (name == "n") return o.n;
    if (name == "k") return o.k;
    if (name == "m") return o.m;
    return o.d;
  };
  const std::vector<std::pair<std::string, const std::string*>> all_axes = {
      {"n", &o.n}, {"k", &o.k}, {"m", &o.m}, {"d", &o.d}};
  for (const auto& [name, text] : all_axes) {
    const bool wanted =
        std::find(axis_names.begin(), axis_names.end(), name) != axis_names.end();
    if (!wanted && !text->empty()) {
      throw std::invalid_argument("family '" + o.family + "' does not sweep over --" + name);
    }
    if (wanted && text->empty()) {
      throw std::invalid_argument("family '" + o.family + "' requires --" + name);
    }
  }

  std::vector<parkfn::SweepAxis> grid;
  for (const auto& name : axis_names) {
    grid.push_back({name, parse_range("--" + name, axis_text(name))});
  }
  parkfn::CountOptions opts;
  opts.workers = o.workers;
  opts.budget = o.budget;
  const std::vector<parkfn::SweepCell> cells = parkfn::sweep(o.family, grid, opts);

  if (o.format == "csv") {
    for (const auto& name : axis_names) std::cout << name << ",";
    std::cout << "domain_size,parking_count,error\n";
    for (const auto& cell : cells) {
      for (const auto& [name, value] : cell.params) std::cout << value << ",";
      if (cell.report) {
        std::cout << cell.report->domain_size.get_str() << ","
                  << cell.report->parking_count.get_str() << ",\n";
      } else {
        std::cout << ",," << csv_escape(cell.error) << "\n";
      }
    }
    return 0;
  }

  json cell_array = json::array();
  for (const auto& cell : cells) {
    json params;
    for (const auto& [name, value] : cell.params) params[name] = value;
    json rec = {{"params", std::move(params)}};
    if (cell.report) {
      rec["rule"] = parkfn::rule_to_json(cell.report->rule);
      rec["domain_size"] = cell.report->domain_size.get_str();
      rec["parking_count"] = cell.report->parking_count.get_str();
      rec["elapsed_seconds"] = cell.report->elapsed.count();
    } else {
      rec["error"] = cell.error;
    }
    cell_array.push_back(std::move(rec));
  }
  const json record = {{"schema_version", kSchemaVersion},
                       {"command", "sweep"},
                       {"family", o.family},
                       {"payload", {{"cells", std::move(cell_array)}}}};
  std::cout << record.dump(2) << "\n";
  return 0;
}

int run_validate(const ValidateOpts& o) {
  const parkfn::RuleSpec rule = resolve_rule(o.src, /*check=*/false);
  const std::vector<std::string> violations = parkfn::validate(rule);
  emit("validate", rule, {{"violations", violations}});
  return violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parkfn - a one-way-street parking simulator, counter, and analyzer"};
  app.require_subcommand(1);

  SimulateOpts sim;
  auto* simulate =
      app.add_subcommand("simulate", "park one preference list and report the outcome");
  add_rule_source(simulate, sim.src);
  simulate->add_option("--prefs", sim.prefs, "comma-separated preferences, e.g. 1,2,4,2,2")
      ->required();
  simulate->add_flag("--trace", sim.with_trace, "include the per-car probe trace");

  CountOpts cnt;
  auto* count = app.add_subcommand("count", "count the lists on which every car parks");
  add_rule_source(count, cnt.src);
  count->add_option("--workers", cnt.workers, "worker threads (default: PARKFN_WORKERS or all)");
  count->add_option("--budget", cnt.budget, "largest domain size to enumerate");
  count->add_flag("--prune", cnt.prune, "prefix pruning for forward-only unit rules");
  count->add_flag("--with-stats", cnt.with_stats, "aggregate list statistics while counting");
  count->add_option("--format", cnt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  StatsOpts sta;
  auto* stats = app.add_subcommand("stats", "list statistics: one list, or aggregated over all");
  add_rule_source(stats, sta.src);
  stats->add_option("--prefs", sta.prefs, "statistics of this single list");
  stats->add_option("--workers", sta.workers, "worker threads");
  stats->add_option("--budget", sta.budget, "largest domain size to enumerate");
  stats->add_option("--format", sta.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  ProbOpts prb;
  auto* prob = app.add_subcommand("prob", "parking probability for rules with coin-flip cars");
  add_rule_source(prob, prb.src);
  prob->add_option("--prefs", prb.prefs, "the preference list to evaluate");
  prob->add_flag("--exact", prb.exact, "exact branch-tree probability");
  prob->add_flag("--expected", prb.expected, "expected number of parking lists over [m]^n");
  auto* trials_opt = prob->add_option("--trials", prb.trials, "Monte Carlo trials (default 100000)");
  prob->add_option("--seed", prb.seed, "Monte Carlo seed (default 42)");
  prob->add_option("--p-heads", prb.p_heads, "heads probability as a rational (default 1/2)");
  prob->add_option("--workers", prb.workers, "worker threads");
  prob->add_option("--budget", prb.budget, "largest domain size for --expected");

  SweepOpts swp;
  auto* sweep = app.add_subcommand("sweep", "count across a preset parameter grid");
  sweep
      ->add_option("--family", swp.family,
                   "classical, naples, countdown, odd_back_even_forward, teleport, clown, scooter")
      ->required();
  sweep->add_option("--n", swp.n, "axis values, e.g. 2..5 or 1,3,5");
  sweep->add_option("--k", swp.k, "axis values");
  sweep->add_option("--m", swp.m, "axis values");
  sweep->add_option("--d", swp.d, "axis values");
  sweep->add_option("--workers", swp.workers, "worker threads");
  sweep->add_option("--budget", swp.budget, "largest domain size per cell");
  sweep->add_option("--format", swp.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  ValidateOpts val;
  auto* validate = app.add_subcommand("validate", "report every invariant violation of a rule");
  add_rule_source(validate, val.src);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  prb.trials_given = trials_opt->count() > 0;

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (count->parsed()) return run_count(cnt);
    if (stats->parsed()) return run_stats(sta);
    if (prob->parsed()) return run_prob(prb);
    if (sweep->parsed()) return run_sweep(swp);
    if (validate->parsed()) return run_validate(val);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
