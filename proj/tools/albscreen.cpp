// albscreen: command-line front end for ALB feature screening, the KDE Bayes
// classifier, scenario simulation and the simulation experiments.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 no viable cutoff (cv).

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <albscreen/albscreen.hpp>
#include <albscreen/bayes_json.hpp>

#ifndef ALBSCREEN_VERSION
#define ALBSCREEN_VERSION "0.0.0"
#endif

namespace {

using namespace albscreen;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_data = 3;
constexpr int exit_no_cutoff = 4;
constexpr int report_schema_version = 1;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fnv1a_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DataError("cannot open '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

LabelColumn parse_label_column(const std::string& s)
{
  if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos)
    return static_cast<std::size_t>(std::stoull(s));
  return s;
}

std::string stem_of(const std::string& path)
{
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path;
  return path.substr(0, dot);
}

void write_text(const std::string& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw DataError("cannot write '" + path + "'");
  out << text;
}

json null_json(double v)
{
  return std::isfinite(v) ? json(v) : json(nullptr);
}

// ---------------------------------------------------------------------------
// Screening flags shared by `screen` and `classify`

struct ScreenOptions {
  std::string method = "alb";
  std::string cutoff;
  std::uint64_t seed = 0;
  bool drop_constant = false;
};

void add_screen_flags(CLI::App* cmd, ScreenOptions& o)
{
  cmd->add_option("--method", o.method, "Screening statistic: alb or ttest")
      ->check(CLI::IsMember({"alb", "ttest"}))
      ->capture_default_str();
  cmd->add_option("--cutoff", o.cutoff,
                  "Selection rule. alb: zero | top-d[=K] | perm=ALPHA,B,D | cv[=C1;C2;...]; "
                  "ttest: p=ALPHA | top-d[=K]. Defaults: zero (alb), p=0.05 (ttest). "
                  "top-d without K keeps n+m features; perm with B=0 uses every feature");
  cmd->add_option("--seed", o.seed, "Seed for permutation nulls and cv splits")->capture_default_str();
  cmd->add_flag("--drop-constant", o.drop_constant, "Remove constant columns before screening");
}

struct ScreenOutcome {
  ScreeningReport report;
  std::vector<std::size_t> kept_columns;  // position in the screened data -> original column
  std::vector<std::size_t> dropped;
  std::optional<std::uint64_t> split_seed;
};

std::vector<std::size_t> to_original(const std::vector<std::size_t>& idx, const std::vector<std::size_t>& kept)
{
  std::vector<std::size_t> out;
  for (auto j : idx)
    out.push_back(kept[j]);
  return out;
}

std::vector<double> parse_real_list(const std::string& s, char sep)
{
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto v = detail::parse_real(detail::trim(item));
    if (!v)
      throw UsageError("not a number: '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

std::size_t parse_count(const std::string& s, const std::string& what)
{
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError(what + " must be a non-negative integer, got '" + s + "'");
  return static_cast<std::size_t>(std::stoull(s));
}

ScreenOutcome run_screening(const Dataset& input, const ScreenOptions& o, unsigned threads)
{
  ScreenOutcome out;
  Dataset data = input;
  out.kept_columns.resize(input.features());
  for (std::size_t j = 0; j < input.features(); ++j)
    out.kept_columns[j] = j;
  if (o.drop_constant) {
    auto [reduced, removed] = drop_constant_features(input);
    out.kept_columns.clear();
    std::size_t r = 0;
    for (std::size_t j = 0; j < input.features(); ++j) {
      if (r < removed.size() && removed[r] == j)
        ++r;
      else
        out.kept_columns.push_back(j);
    }
    out.dropped = std::move(removed);
    data = std::move(reduced);
  }

  const std::string cutoff = o.cutoff.empty() ? (o.method == "alb" ? "zero" : "p=0.05") : o.cutoff;
  const auto eq = cutoff.find('=');
  const std::string kind = cutoff.substr(0, eq);
  const std::string arg = eq == std::string::npos ? "" : cutoff.substr(eq + 1);

  if (o.method == "ttest") {
    if (kind == "p") {
      const auto v = detail::parse_real(arg);
      if (!v || !(*v > 0.0 && *v < 1.0))
        throw UsageError("--cutoff p=ALPHA needs 0 < ALPHA < 1");
      out.report = ttest_screen(data, PValueBelow{*v}, threads);
    } else if (kind == "top-d" || kind == "top-k") {
      const std::size_t k = arg.empty() ? data.rows() : parse_count(arg, "K");
      if (k == 0)
        throw UsageError("--cutoff top-d=K needs K >= 1");
      out.report = ttest_screen(data, TopK{std::min(k, data.features())}, threads);
    } else {
      throw UsageError("--cutoff '" + cutoff + "' is not valid for --method ttest");
    }
  } else if (kind == "zero" && arg.empty()) {
    out.report = zero_select(alb_all(data, threads));
  } else if (kind == "top-d") {
    const std::size_t d = arg.empty() ? data.rows() : parse_count(arg, "K");
    if (d == 0)
      throw UsageError("--cutoff top-d=K needs K >= 1");
    if (d > data.features())
      throw UsageError("--cutoff top-d=" + arg + " exceeds the " + std::to_string(data.features()) + " features");
    out.report = top_d_select(alb_all(data, threads), d);
  } else if (kind == "perm") {
    const auto parts = parse_real_list(arg, ',');
    if (parts.size() != 3)
      throw UsageError("--cutoff perm=ALPHA,B,D needs three values");
    const double alpha = parts[0];
    if (!(alpha > 0.0 && alpha < 1.0) || parts[1] < 0 || parts[2] < 1 || parts[1] != std::floor(parts[1]) ||
        parts[2] != std::floor(parts[2]))
      throw UsageError("--cutoff perm=ALPHA,B,D needs 0 < ALPHA < 1, integer B >= 0, integer D >= 1");
    auto results = alb_all(data, threads);
    std::size_t usable = 0;
    for (const auto& r : results)
      usable += !r.degenerate;
    const auto b = parts[1] == 0 ? usable : static_cast<std::size_t>(parts[1]);
    const auto null = permutation_null(data, b, static_cast<std::size_t>(parts[2]), o.seed, threads);
    out.report = percentile_select(std::move(results), null, alpha);
  } else if (kind == "cv") {
    auto [a, b] = stratified_split(data, 0.5, o.seed);
    std::vector<double> candidates = arg.empty() ? default_cv_candidates(alb_all(a, threads)) : parse_real_list(arg, ';');
    if (candidates.empty() || candidates.size() > 10)
      throw UsageError("--cutoff cv needs between 1 and 10 candidates");
    out.report = cv_select(a, b, candidates, threads);
    std::get<CrossValidated>(out.report.rule).seed = o.seed;
    out.split_seed = o.seed;
  } else {
    throw UsageError("unknown --cutoff '" + cutoff + "'");
  }
  return out;
}

json screening_json(const Dataset& input, const ScreenOutcome& s, const ScreenOptions& o)
{
  const auto& rep = s.report;
  json j;
  j["method"] = o.method;
  j["rule"] = describe(rep.rule);
  j["seed"] = o.seed;
  j["threshold"] = rep.threshold ? json(*rep.threshold) : json(nullptr);
  const auto selected = to_original(rep.selected, s.kept_columns);
  j["selected"] = selected;
  std::vector<std::string> names;
  for (auto c : selected)
    names.push_back(input.feature_name(c));
  j["selected_names"] = names;
  j["dropped_constant"] = s.dropped;
  if (rep.null_summary) {
    const auto& d = *rep.null_summary;
    j["null_summary"] = {{"count", d.count}, {"min", d.min}, {"median", d.median},
                         {"q95", d.q95},     {"max", d.max}, {"mean", d.mean}};
  }
  if (!rep.cv_scores.empty()) {
    auto& cv = j["cv_scores"] = json::array();
    for (const auto& c : rep.cv_scores)
      cv.push_back({{"cutoff", c.cutoff}, {"rand_index", null_json(c.rand_index)}, {"selected", c.selected}});
  }
  std::size_t clamps = 0;
  for (const auto& r : rep.alb_results)
    clamps += r.clamped_densities;
  j["density_floor_hits"] = clamps;
  return j;
}

std::string features_csv(const Dataset& input, const ScreenOutcome& s)
{
  const auto& rep = s.report;
  std::vector<bool> chosen(input.features(), false);
  for (auto c : to_original(rep.selected, s.kept_columns))
    chosen[c] = true;
  std::ostringstream out;
  if (!rep.alb_results.empty()) {
    out << "index,name,alb,bandwidth,scale_source,degenerate,selected\n";
    for (std::size_t k = 0; k < rep.alb_results.size(); ++k) {
      const auto& r = rep.alb_results[k];
      const auto c = s.kept_columns[k];
      out << c << ',' << input.feature_name(c) << ',' << detail::format_real(r.alb) << ','
          << detail::format_real(r.bandwidth.value) << ',' << to_string(r.bandwidth.scale_source) << ','
          << (r.degenerate ? 1 : 0) << ',' << (chosen[c] ? 1 : 0) << '\n';
    }
  } else {
    out << "index,name,t,df,p_value,selected\n";
    for (std::size_t k = 0; k < rep.ttest_results.size(); ++k) {
      const auto& r = rep.ttest_results[k];
      const auto c = s.kept_columns[k];
      out << c << ',' << input.feature_name(c) << ',' << detail::format_real(r.t) << ','
          << detail::format_real(r.df) << ',' << detail::format_real(r.p_value) << ',' << (chosen[c] ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

json input_json(const std::string& path, const Dataset& ds, const std::string& label_col)
{
  return {{"path", path},
          {"fnv1a64", fnv1a_file(path)},
          {"rows", ds.rows()},
          {"features", ds.features()},
          {"label_column", label_col},
          {"label_mapping", {{"0", ds.label_names[0]}, {"1", ds.label_names[1]}}},
          {"class_counts", {ds.n0(), ds.n1()}}};
}

json report_header(const std::string& command)
{
  return {{"schema", "albscreen.run-report"},
          {"schema_version", report_schema_version},
          {"tool_version", ALBSCREEN_VERSION},
          {"command", command}};
}

using Clock = std::chrono::steady_clock;

json timing_json(Clock::time_point start, unsigned threads)
{
  return {{"elapsed_seconds", std::chrono::duration<double>(Clock::now() - start).count()}, {"threads", threads}};
}

// ---------------------------------------------------------------------------
// Commands

struct Common {
  unsigned threads = default_threads();
};

struct ScreenArgs {
  std::string input;
  std::string label_col;
  std::string out;
  ScreenOptions screen;
};

int cmd_screen(const ScreenArgs& a, const Common& c)
{
  const auto start = Clock::now();
  const auto data = load_csv(a.input, parse_label_column(a.label_col));
  const auto outcome = run_screening(data, a.screen, c.threads);

  json report = report_header("screen");
  report["input"] = input_json(a.input, data, a.label_col);
  report["screening"] = screening_json(data, outcome, a.screen);
  std::vector<std::string> warnings;
  if (outcome.report.selected.empty())
    warnings.push_back("no feature survived screening");
  report["warnings"] = warnings;
  report["timing"] = timing_json(start, c.threads);

  const auto stem = stem_of(a.out);
  write_text(a.out, report.dump(2) + "\n");
  write_text(stem + ".features.csv", features_csv(data, outcome));
  std::ostringstream sel;
  for (auto j : to_original(outcome.report.selected, outcome.kept_columns))
    sel << j << ',' << data.feature_name(j) << '\n';
  write_text(stem + ".selected.txt", sel.str());
  std::cout << outcome.report.selected.size() << " of " << data.features() << " features selected ("
            << describe(outcome.report.rule) << ")\n";
  return exit_ok;
}

struct SimulateArgs {
  std::string scenario = "shape";
  std::size_t m = 20;
  std::size_t n = 20;
  std::size_t p = 500;
  double r = 0.5;
  std::uint64_t seed = 0;
  std::string out_prefix;
};

int cmd_simulate(const SimulateArgs& a, const Common& c)
{
  const auto sim = generate({parse_scenario(a.scenario), a.m, a.n, a.p, a.r, a.seed}, c.threads);
  save_csv(a.out_prefix + ".csv", sim.dataset);
  const auto& mask = sim.important_mask;
  save_mask(a.out_prefix + ".mask.txt", mask);
  std::size_t important = 0;
  for (bool b : mask)
    important += b;
  std::cout << "wrote " << a.out_prefix << ".csv (" << sim.dataset.rows() << " rows, " << a.p << " features, "
            << important << " important)\n";
  return exit_ok;
}

struct ClassifyArgs {
  std::string train;
  std::string test;
  std::string label_col = "label";
  std::string out;
  std::string model_out;
  std::string model_in;
  ScreenOptions screen;
};

int cmd_classify(const ClassifyArgs& a, const Common& c)
{
  const auto start = Clock::now();
  json report = report_header("classify");
  BayesKdeModel model;
  std::optional<Dataset> train;
  if (!a.model_in.empty()) {
    std::ifstream in(a.model_in);
    if (!in)
      throw DataError("cannot open '" + a.model_in + "'");
    try {
      model = model_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw DataError(std::string("model: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw DataError(e.what());
    }
    report["model_source"] = {{"path", a.model_in}, {"fnv1a64", fnv1a_file(a.model_in)}};
  } else {
    if (a.train.empty())
      throw UsageError("classify needs --train or --model");
    train = load_csv(a.train, parse_label_column(a.label_col));
    const auto outcome = run_screening(*train, a.screen, c.threads);
    model = fit_bayes(*train, to_original(outcome.report.selected, outcome.kept_columns));
    report["input"] = input_json(a.train, *train, a.label_col);
    report["screening"] = screening_json(*train, outcome, a.screen);
  }
  if (!a.model_out.empty())
    write_text(a.model_out, model_to_json(model).dump(2) + "\n");

  CsvOptions opts;
  opts.label_names = model.label_names;
  opts.label_optional = true;
  const auto test = load_csv(a.test, parse_label_column(a.label_col), opts);
  if (test.features() != model.input_width)
    throw SchemaError("test data has " + std::to_string(test.features()) + " features, model expects " +
                      std::to_string(model.input_width));
  if (train && !train->feature_names.empty() && !test.feature_names.empty() && train->feature_names != test.feature_names)
    throw SchemaError("test feature names differ from training feature names");

  const auto preds = predict_all(model, test, c.threads);
  std::ostringstream csv;
  csv << "row,posterior0,posterior1,predicted" << (test.labeled() ? ",truth" : "") << '\n';
  std::vector<int> labels(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    labels[i] = preds[i].label;
    const auto x = test.row(i);
    csv << i << ',' << detail::format_real(preds[i].posterior0) << ',' << detail::format_real(posterior_class1(model, x))
        << ',' << model.label_names[static_cast<std::size_t>(preds[i].label)];
    if (test.labeled())
      csv << ',' << model.label_names[static_cast<std::size_t>(test.labels()[i])];
    csv << '\n';
  }
  write_text(a.out, csv.str());

  report["model"] = {{"selected", model.selected()},
                     {"priors", {model.prior0, model.prior1}},
                     {"class_counts", {model.n0, model.n1}},
                     {"warnings", model.warnings}};
  report["test"] = {{"path", a.test}, {"fnv1a64", fnv1a_file(a.test)}, {"rows", test.rows()}};
  if (test.labeled()) {
    const double ri = rand_index(labels, test.labels());
    const auto cc = confusion(labels, test.labels(), 1);
    report["metrics"] = {{"rand_index", ri},
                         {"positive_label", model.label_names[1]},
                         {"tp", cc.tp},
                         {"fp", cc.fp},
                         {"fn", cc.fn},
                         {"tn", cc.tn}};
    std::cout << "rand index " << detail::format_real(ri) << " on " << test.rows() << " rows\n";
  }
  report["timing"] = timing_json(start, c.threads);
  write_text(stem_of(a.out) + ".report.json", report.dump(2) + "\n");
  return exit_ok;
}

struct ExperimentArgs {
  std::string name;
  std::string scenario = "shape";
  std::size_t p = 500;
  double r = 0.5;
  std::vector<std::size_t> sizes{10, 20, 40};
  std::size_t reps = 1;
  std::string cutoff = "zero";
  double ttest_alpha = 0.005;
  std::size_t permutations = 3;
  std::uint64_t seed = 0;
  std::string out;
};

AlbCutoff parse_experiment_cutoff(const std::string& s)
{
  if (s == "zero")
    return ZeroCutoff{};
  if (s == "top-d")
    return TopD{0};
  if (s.rfind("top-d=", 0) == 0)
    return TopD{parse_count(s.substr(6), "K")};
  if (s.rfind("perm=", 0) == 0) {
    const auto parts = parse_real_list(s.substr(5), ',');
    if (parts.size() != 3 || !(parts[0] > 0.0 && parts[0] < 1.0) || parts[1] < 0 || parts[2] < 1)
      throw UsageError("--cutoff perm=ALPHA,B,D needs 0 < ALPHA < 1, B >= 0, D >= 1");
    return Percentile{parts[0], static_cast<std::size_t>(parts[1]), static_cast<std::size_t>(parts[2]), 0};
  }
  throw UsageError("unknown --cutoff '" + s + "' (zero | top-d[=K] | perm=ALPHA,B,D)");
}

int cmd_experiment(const ExperimentArgs& a, const Common& c)
{
  ExperimentSpec spec;
  spec.scenario = parse_scenario(a.scenario);
  spec.p = a.p;
  spec.r = a.r;
  spec.sizes = a.sizes;
  spec.replications = a.reps;
  spec.alb_cutoff = parse_experiment_cutoff(a.cutoff);
  spec.ttest_alpha = a.ttest_alpha;
  spec.null_permutations = a.permutations;
  spec.seed = a.seed;
  spec.workers = c.threads;
  if (spec.replications == 0 || spec.sizes.empty())
    throw UsageError("--reps must be >= 1 and --sizes nonempty");
  for (auto s : spec.sizes)
    if (s < 2)
      throw UsageError("--sizes entries must be >= 2");

  std::ostringstream csv;
  if (a.name == "cdf")
    write_cdf_csv(csv, run_cdf_study(spec));
  else if (a.name == "compare")
    write_metric_csv(csv, run_screen_compare(spec));
  else
    write_metric_csv(csv, run_bayes_curve(spec));
  write_text(a.out, csv.str());
  std::cout << "wrote " << a.out << '\n';
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"ALB feature screening, KDE Bayes classification and simulation studies", "albscreen"};
  app.set_version_flag("--version", ALBSCREEN_VERSION);
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (default: $ALBSCREEN_THREADS or 1)")
      ->check(CLI::Range(1u, 1024u));

  auto thread_flag = [&](CLI::App* cmd) {
    cmd->add_option("--threads", common.threads, "Worker threads (default: $ALBSCREEN_THREADS or 1)")
        ->check(CLI::Range(1u, 1024u));
  };

  ScreenArgs screen;
  auto* screen_cmd = app.add_subcommand("screen", "Screen the features of a labeled CSV file");
  screen_cmd->add_option("--input", screen.input, "Input CSV")->required()->check(CLI::ExistingFile);
  screen_cmd->add_option("--label-col", screen.label_col, "Label column: header name or 0-based index")->required();
  screen_cmd->add_option("--out", screen.out,
                         "Report path (JSON); <stem>.features.csv and <stem>.selected.txt are written alongside")
      ->required();
  add_screen_flags(screen_cmd, screen.screen);
  thread_flag(screen_cmd);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic two-class dataset and its importance mask");
  sim_cmd->add_option("--scenario", sim.scenario, "location | scale | shape")
      ->check(CLI::IsMember({"location", "scale", "shape"}))
      ->capture_default_str();
  sim_cmd->add_option("--m", sim.m, "Rows in class 1")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}))->capture_default_str();
  sim_cmd->add_option("--n", sim.n, "Rows in class 0")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}))->capture_default_str();
  sim_cmd->add_option("--p", sim.p, "Number of features")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}))->capture_default_str();
  sim_cmd->add_option("--r", sim.r, "Probability that a feature is important")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("--out-prefix", sim.out_prefix, "Writes <prefix>.csv and <prefix>.mask.txt")->required();
  thread_flag(sim_cmd);

  ClassifyArgs cls;
  auto* cls_cmd = app.add_subcommand("classify", "Screen, fit the KDE Bayes classifier and predict a test CSV");
  cls_cmd->add_option("--train", cls.train, "Training CSV")->check(CLI::ExistingFile);
  cls_cmd->add_option("--test", cls.test, "Test CSV (label column optional)")->required()->check(CLI::ExistingFile);
  cls_cmd->add_option("--label-col", cls.label_col, "Label column: header name or 0-based index")->capture_default_str();
  cls_cmd->add_option("--out", cls.out, "Predictions CSV; <stem>.report.json is written alongside")->required();
  cls_cmd->add_option("--model-out", cls.model_out, "Save the fitted model as JSON");
  cls_cmd->add_option("--model", cls.model_in, "Predict with a saved model instead of training")->check(CLI::ExistingFile);
  add_screen_flags(cls_cmd, cls.screen);
  thread_flag(cls_cmd);

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a simulation study and write tidy CSV");
  exp_cmd->add_option("--name", exp.name, "cdf | compare | bayes-curve")
      ->required()
      ->check(CLI::IsMember({"cdf", "compare", "bayes-curve"}));
  exp_cmd->add_option("--scenario", exp.scenario, "location | scale | shape (compare only)")
      ->check(CLI::IsMember({"location", "scale", "shape"}))
      ->capture_default_str();
  exp_cmd->add_option("--p", exp.p, "Number of features")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}))->capture_default_str();
  exp_cmd->add_option("--r", exp.r, "Probability that a feature is important")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  exp_cmd->add_option("--sizes", exp.sizes, "Per-class training sizes (m = n), comma separated")
      ->delimiter(',')
      ->capture_default_str();
  exp_cmd->add_option("--reps", exp.reps, "Replications per size")->capture_default_str();
  exp_cmd->add_option("--cutoff", exp.cutoff, "ALB cutoff: zero | top-d[=K] | perm=ALPHA,B,D (compare only)")
      ->capture_default_str();
  exp_cmd->add_option("--ttest-alpha", exp.ttest_alpha, "p-value threshold for t-test screening (compare only)")
      ->capture_default_str();
  exp_cmd->add_option("--permutations", exp.permutations, "Label permutations per feature (cdf only)")->capture_default_str();
  exp_cmd->add_option("--seed", exp.seed, "Random seed")->capture_default_str();
  exp_cmd->add_option("--out", exp.out, "Output CSV")->required();
  thread_flag(exp_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*screen_cmd)
      return cmd_screen(screen, common);
    if (*sim_cmd)
      return cmd_simulate(sim, common);
    if (*cls_cmd)
      return cmd_classify(cls, common);
    return cmd_experiment(exp, common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const NoViableCutoff& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_no_cutoff;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_data;
  }
}
