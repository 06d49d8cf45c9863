// rcur-cli: command-line front end over the C API.
// Exit codes: 0 ok, 1 usage or I/O, 2 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rcur/rcur.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kUsage = 1;
constexpr int kNumeric = 2;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(rcur_status s) {
  switch (s) {
    case RCUR_E_RANK_DEFICIENT:
    case RCUR_E_RANK_DEFICIENT_CORE:
    case RCUR_E_INSUFFICIENT_SAMPLES:
    case RCUR_E_DEGENERATE:
    case RCUR_E_INTERNAL:
      return kNumeric;
    default:
      return kUsage;
  }
}

void check(rcur_status s, const std::string& what) {
  if (s != RCUR_OK)
    throw Failure{exit_code_for(s),
                  what + ": " + rcur_status_name(s) + ": " + rcur_last_error()};
}

struct MatrixDeleter {
  void operator()(rcur_matrix* m) const { rcur_matrix_destroy(m); }
};
struct RpcaDeleter {
  void operator()(rcur_rpca_result* r) const { rcur_rpca_result_destroy(r); }
};
struct CurDeleter {
  void operator()(rcur_cur_result* r) const { rcur_cur_result_destroy(r); }
};
using MatrixPtr = std::unique_ptr<rcur_matrix, MatrixDeleter>;
using RpcaPtr = std::unique_ptr<rcur_rpca_result, RpcaDeleter>;
using CurPtr = std::unique_ptr<rcur_cur_result, CurDeleter>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  rcur_string_free(s);
  return out;
}

struct Loaded {
  MatrixPtr m;
  bool frames = false;
  size_t height = 0, width = 0;
};

Loaded load_input(const std::string& path) {
  Loaded out;
  rcur_matrix* m = nullptr;
  if (fs::is_directory(path)) {
    check(rcur_frames_load(path.c_str(), &m, &out.height, &out.width), "reading frames " + path);
    out.frames = true;
  } else {
    check(rcur_matrix_load(path.c_str(), &m), "reading " + path);
  }
  out.m.reset(m);
  return out;
}

MatrixPtr load_matrix(const std::string& path) {
  rcur_matrix* m = nullptr;
  check(rcur_matrix_load(path.c_str(), &m), "reading " + path);
  return MatrixPtr(m);
}

// Explicit --truth wins; otherwise a manifest next to the input may name it.
MatrixPtr find_truth(const std::string& input, const std::string& explicit_path, json& report) {
  std::string path = explicit_path;
  if (path.empty()) {
    char* found = nullptr;
    check(rcur_truth_for(input.c_str(), &found), "looking up ground truth");
    path = take_string(found);
  }
  if (path.empty()) {
    report["truth"] = nullptr;
    return nullptr;
  }
  report["truth"] = path;
  return load_matrix(path);
}

struct Common {
  std::string input;
  std::string out = "out";
  std::string format = "bin";
  std::string report;
  std::string truth;
  size_t rank = 0;
  uint64_t seed = 0;
  double tol = 1e-9;
  size_t max_iters = 100;
  double xi = 1.0;
  double rho = 0.5;
  std::string rows = "auto:5";
  std::string cols = "auto:5";
  std::string size_rule = "log_n";
};

rcur_format format_of(const Common& c) { return c.format == "csv" ? RCUR_FORMAT_CSV : RCUR_FORMAT_BIN; }

std::string ext(const Common& c) { return c.format == "csv" ? ".csv" : ".bin"; }

rcur_rpca_config rpca_config(const Common& c) {
  rcur_rpca_config cfg;
  rcur_rpca_config_default(&cfg);
  cfg.target_rank = c.rank;
  cfg.tol = c.tol;
  cfg.max_iters = c.max_iters;
  cfg.threshold_scale = c.xi;
  cfg.threshold_decay = c.rho;
  return cfg;
}

rcur_size_variant variant_of(const std::string& rule) {
  if (rule == "log_rn") return RCUR_SIZE_LOG_RN;
  if (rule == "video") return RCUR_SIZE_PAPER_VIDEO;
  return RCUR_SIZE_LOG_N;
}

rcur_sample_spec sample_spec(const std::string& text, const std::string& rule, uint64_t seed) {
  rcur_sample_spec s{0, 5.0, variant_of(rule), RCUR_WITHOUT_REPLACEMENT, seed};
  if (text.rfind("auto", 0) == 0) {
    if (text.size() > 4) {
      if (text[4] != ':') throw Failure{kUsage, "bad size '" + text + "', expected N or auto:<c>"};
      try {
        s.c = std::stod(text.substr(5));
      } catch (const std::exception&) {
        throw Failure{kUsage, "bad size '" + text + "', expected N or auto:<c>"};
      }
    }
    if (!(s.c > 0)) throw Failure{kUsage, "auto:<c> needs c > 0"};
    return s;
  }
  try {
    size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size() || v <= 0) throw std::invalid_argument(text);
    s.count = static_cast<size_t>(v);
  } catch (const std::exception&) {
    throw Failure{kUsage, "bad size '" + text + "', expected N or auto:<c>"};
  }
  return s;
}

rcur_cur_config cur_config(const Common& c) {
  rcur_cur_config cfg;
  rcur_cur_config_default(&cfg);
  cfg.rpca = rpca_config(c);
  cfg.rows = sample_spec(c.rows, c.size_rule, c.seed);
  cfg.cols = sample_spec(c.cols, c.size_rule, c.seed ^ 0x9e3779b97f4a7c15ULL);
  return cfg;
}

void add_input(CLI::App* cmd, Common& c, const char* what) {
  cmd->add_option("input", c.input, what)->required();
}

void add_output(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
  cmd->add_option("--format", c.format, "Matrix file format")
      ->check(CLI::IsMember({"csv", "bin"}))
      ->capture_default_str();
  cmd->add_option("--report", c.report, "JSON report path (default <out>/report.json)");
}

void add_rpca(CLI::App* cmd, Common& c) {
  cmd->add_option("--rank", c.rank, "Target rank r")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--tol", c.tol, "Relative residual tolerance")->capture_default_str();
  cmd->add_option("--max-iters", c.max_iters, "Iteration cap")->capture_default_str();
  cmd->add_option("--xi", c.xi, "Threshold scale")->capture_default_str();
  cmd->add_option("--rho", c.rho, "Threshold decay in (0, 1)")->capture_default_str();
  cmd->add_option("--truth", c.truth, "Ground-truth L (default: from manifest.json next to input)");
}

void add_sampling(CLI::App* cmd, Common& c, const std::string& default_size) {
  // Shared storage across commands; the per-command default is applied after parsing.
  cmd->add_option("--rows", c.rows, "Row sample size: N or auto:<c>")->default_str(default_size);
  cmd->add_option("--cols", c.cols, "Column sample size: N or auto:<c>")->default_str(default_size);
  cmd->add_option("--size-rule", c.size_rule, "Heuristic behind auto:<c>")
      ->check(CLI::IsMember({"log_n", "log_rn", "video"}))
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Sampling seed")->capture_default_str();
}

json echo_config(const CLI::App* cmd) {
  json cfg = json::object();
  for (const CLI::Option* opt : cmd->get_options()) {
    std::string name = opt->get_name(false, true);
    if (name.empty() || name.find("help") != std::string::npos) continue;
    while (!name.empty() && name.front() == '-') name.erase(0, 1);
    const auto& results = opt->results();
    if (opt->get_type_size() == 0) {
      cfg[name] = opt->count() > 0;
    } else if (!results.empty()) {
      cfg[name] = results.size() == 1 ? json(results.front()) : json(results);
    } else if (!opt->get_default_str().empty()) {
      cfg[name] = opt->get_default_str();
    } else {
      cfg[name] = nullptr;
    }
  }
  return cfg;
}

json diagnostics_json(const rcur_diagnostics& d) {
  char* text = nullptr;
  check(rcur_diagnostics_json(&d, &text), "serializing diagnostics");
  return json::parse(take_string(text));
}

json trace_json(const rcur_rpca_result* r) {
  json j;
  j["iterations"] = rcur_rpca_result_iterations(r);
  j["converged"] = rcur_rpca_result_converged(r) != 0;
  j["trace_monotone"] = rcur_rpca_result_trace_monotone(r) != 0;
  j["residual_norm"] = rcur_rpca_result_residual_norm(r);
  j["mu_used"] = rcur_rpca_result_mu_used(r);
  const double* t = rcur_rpca_result_trace(r);
  j["residual_trace"] = std::vector<double>(t, t + rcur_rpca_result_trace_length(r));
  return j;
}

std::string save(const rcur_matrix* m, const Common& c, const char* stem) {
  fs::create_directories(c.out);
  const std::string path = (fs::path(c.out) / (std::string(stem) + ext(c))).string();
  check(rcur_matrix_save(m, path.c_str(), format_of(c)), "writing " + path);
  return path;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- commands ----

int cmd_synth(const Common& c, bool video, const rcur_synth_config& sc,
              const rcur_video_config& vc, json& report) {
  char* manifest = nullptr;
  const auto t0 = Clock::now();
  if (video)
    check(rcur_video_save(&vc, c.out.c_str(), format_of(c), &manifest), "generating video");
  else
    check(rcur_synth_save(&sc, c.out.c_str(), format_of(c), &manifest), "generating instance");
  report["timings"] = {{"total_seconds", seconds_since(t0)}};
  report["manifest"] = json::parse(take_string(manifest));
  report["outputs"] = {{"dir", c.out}, {"manifest", (fs::path(c.out) / "manifest.json").string()}};
  return 0;
}

int cmd_rpca(const Common& c, json& report) {
  Loaded in = load_input(c.input);
  MatrixPtr truth = find_truth(c.input, c.truth, report);
  const rcur_rpca_config cfg = rpca_config(c);
  rcur_rpca_result* raw = nullptr;
  const auto t0 = Clock::now();
  check(rcur_altproj(in.m.get(), &cfg, &raw), "altproj");
  const double solve = seconds_since(t0);
  RpcaPtr res(raw);

  rcur_matrix *l = nullptr, *s = nullptr;
  check(rcur_rpca_result_low_rank(res.get(), &l), "altproj");
  MatrixPtr low(l);
  check(rcur_rpca_result_sparse(res.get(), &s), "altproj");
  MatrixPtr sparse(s);

  rcur_diagnostics d;
  check(rcur_diagnose(truth ? truth.get() : low.get(), c.rank, sparse.get(),
                      truth ? low.get() : nullptr, nullptr, 0, nullptr, 0, &d),
        "diagnostics");
  report["timings"] = {{"solve_seconds", solve}};
  report["diagnostics"] = diagnostics_json(d);
  report["convergence"] = trace_json(res.get());
  report["outputs"] = {{"low_rank", save(low.get(), c, "low_rank")},
                       {"sparse", save(sparse.get(), c, "sparse")}};
  if (!rcur_rpca_result_converged(res.get())) {
    report["error"] = "altproj did not reach the tolerance";
    return kNumeric;
  }
  return 0;
}

int cmd_cur(const Common& c, bool hybrid, json& report) {
  Loaded in = load_input(c.input);
  MatrixPtr truth = find_truth(c.input, c.truth, report);
  const rcur_cur_config cfg = cur_config(c);
  rcur_cur_result* raw = nullptr;
  const auto t0 = Clock::now();
  check(hybrid ? rcur_cur_hybrid(in.m.get(), c.rank, &cfg, &raw)
               : rcur_cur_uniform(in.m.get(), c.rank, &cfg, &raw),
        hybrid ? "hybrid" : "rcur");
  const double solve = seconds_since(t0);
  CurPtr res(raw);

  rcur_matrix* l = nullptr;
  const auto t1 = Clock::now();
  check(rcur_cur_result_reconstruct(res.get(), &l), "reconstruct");
  const double assemble = seconds_since(t1);
  MatrixPtr low(l);

  const size_t nr = rcur_cur_result_row_count(res.get());
  const size_t nc = rcur_cur_result_col_count(res.get());
  const size_t* rows = rcur_cur_result_rows(res.get());
  const size_t* cols = rcur_cur_result_cols(res.get());

  rcur_diagnostics d;
  check(rcur_diagnose(truth ? truth.get() : low.get(), c.rank, nullptr,
                      truth ? low.get() : nullptr, rows, nr, cols, nc, &d),
        "diagnostics");

  report["timings"] = {{"solve_seconds", solve}, {"reconstruct_seconds", assemble}};
  report["diagnostics"] = diagnostics_json(d);
  report["selection"] = {{"rows", std::vector<size_t>(rows, rows + nr)},
                         {"cols", std::vector<size_t>(cols, cols + nc)},
                         {"retries", rcur_cur_result_retries(res.get())},
                         {"mu_rows", rcur_cur_result_mu_rows(res.get())},
                         {"mu_cols", rcur_cur_result_mu_cols(res.get())}};
  report["convergence"] = {{"columns", trace_json(rcur_cur_result_rpca(res.get(), 0))},
                           {"rows", trace_json(rcur_cur_result_rpca(res.get(), 1))}};
  json outputs = {{"low_rank", save(low.get(), c, "low_rank")}};

  if (in.frames) {
    rcur_matrix* ch = nullptr;
    check(rcur_cur_result_c_hat(res.get(), &ch), "canonical frames");
    MatrixPtr c_hat(ch);
    const std::string dir = (fs::path(c.out) / "canonical").string();
    fs::create_directories(dir);
    check(rcur_frames_save(c_hat.get(), in.height, in.width, dir.c_str(), "canonical"),
          "writing canonical frames");
    outputs["canonical_frames"] = dir;
    outputs["canonical_count"] = rcur_matrix_cols(c_hat.get());
  }
  report["outputs"] = outputs;

  const bool converged = rcur_rpca_result_converged(rcur_cur_result_rpca(res.get(), 0)) &&
                         rcur_rpca_result_converged(rcur_cur_result_rpca(res.get(), 1));
  if (!converged) {
    report["error"] = "altproj on a sampled block did not reach the tolerance";
    return kNumeric;
  }
  return 0;
}

int cmd_css(const Common& c, size_t k, json& report) {
  MatrixPtr x = load_matrix(c.input);
  const size_t m = rcur_matrix_cols(x.get());
  if (k == 0) k = rcur_matrix_rows(x.get());
  std::vector<size_t> picked(k);
  std::vector<double> criteria(m > k ? m - k : 0);
  const auto t0 = Clock::now();
  check(rcur_greedy_css(x.get(), k, picked.data(), criteria.data()), "css");
  report["timings"] = {{"solve_seconds", seconds_since(t0)}};
  report["selected"] = picked;
  report["criteria"] = criteria;

  // beta of the selection against the row space of X.
  rcur_diagnostics d;
  check(rcur_diagnose(x.get(), rcur_matrix_rows(x.get()), nullptr, nullptr, nullptr, 0,
                      picked.data(), k, &d),
        "diagnostics");
  report["diagnostics"] = diagnostics_json(d);
  for (size_t i = 0; i < k; ++i) std::cout << picked[i] << (i + 1 < k ? ' ' : '\n');
  return 0;
}

std::vector<size_t> parse_list(const std::string& text) {
  std::vector<size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(static_cast<size_t>(std::stoull(item)));
    } catch (const std::exception&) {
      throw Failure{kUsage, "bad index list '" + text + "'"};
    }
  }
  return out;
}

int cmd_diagnose(const Common& c, const std::string& sparse_path, const std::string& estimate_path,
                 const std::string& rows_text, const std::string& cols_text, json& report) {
  MatrixPtr l = load_matrix(c.input);
  MatrixPtr s = sparse_path.empty() ? nullptr : load_matrix(sparse_path);
  MatrixPtr e = estimate_path.empty() ? nullptr : load_matrix(estimate_path);
  const auto rows = parse_list(rows_text);
  const auto cols = parse_list(cols_text);
  rcur_diagnostics d;
  check(rcur_diagnose(l.get(), c.rank, s.get(), e.get(), rows_text.empty() ? nullptr : rows.data(),
                      rows.size(), cols_text.empty() ? nullptr : cols.data(), cols.size(), &d),
        "diagnostics");
  report["diagnostics"] = diagnostics_json(d);
  if (!cols.empty()) {
    rcur_bound_check checks[5];
    check(rcur_verify_bounds(l.get(), cols.data(), cols.size(), c.rank, checks), "verify bounds");
    json arr = json::array();
    for (const auto& b : checks)
      arr.push_back({{"name", b.name}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"holds", b.holds != 0}});
    report["bounds"] = arr;
  }
  std::cout << report["diagnostics"].dump(2) << '\n';
  return 0;
}

int cmd_frames(const Common& c, size_t height, size_t width, json& report) {
  if (fs::is_directory(c.input)) {
    Loaded in = load_input(c.input);
    fs::path target = c.out;
    if (target.extension() != ".csv" && target.extension() != ".bin")
      target /= "frames" + ext(c);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const rcur_format f = target.extension() == ".csv" ? RCUR_FORMAT_CSV : RCUR_FORMAT_BIN;
    check(rcur_matrix_save(in.m.get(), target.string().c_str(), f), "writing " + target.string());
    report["outputs"] = {{"matrix", target.string()},
                         {"height", in.height},
                         {"width", in.width},
                         {"frames", rcur_matrix_cols(in.m.get())}};
    return 0;
  }
  if (height == 0 || width == 0)
    throw Failure{kUsage, "frames: --height and --width are required for a matrix input"};
  MatrixPtr m = load_matrix(c.input);
  fs::create_directories(c.out);
  check(rcur_frames_save(m.get(), height, width, c.out.c_str(), "frame"), "writing frames");
  report["outputs"] = {{"dir", c.out}, {"frames", rcur_matrix_cols(m.get())}};
  return 0;
}

json bench_json(const rcur_bench_report& b) {
  return {{"m", b.m},
          {"n", b.n},
          {"r", b.r},
          {"alpha", b.alpha},
          {"kappa", b.kappa},
          {"seed", b.seed},
          {"rcur_seconds", b.rcur_seconds},
          {"rpca_seconds", b.rpca_seconds},
          {"speedup", b.speedup},
          {"rcur_rel_error", b.rcur_rel_error},
          {"rpca_rel_error", b.rpca_rel_error},
          {"trials", b.trials},
          {"failures", b.failures}};
}

int cmd_bench(const Common& c, const rcur_synth_config& sc, size_t trials,
              const std::string& table_format, json& report) {
  rcur_cur_config cfg = cur_config(c);
  rcur_bench_report b;
  if (c.input.empty()) {
    rcur_synth_config inst = sc;
    inst.r = c.rank;
    inst.seed = c.seed;
    check(rcur_bench_synth(&inst, &cfg, trials, &b), "bench");
  } else {
    Loaded in = load_input(c.input);
    MatrixPtr truth = find_truth(c.input, c.truth, report);
    check(rcur_bench_matrix(in.m.get(), truth.get(), c.rank, &cfg, trials, c.seed, &b), "bench");
  }
  report["bench"] = bench_json(b);
  char* table = nullptr;
  check(rcur_bench_table(&b, 1, table_format == "csv" ? RCUR_TABLE_CSV : RCUR_TABLE_MARKDOWN,
                         &table),
        "bench table");
  const std::string text = take_string(table);
  report["table"] = text;
  std::cout << text;
  if (b.failures == b.trials) {
    report["error"] = "every trial failed";
    return kNumeric;
  }
  return 0;
}

void write_report(const json& report, const Common& c) {
  fs::path path = c.report;
  if (path.empty()) {
    // frames may point --out at a matrix file rather than a directory.
    const fs::path out = c.out;
    const bool file = out.extension() == ".bin" || out.extension() == ".csv";
    path = file ? out.parent_path() / "report.json" : out / "report.json";
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  f << report.dump(2) << '\n';
  if (!f) throw Failure{kUsage, "cannot write report " + path.string()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust CUR decompositions of D = L + S"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rcur_version());

  Common c;
  rcur_synth_config sc;
  rcur_synth_config_default(&sc);
  rcur_video_config vc;
  rcur_video_config_default(&vc);

  // synth
  bool video = false;
  auto* synth = app.add_subcommand("synth", "Generate a seeded L + S instance with its manifest");
  synth->add_option("--m", sc.m, "Rows")->capture_default_str();
  synth->add_option("--n", sc.n, "Columns")->capture_default_str();
  synth->add_option("--rank", sc.r, "Rank of L")->capture_default_str();
  synth->add_option("--alpha", sc.alpha, "Sparsity level of S")->capture_default_str();
  synth->add_option("--kappa", sc.kappa, "Condition number of L")->capture_default_str();
  synth->add_option("--magnitude", sc.outlier_magnitude, "Outlier size in units of mean |L|")
      ->capture_default_str();
  synth->add_option("--seed", sc.seed, "Generator seed")->capture_default_str();
  synth->add_flag("--video", video, "Synthetic video instead (writes frames/ as well)");
  synth->add_option("--frames", vc.frames, "Video: frame count")->capture_default_str();
  synth->add_option("--height", vc.height, "Video: frame height")->capture_default_str();
  synth->add_option("--width", vc.width, "Video: frame width")->capture_default_str();
  synth->add_option("--blob", vc.blob_size, "Video: foreground square side")->capture_default_str();
  add_output(synth, c);

  auto* rpca = app.add_subcommand("rpca", "AltProj on the full matrix");
  add_input(rpca, c, "Matrix file or frame directory");
  add_rpca(rpca, c);
  add_output(rpca, c);

  auto* rcur = app.add_subcommand("rcur", "Robust CUR with uniform sampling");
  add_input(rcur, c, "Matrix file or frame directory");
  add_rpca(rcur, c);
  add_sampling(rcur, c, "auto:5");
  add_output(rcur, c);

  auto* hybrid = app.add_subcommand("hybrid", "Robust CUR refined to exactly r rows and columns");
  add_input(hybrid, c, "Matrix file or frame directory");
  add_rpca(hybrid, c);
  add_sampling(hybrid, c, "auto:5");
  add_output(hybrid, c);

  size_t css_k = 0;
  auto* css = app.add_subcommand("css", "Greedy column selection on a row-orthonormal matrix");
  add_input(css, c, "r x m matrix file");
  css->add_option("--k", css_k, "Columns to keep (default: row count)");
  add_output(css, c);

  std::string sparse_path, estimate_path, rows_list, cols_list;
  auto* diag = app.add_subcommand("diagnose", "Incoherence, sparsity, beta and error of given matrices");
  add_input(diag, c, "Low-rank matrix L");
  diag->add_option("--rank", c.rank, "Rank r")->required()->check(CLI::PositiveNumber);
  diag->add_option("--sparse", sparse_path, "Sparse matrix S");
  diag->add_option("--estimate", estimate_path, "Estimate of L");
  diag->add_option("--row-list", rows_list, "Comma-separated row indices I");
  diag->add_option("--col-list", cols_list, "Comma-separated column indices J");
  add_output(diag, c);

  size_t height = 0, width = 0;
  auto* frames = app.add_subcommand("frames", "Convert between a PGM directory and a matrix file");
  add_input(frames, c, "Frame directory or matrix file");
  frames->add_option("--height", height, "Frame height (matrix input)");
  frames->add_option("--width", width, "Frame width (matrix input)");
  add_output(frames, c);

  size_t trials = 5;
  std::string table_format = "markdown";
  auto* bench = app.add_subcommand("bench", "Time robust CUR against full-matrix AltProj");
  bench->add_option("input", c.input, "Matrix file or frame directory (default: synthetic)");
  bench->add_option("--m", sc.m, "Synthetic rows")->capture_default_str();
  bench->add_option("--n", sc.n, "Synthetic columns")->capture_default_str();
  bench->add_option("--alpha", sc.alpha, "Synthetic sparsity")->capture_default_str();
  bench->add_option("--kappa", sc.kappa, "Synthetic condition number")->capture_default_str();
  bench->add_option("--trials", trials, "Trials")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--table", table_format, "Table format")
      ->check(CLI::IsMember({"markdown", "csv"}))
      ->capture_default_str();
  add_rpca(bench, c);
  add_sampling(bench, c, "auto:1");
  add_output(bench, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  if (const CLI::Option* o = cmd->get_option_no_throw("--rows"); o && o->count() == 0)
    c.rows = o->get_default_str();
  if (const CLI::Option* o = cmd->get_option_no_throw("--cols"); o && o->count() == 0)
    c.cols = o->get_default_str();
  json report;
  report["command"] = cmd->get_name();
  report["version"] = rcur_version();
  report["config"] = echo_config(cmd);

  int code = 0;
  const auto t0 = Clock::now();
  try {
    if (cmd == synth) code = cmd_synth(c, video, sc, vc, report);
    else if (cmd == rpca) code = cmd_rpca(c, report);
    else if (cmd == rcur) code = cmd_cur(c, false, report);
    else if (cmd == hybrid) code = cmd_cur(c, true, report);
    else if (cmd == css) code = cmd_css(c, css_k, report);
    else if (cmd == diag) code = cmd_diagnose(c, sparse_path, estimate_path, rows_list, cols_list, report);
    else if (cmd == frames) code = cmd_frames(c, height, width, report);
    else if (cmd == bench) code = cmd_bench(c, sc, trials, table_format, report);
  } catch (const Failure& f) {
    code = f.code;
    report["error"] = f.message;
  } catch (const std::exception& e) {
    code = kUsage;
    report["error"] = e.what();
  }
  report["timings"]["wall_seconds"] = seconds_since(t0);
  report["exit_code"] = code;
  if (report.contains("error"))
    std::cerr << "error: " << report["error"].get<std::string>() << '\n';

  try {
    write_report(report, c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return code == 0 ? kUsage : code;
  }
  return code;
}
