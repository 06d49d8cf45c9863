#include "rcur/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "rcur/diagnostics.hpp"
#include "rcur/error.hpp"
#include "rcur/random.hpp"

namespace rcur {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

template <class F>
double seconds(F&& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Samples {
  std::vector<double> rcur_s, rpca_s, rcur_err, rpca_err;
  std::size_t failures = 0;
};

void run_trial(const Matrix& d, const Matrix* truth, std::size_t r, RcurConfig cfg,
               std::uint64_t trial_seed, Samples& out) {
  cfg.row_sampling.seed = derive_seed(trial_seed, 1);
  cfg.col_sampling.seed = derive_seed(trial_seed, 2);
  RpcaConfig full = cfg.rpca;
  full.target_rank = r;
  try {
    Matrix l_cur;
    const double t_cur = seconds([&] { l_cur = rcur_uniform(d, r, cfg).model.reconstruct(); });
    Matrix l_full;
    const double t_full = seconds([&] { l_full = altproj(d, full).low_rank; });
    out.rcur_s.push_back(t_cur);
    out.rpca_s.push_back(t_full);
    if (truth != nullptr) {
      out.rcur_err.push_back(relative_error(*truth, l_cur));
      out.rpca_err.push_back(relative_error(*truth, l_full));
    } else {
      out.rcur_err.push_back(relative_error(l_full, l_cur));
      out.rpca_err.push_back(relative_error(l_cur, l_full));
    }
  } catch (const Error&) {
    ++out.failures;
  }
}

BenchReport summarize(const Samples& s, std::size_t trials) {
  BenchReport rep;
  rep.trials = trials;
  rep.failures = s.failures;
  rep.rcur_seconds = median(s.rcur_s);
  rep.rpca_seconds = median(s.rpca_s);
  rep.speedup = rep.rpca_seconds / rep.rcur_seconds;
  rep.rcur_rel_error = median(s.rcur_err);
  rep.rpca_rel_error = median(s.rpca_err);
  return rep;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

BenchReport bench_compare(const SynthConfig& config, const RcurConfig& rcur_config,
                          std::size_t trials) {
  if (trials < 1) fail(ErrorCode::invalid_argument, "bench_compare: trials must be >= 1");
  config.validate();
  rcur_config.validate();
  Samples s;
  for (std::size_t t = 0; t < trials; ++t) {
    SynthConfig inst = config;
    inst.seed = derive_seed(config.seed, t);
    const GroundTruth gt = generate(inst);
    run_trial(gt.observed, &gt.low_rank, config.r, rcur_config, derive_seed(inst.seed, 77), s);
  }
  BenchReport rep = summarize(s, trials);
  rep.m = config.m;
  rep.n = config.n;
  rep.r = config.r;
  rep.alpha = config.alpha;
  rep.kappa = config.kappa;
  rep.seed = config.seed;
  return rep;
}

BenchReport bench_compare(const Matrix& d, const Matrix* truth, std::size_t r,
                          const RcurConfig& rcur_config, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::invalid_argument, "bench_compare: trials must be >= 1");
  rcur_config.validate();
  Samples s;
  for (std::size_t t = 0; t < trials; ++t) run_trial(d, truth, r, rcur_config, derive_seed(seed, t), s);
  BenchReport rep = summarize(s, trials);
  rep.m = static_cast<std::size_t>(d.rows());
  rep.n = static_cast<std::size_t>(d.cols());
  rep.r = r;
  rep.seed = seed;
  rep.alpha = std::numeric_limits<double>::quiet_NaN();
  rep.kappa = std::numeric_limits<double>::quiet_NaN();
  return rep;
}

std::string emit_table(const std::vector<BenchReport>& reports, TableFormat format) {
  const std::vector<std::string> header = {"size",   "r",       "alpha",      "rcur_s",
                                           "rpca_s", "speedup", "rcur_error", "rpca_error"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& b : reports)
    rows.push_back({std::to_string(b.m) + "x" + std::to_string(b.n), std::to_string(b.r),
                    fmt(b.alpha), fmt(b.rcur_seconds), fmt(b.rpca_seconds), fmt(b.speedup),
                    fmt(b.rcur_rel_error), fmt(b.rpca_rel_error)});

  std::string out;
  auto line = [&out, format](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (format == TableFormat::markdown) {
        out += (i == 0 ? "| " : " | ") + cells[i];
      } else {
        out += (i == 0 ? "" : ",") + cells[i];
      }
    }
    out += format == TableFormat::markdown ? " |\n" : "\n";
  };
  line(header);
  if (format == TableFormat::markdown) line(std::vector<std::string>(header.size(), "---"));
  for (const auto& row : rows) line(row);
  return out;
}

std::string to_json(const BenchReport& b) {
  auto num = [](double x) -> nlohmann::json {
    if (std::isnan(x)) return nullptr;
    return x;
  };
  nlohmann::json j{{"m", b.m},
                   {"n", b.n},
                   {"r", b.r},
                   {"alpha", num(b.alpha)},
                   {"kappa", num(b.kappa)},
                   {"seed", b.seed},
                   {"rcur_seconds", num(b.rcur_seconds)},
                   {"rpca_seconds", num(b.rpca_seconds)},
                   {"speedup", num(b.speedup)},
                   {"rcur_rel_error", num(b.rcur_rel_error)},
                   {"rpca_rel_error", num(b.rpca_rel_error)},
                   {"trials", b.trials},
                   {"failures", b.failures}};
  return j.dump();
}

}  // namespace rcur
