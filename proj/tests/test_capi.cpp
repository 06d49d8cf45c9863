#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "rcur/rcur.h"

namespace fs = std::filesystem;

namespace {

struct M {
  rcur_matrix* p = nullptr;
  ~M() { rcur_matrix_destroy(p); }
};

std::vector<double> values(const rcur_matrix* m) {
  std::vector<double> v(rcur_matrix_rows(m) * rcur_matrix_cols(m));
  REQUIRE(rcur_matrix_copy(m, v.data()) == RCUR_OK);
  return v;
}

}  // namespace

TEST_CASE("matrix handles") {
  const double data[] = {1, 2, 3, 4, 5, 6};
  M a;
  REQUIRE(rcur_matrix_create(2, 3, data, &a.p) == RCUR_OK);
  CHECK(rcur_matrix_rows(a.p) == 2);
  CHECK(rcur_matrix_cols(a.p) == 3);
  CHECK(values(a.p) == std::vector<double>(data, data + 6));

  M cols;
  const size_t idx[] = {2, 0};
  REQUIRE(rcur_matrix_columns(a.p, idx, 2, &cols.p) == RCUR_OK);
  CHECK(values(cols.p) == std::vector<double>{3, 1, 6, 4});

  M diff;
  REQUIRE(rcur_matrix_subtract(a.p, a.p, &diff.p) == RCUR_OK);
  for (double x : values(diff.p)) CHECK(x == 0);

  const double bad[] = {1, NAN};
  M b;
  CHECK(rcur_matrix_create(1, 2, bad, &b.p) == RCUR_E_NON_FINITE);
  CHECK(std::strlen(rcur_last_error()) > 0);
  CHECK(rcur_matrix_columns(a.p, idx, 2, nullptr) == RCUR_E_INVALID_ARGUMENT);
  const size_t out_of_range[] = {5};
  M c;
  CHECK(rcur_matrix_columns(a.p, out_of_range, 1, &c.p) != RCUR_OK);
  CHECK(std::string(rcur_status_name(RCUR_E_RANK_DEFICIENT_CORE)) == "rank_deficient_core");
}

TEST_CASE("file round trip and truncated input") {
  const fs::path dir = fs::temp_directory_path() / "rcur_capi_io";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const double data[] = {0.1, -2.5, 1e300, 7};
  M a, b;
  REQUIRE(rcur_matrix_create(2, 2, data, &a.p) == RCUR_OK);
  const std::string path = (dir / "a.bin").string();
  REQUIRE(rcur_matrix_save(a.p, path.c_str(), RCUR_FORMAT_BIN) == RCUR_OK);
  REQUIRE(rcur_matrix_load(path.c_str(), &b.p) == RCUR_OK);
  CHECK(values(b.p) == values(a.p));

  fs::resize_file(path, fs::file_size(path) - 3);
  M c;
  CHECK(rcur_matrix_load(path.c_str(), &c.p) == RCUR_E_PARSE);
  CHECK(std::string(rcur_last_error()).find("missing 3 bytes") != std::string::npos);
  M d;
  CHECK(rcur_matrix_load((dir / "absent.bin").string().c_str(), &d.p) == RCUR_E_IO);
}

TEST_CASE("synthetic instance through altproj and robust CUR") {
  rcur_synth_config sc;
  rcur_synth_config_default(&sc);
  sc.m = sc.n = 150;
  sc.r = 2;
  sc.seed = 3;
  M d, l, s;
  REQUIRE(rcur_synth_generate(&sc, &d.p, &l.p, &s.p) == RCUR_OK);

  rcur_rpca_config rc;
  rcur_rpca_config_default(&rc);
  CHECK(std::isnan(rc.eta_init));
  rc.target_rank = 2;
  rcur_rpca_result* res = nullptr;
  REQUIRE(rcur_altproj(d.p, &rc, &res) == RCUR_OK);
  CHECK(rcur_rpca_result_converged(res));
  CHECK(rcur_rpca_result_trace_length(res) == rcur_rpca_result_iterations(res));
  M lh;
  REQUIRE(rcur_rpca_result_low_rank(res, &lh.p) == RCUR_OK);
  double err = 1;
  REQUIRE(rcur_relative_error(l.p, lh.p, &err) == RCUR_OK);
  CHECK(err < 1e-6);
  rcur_rpca_result_destroy(res);

  rcur_cur_config cc;
  rcur_cur_config_default(&cc);
  rcur_cur_result* cur = nullptr;
  REQUIRE(rcur_cur_hybrid(d.p, 2, &cc, &cur) == RCUR_OK);
  CHECK(rcur_cur_result_row_count(cur) == 2);
  CHECK(rcur_cur_result_col_count(cur) == 2);
  CHECK(rcur_cur_result_mu_rows(cur) >= 1.0);
  CHECK(rcur_rpca_result_converged(rcur_cur_result_rpca(cur, 0)));
  M rec;
  REQUIRE(rcur_cur_result_reconstruct(cur, &rec.p) == RCUR_OK);
  REQUIRE(rcur_relative_error(l.p, rec.p, &err) == RCUR_OK);
  CHECK(err < 1e-5);

  rcur_diagnostics diag;
  REQUIRE(rcur_diagnose(l.p, 2, s.p, rec.p, rcur_cur_result_rows(cur), 2, rcur_cur_result_cols(cur),
                        2, &diag) == RCUR_OK);
  CHECK(diag.has_rel_spectral_error);
  CHECK(diag.rel_spectral_error == doctest::Approx(err));
  CHECK(diag.has_beta);
  CHECK(diag.kappa == doctest::Approx(sc.kappa));
  char* text = nullptr;
  REQUIRE(rcur_diagnostics_json(&diag, &text) == RCUR_OK);
  CHECK(std::string(text).find("\"rel_spectral_error\"") != std::string::npos);
  rcur_string_free(text);
  rcur_cur_result_destroy(cur);

  cc.cols.count = 1;
  cc.cols.c = 0;
  CHECK(rcur_cur_uniform(d.p, 2, &cc, &cur) == RCUR_E_INSUFFICIENT_SAMPLES);
}

TEST_CASE("sampling and selection") {
  size_t n = 0;
  REQUIRE(rcur_sample_size(1000, 5, 1.0, 1.06, RCUR_SIZE_LOG_RN, &n) == RCUR_OK);
  CHECK(n == 46);
  std::vector<size_t> idx(10), again(10);
  REQUIRE(rcur_sample_uniform(100, 10, RCUR_WITHOUT_REPLACEMENT, 4, idx.data()) == RCUR_OK);
  REQUIRE(rcur_sample_uniform(100, 10, RCUR_WITHOUT_REPLACEMENT, 4, again.data()) == RCUR_OK);
  CHECK(idx == again);

  const double x[] = {1, 0, 0, 0, 1, 0};
  M xm;
  REQUIRE(rcur_matrix_create(2, 3, x, &xm.p) == RCUR_OK);
  size_t picked[2];
  double crit[1];
  REQUIRE(rcur_greedy_css(xm.p, 2, picked, crit) == RCUR_OK);
  CHECK(picked[0] == 0);
  CHECK(picked[1] == 1);
  CHECK(crit[0] == doctest::Approx(0.0));

  CHECK(rcur_error_bound_rhs(0, 0, 6) == doctest::Approx(1.0));
  CHECK(std::isnan(rcur_error_bound_rhs(-1, 0, 1)));
}

TEST_CASE("bounds and bench") {
  rcur_synth_config sc;
  rcur_synth_config_default(&sc);
  sc.m = 120;
  sc.n = 100;
  M d, l;
  REQUIRE(rcur_synth_generate(&sc, &d.p, &l.p, nullptr) == RCUR_OK);
  std::vector<size_t> cols(30);
  REQUIRE(rcur_sample_uniform(100, 30, RCUR_WITHOUT_REPLACEMENT, 1, cols.data()) == RCUR_OK);
  rcur_bound_check checks[5];
  REQUIRE(rcur_verify_bounds(l.p, cols.data(), cols.size(), sc.r, checks) == RCUR_OK);
  for (const auto& c : checks) CHECK_MESSAGE(c.holds, c.name);
  CHECK(std::string(checks[0].name) == "mu1_inheritance");

  rcur_cur_config cc;
  rcur_cur_config_default(&cc);
  rcur_bench_report rep;
  REQUIRE(rcur_bench_synth(&sc, &cc, 1, &rep) == RCUR_OK);
  CHECK(rep.rcur_seconds > 0);
  CHECK(rep.rpca_seconds > 0);
  char* table = nullptr;
  REQUIRE(rcur_bench_table(&rep, 1, RCUR_TABLE_CSV, &table) == RCUR_OK);
  CHECK(std::string(table).rfind("size,", 0) == 0);
  rcur_string_free(table);
}

TEST_CASE("saved instances, truth lookup and frames") {
  const fs::path dir = fs::temp_directory_path() / "rcur_capi_video";
  fs::remove_all(dir);
  rcur_video_config vc;
  rcur_video_config_default(&vc);
  vc.frames = 8;
  char* manifest = nullptr;
  REQUIRE(rcur_video_save(&vc, dir.string().c_str(), RCUR_FORMAT_BIN, &manifest) == RCUR_OK);
  CHECK(std::string(manifest).find("\"video\"") != std::string::npos);
  rcur_string_free(manifest);

  char* truth = nullptr;
  REQUIRE(rcur_truth_for((dir / "frames").string().c_str(), &truth) == RCUR_OK);
  REQUIRE(truth != nullptr);
  CHECK(fs::path(truth).filename() == "low_rank.bin");
  rcur_string_free(truth);
  REQUIRE(rcur_truth_for((dir / "low_rank.bin").string().c_str(), &truth) == RCUR_OK);
  CHECK(truth == nullptr);

  M frames;
  size_t h = 0, w = 0;
  REQUIRE(rcur_frames_load((dir / "frames").string().c_str(), &frames.p, &h, &w) == RCUR_OK);
  CHECK(h == vc.height);
  CHECK(w == vc.width);
  CHECK(rcur_matrix_cols(frames.p) == 8);
  M obs;
  REQUIRE(rcur_matrix_load((dir / "observed.bin").string().c_str(), &obs.p) == RCUR_OK);
  CHECK(values(obs.p) == values(frames.p));
}
