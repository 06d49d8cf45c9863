#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "rcur/error.hpp"
#include "rcur/io.hpp"
#include "rcur/synth.hpp"

using namespace rcur;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rcur_test_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("binary round trip is bit-exact") {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> g;
  Matrix a(37, 11);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng) * 1e3;
  const fs::path dir = scratch("bin");
  save_matrix(a, dir / "a.bin");
  const Matrix b = load_matrix(dir / "a.bin");
  REQUIRE(b.rows() == 37);
  REQUIRE(b.cols() == 11);
  CHECK(std::memcmp(a.data(), b.data(), sizeof(double) * 37 * 11) == 0);
}

TEST_CASE("binary layout") {
  Matrix a(1, 2);
  a << 1.0, -2.0;
  const auto bytes = to_rcur_bin(a);
  REQUIRE(bytes.size() == 4 + 4 + 8 + 8 + 16);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "RCUR");
  CHECK(bytes[4] == 1);
  CHECK(bytes[8] == 1);
  CHECK(bytes[16] == 2);
  double first;
  std::memcpy(&first, bytes.data() + 24, 8);
  CHECK(first == 1.0);
}

TEST_CASE("truncated binary names the missing bytes") {
  Matrix a = Matrix::Ones(3, 3);
  auto bytes = to_rcur_bin(a);
  bytes.resize(bytes.size() - 5);
  try {
    parse_rcur_bin(bytes);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    CHECK(std::string(e.what()).find("missing 5 bytes") != std::string::npos);
  }
  bytes[0] = 'X';
  CHECK_THROWS_AS(parse_rcur_bin(bytes), Error);
}

TEST_CASE("csv round trip") {
  Matrix a(2, 2);
  a << 1.5, -2, 0, 3;
  CHECK(parse_csv(to_csv(a)) == a);
  const fs::path dir = scratch("csv");
  save_matrix(a, dir / "a.csv");
  CHECK(load_matrix(dir / "a.csv") == a);
  Matrix tricky(1, 3);
  tricky << 0.1, 1.0 / 3.0, -7.25e-300;
  const Matrix back = parse_csv(to_csv(tricky));
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(back(0, j) - tricky(0, j)) <= 1e-15 * std::abs(tricky(0, j)));
  CHECK_THROWS_AS(parse_csv("1,2\n3\n"), Error);
  CHECK_THROWS_AS(parse_csv("1,nan\n"), Error);
}

TEST_CASE("frames to matrix and back") {
  const fs::path dir = scratch("frames");
  const GroundTruth gt = gen_video(VideoConfig{6, 12, 10, 2, 0.3, 4, 1});
  const auto written = matrix_to_frames(gt.observed, 12, 10, dir / "in");
  CHECK(written.size() == 6);
  const FrameMatrix fm = frames_to_matrix(dir / "in");
  CHECK(fm.height == 12);
  CHECK(fm.width == 10);
  CHECK(fm.data == gt.observed);
  matrix_to_frames(fm.data, 12, 10, dir / "out");
  for (const auto& p : written) {
    std::ifstream a(p, std::ios::binary), b(dir / "out" / p.filename(), std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(a)), {});
    const std::string sb((std::istreambuf_iterator<char>(b)), {});
    CHECK(sa == sb);
  }
}

TEST_CASE("all-zero frame gives a zero column") {
  const fs::path dir = scratch("zero");
  write_pgm(Frame{3, 4, std::vector<unsigned char>(12, 0)}, dir / "f.pgm");
  const FrameMatrix fm = frames_to_matrix(dir);
  CHECK(fm.data.rows() == 12);
  CHECK(fm.data.cols() == 1);
  CHECK(fm.data.isZero(0));
}

TEST_CASE("frame sizes must agree") {
  const fs::path dir = scratch("mixed");
  write_pgm(Frame{3, 4, std::vector<unsigned char>(12, 1)}, dir / "a.pgm");
  write_pgm(Frame{4, 4, std::vector<unsigned char>(16, 1)}, dir / "b.pgm");
  CHECK_THROWS_AS(frames_to_matrix(dir), Error);
}

TEST_CASE("frame dimensions for 256x320 video") {
  const fs::path dir = scratch("scale");
  const Frame f{256, 320, std::vector<unsigned char>(256 * 320, 7)};
  for (int t = 0; t < 3; ++t) write_pgm(f, dir / ("f" + std::to_string(t) + ".pgm"));
  const FrameMatrix fm = frames_to_matrix(dir);
  CHECK(fm.data.rows() == 81920);
  CHECK(fm.data.cols() == 3);
}

TEST_CASE("writing frames clamps and rounds half to even") {
  const fs::path dir = scratch("round");
  Matrix a(4, 1);
  a << -3.0, 2.5, 3.5, 300.0;
  matrix_to_frames(a, 2, 2, dir);
  const FrameMatrix fm = frames_to_matrix(dir);
  CHECK(fm.data(0, 0) == 0);
  CHECK(fm.data(1, 0) == 2);
  CHECK(fm.data(2, 0) == 4);
  CHECK(fm.data(3, 0) == 255);
  CHECK_THROWS_AS(matrix_to_frames(a, 3, 2, dir), Error);
}

TEST_CASE("saved instance and truth lookup") {
  const fs::path dir = scratch("instance");
  const SynthManifest mf = save_instance(SynthConfig{40, 30, 2, 3.0, 0.1, 5.0, 9}, dir, MatrixFormat::bin);
  const SynthManifest back = read_manifest(dir / "manifest.json");
  CHECK(back.synth.m == 40);
  CHECK(back.synth.seed == 9);
  CHECK(back.observed == mf.observed);
  const auto truth = truth_for(dir / mf.observed);
  REQUIRE(truth.has_value());
  CHECK(load_matrix(*truth) == generate(back.synth).low_rank);
  CHECK_FALSE(truth_for(dir / mf.low_rank).has_value());

  const fs::path vdir = scratch("video");
  save_instance(VideoConfig{5, 8, 8, 1, 0.3, 3, 2}, vdir, MatrixFormat::csv);
  CHECK(truth_for(vdir / "frames").has_value());
  CHECK(frames_to_matrix(vdir / "frames").data == load_matrix(vdir / "observed.csv"));
  CHECK_THROWS_AS(parse_manifest("{"), Error);
}
