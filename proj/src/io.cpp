#include "rcur/io.hpp"

#include <algorithm>
#include <bit>
#include <cfenv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "rcur/error.hpp"

namespace fs = std::filesystem;

namespace rcur {

namespace {

using Index = Eigen::Index;

constexpr char kMagic[4] = {'R', 'C', 'U', 'R'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 4 + 4 + 8 + 8;

void put_le(std::vector<unsigned char>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

std::vector<unsigned char> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::vector<unsigned char>& bytes, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::io, "short write to " + path.string());
}

double to_pixel(double x) {
  const double clamped = std::clamp(x, 0.0, 255.0);
  // nearbyint honours the current rounding mode, which defaults to
  // round-half-to-even.
  return std::nearbyint(clamped);
}

}  // namespace

MatrixFormat format_for_path(const fs::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? MatrixFormat::csv : MatrixFormat::bin;
}

std::string to_csv(const Matrix& a) {
  std::string out;
  char buf[32];
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      if (j > 0) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Matrix parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      const std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || std::string(end).find_first_not_of(" \t") != std::string::npos)
        fail(ErrorCode::parse, "csv line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      if (!std::isfinite(v))
        fail(ErrorCode::non_finite, "csv line " + std::to_string(line_no) + ": non-finite value");
      row.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      fail(ErrorCode::parse, "csv line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(rows.front().size()) + " fields, got " +
                                 std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  Matrix a(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return a;
}

std::vector<unsigned char> to_rcur_bin(const Matrix& a) {
  std::vector<unsigned char> out;
  out.reserve(kHeaderBytes + static_cast<std::size_t>(a.size()) * 8);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_le(out, kVersion, 4);
  put_le(out, static_cast<std::uint64_t>(a.rows()), 8);
  put_le(out, static_cast<std::uint64_t>(a.cols()), 8);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) put_le(out, std::bit_cast<std::uint64_t>(a(i, j)), 8);
  return out;
}

Matrix parse_rcur_bin(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < kHeaderBytes)
    fail(ErrorCode::parse, "rcur-bin: truncated header, missing " +
                               std::to_string(kHeaderBytes - bytes.size()) + " bytes");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) fail(ErrorCode::parse, "rcur-bin: bad magic");
  const auto version = get_le(bytes.data() + 4, 4);
  if (version != kVersion)
    fail(ErrorCode::parse, "rcur-bin: unsupported version " + std::to_string(version));
  const std::uint64_t rows = get_le(bytes.data() + 8, 8);
  const std::uint64_t cols = get_le(bytes.data() + 16, 8);
  if (cols != 0 && rows > (UINT64_MAX / 8) / cols)
    fail(ErrorCode::parse, "rcur-bin: dimensions overflow");
  const std::uint64_t need = kHeaderBytes + rows * cols * 8;
  if (bytes.size() < need)
    fail(ErrorCode::parse, "rcur-bin: truncated file, missing " + std::to_string(need - bytes.size()) +
                               " bytes");
  if (bytes.size() > need)
    fail(ErrorCode::parse, "rcur-bin: " + std::to_string(bytes.size() - need) + " trailing bytes");
  Matrix a(static_cast<Index>(rows), static_cast<Index>(cols));
  const unsigned char* p = bytes.data() + kHeaderBytes;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j, p += 8) a(i, j) = std::bit_cast<double>(get_le(p, 8));
  require_finite(a, "rcur-bin");
  return a;
}

void save_matrix(const Matrix& a, const fs::path& path, MatrixFormat format) {
  require_finite(a, "save_matrix");
  if (format == MatrixFormat::csv) {
    write_text(to_csv(a), path);
  } else {
    write_bytes(to_rcur_bin(a), path);
  }
}

void save_matrix(const Matrix& a, const fs::path& path) { save_matrix(a, path, format_for_path(path)); }

Matrix load_matrix(const fs::path& path) {
  const auto bytes = read_bytes(path);
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) return parse_rcur_bin(bytes);
  if (format_for_path(path) == MatrixFormat::bin)
    fail(ErrorCode::parse, path.string() + ": not an rcur-bin file (bad magic)");
  return parse_csv(std::string(bytes.begin(), bytes.end()));
}

Frame read_pgm(const fs::path& path) {
  const auto bytes = read_bytes(path);
  std::size_t pos = 0;
  auto bad = [&](const std::string& why) -> void { fail(ErrorCode::parse, path.string() + ": " + why); };
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto number = [&]() -> std::size_t {
    skip_space();
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) bad("malformed PGM header");
    std::size_t v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) v = v * 10 + (bytes[pos++] - '0');
    return v;
  };
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') bad("not a binary PGM (P5)");
  pos = 2;
  Frame f;
  f.width = number();
  f.height = number();
  const std::size_t maxval = number();
  if (maxval == 0 || maxval > 255) bad("only 8-bit PGM is supported");
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) bad("malformed PGM header");
  ++pos;
  const std::size_t need = f.width * f.height;
  if (bytes.size() - pos < need)
    bad("truncated pixel data, missing " + std::to_string(need - (bytes.size() - pos)) + " bytes");
  f.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                  bytes.begin() + static_cast<std::ptrdiff_t>(pos + need));
  return f;
}

void write_pgm(const Frame& frame, const fs::path& path) {
  if (frame.pixels.size() != frame.height * frame.width)
    fail(ErrorCode::invalid_argument, "write_pgm: pixel count does not match dimensions");
  const std::string header =
      "P5\n" + std::to_string(frame.width) + " " + std::to_string(frame.height) + "\n255\n";
  std::vector<unsigned char> bytes(header.begin(), header.end());
  bytes.insert(bytes.end(), frame.pixels.begin(), frame.pixels.end());
  write_bytes(bytes, path);
}

FrameMatrix frames_to_matrix(const fs::path& dir) {
  if (!fs::is_directory(dir)) fail(ErrorCode::io, dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  if (files.empty()) fail(ErrorCode::io, dir.string() + " contains no .pgm frames");

  FrameMatrix out;
  for (std::size_t j = 0; j < files.size(); ++j) {
    const Frame f = read_pgm(files[j]);
    if (j == 0) {
      out.height = f.height;
      out.width = f.width;
      out.data.resize(static_cast<Index>(f.height * f.width), static_cast<Index>(files.size()));
    } else if (f.height != out.height || f.width != out.width) {
      fail(ErrorCode::invalid_argument,
           files[j].filename().string() + " is " + std::to_string(f.width) + "x" +
               std::to_string(f.height) + ", expected " + std::to_string(out.width) + "x" +
               std::to_string(out.height));
    }
    for (std::size_t p = 0; p < f.pixels.size(); ++p)
      out.data(static_cast<Index>(p), static_cast<Index>(j)) = f.pixels[p];
    out.names.push_back(files[j].filename().string());
  }
  return out;
}

std::vector<fs::path> matrix_to_frames(const Matrix& a, std::size_t height, std::size_t width,
                                       const fs::path& out_dir, const std::string& prefix) {
  if (static_cast<std::size_t>(a.rows()) != height * width)
    fail(ErrorCode::invalid_argument, "matrix_to_frames: rows must equal height * width");
  require_finite(a, "matrix_to_frames");
  fs::create_directories(out_dir);
  std::vector<fs::path> written;
  const int digits = std::max<int>(5, static_cast<int>(std::to_string(a.cols()).size()));
  for (Index j = 0; j < a.cols(); ++j) {
    Frame f{height, width, std::vector<unsigned char>(height * width)};
    for (Index p = 0; p < a.rows(); ++p)
      f.pixels[static_cast<std::size_t>(p)] = static_cast<unsigned char>(to_pixel(a(p, j)));
    std::string index = std::to_string(j);
    index.insert(0, static_cast<std::size_t>(digits) - std::min<std::size_t>(digits, index.size()), '0');
    written.push_back(out_dir / (prefix + "_" + index + ".pgm"));
    write_pgm(f, written.back());
  }
  return written;
}

std::string to_json(const SynthManifest& mf) {
  nlohmann::json j;
  j["kind"] = mf.kind;
  if (mf.kind == "video") {
    const auto& v = mf.video;
    j["config"] = {{"frames", v.frames}, {"height", v.height}, {"width", v.width}, {"r", v.r},
                   {"alpha", v.alpha},   {"blob_size", v.blob_size}, {"seed", v.seed}};
  } else {
    const auto& s = mf.synth;
    j["config"] = {{"m", s.m},         {"n", s.n},         {"r", s.r},
                   {"kappa", s.kappa}, {"alpha", s.alpha}, {"outlier_magnitude", s.outlier_magnitude},
                   {"seed", s.seed}};
  }
  j["files"] = {{"observed", mf.observed}, {"low_rank", mf.low_rank}, {"sparse", mf.sparse}};
  if (!mf.mask.empty()) j["files"]["mask"] = mf.mask;
  if (!mf.frames.empty()) j["files"]["frames"] = mf.frames;
  return j.dump(2);
}

SynthManifest parse_manifest(const std::string& text) {
  SynthManifest mf;
  try {
    const auto j = nlohmann::json::parse(text);
    mf.kind = j.value("kind", "synth");
    const auto& c = j.at("config");
    if (mf.kind == "video") {
      auto& v = mf.video;
      v.frames = c.at("frames");
      v.height = c.at("height");
      v.width = c.at("width");
      v.r = c.at("r");
      v.alpha = c.at("alpha");
      v.blob_size = c.at("blob_size");
      v.seed = c.at("seed");
    } else {
      auto& s = mf.synth;
      s.m = c.at("m");
      s.n = c.at("n");
      s.r = c.at("r");
      s.kappa = c.at("kappa");
      s.alpha = c.at("alpha");
      s.outlier_magnitude = c.at("outlier_magnitude");
      s.seed = c.at("seed");
    }
    const auto& files = j.at("files");
    mf.observed = files.value("observed", "");
    mf.low_rank = files.value("low_rank", "");
    mf.sparse = files.value("sparse", "");
    mf.mask = files.value("mask", "");
    mf.frames = files.value("frames", "");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("manifest: ") + e.what());
  }
  return mf;
}

void write_manifest(const SynthManifest& manifest, const fs::path& path) {
  write_text(to_json(manifest) + "\n", path);
}

SynthManifest read_manifest(const fs::path& path) { return parse_manifest(read_text(path)); }

std::optional<fs::path> truth_for(const fs::path& given) {
  const fs::path input = given.has_filename() ? given : given.parent_path();
  const fs::path manifest = input.parent_path() / "manifest.json";
  if (!fs::exists(manifest)) return std::nullopt;
  const SynthManifest mf = read_manifest(manifest);
  const fs::path name = input.filename();
  const bool named = fs::path(mf.observed).filename() == name ||
                     (!mf.frames.empty() && fs::path(mf.frames).filename() == name);
  if (mf.low_rank.empty() || !named) return std::nullopt;
  const fs::path truth = manifest.parent_path() / mf.low_rank;
  if (!fs::exists(truth)) return std::nullopt;
  return truth;
}

namespace {

std::string matrix_name(const char* stem, MatrixFormat format) {
  return std::string(stem) + (format == MatrixFormat::csv ? ".csv" : ".bin");
}

SynthManifest save_truth(const GroundTruth& gt, SynthManifest mf, const fs::path& dir,
                         MatrixFormat format) {
  fs::create_directories(dir);
  mf.observed = matrix_name("observed", format);
  mf.low_rank = matrix_name("low_rank", format);
  mf.sparse = matrix_name("sparse", format);
  save_matrix(gt.observed, dir / mf.observed, format);
  save_matrix(gt.low_rank, dir / mf.low_rank, format);
  save_matrix(gt.sparse, dir / mf.sparse, format);
  if (gt.foreground_mask) {
    mf.mask = matrix_name("mask", format);
    save_matrix(gt.foreground_mask->cast<double>(), dir / mf.mask, format);
  }
  return mf;
}

}  // namespace

SynthManifest save_instance(const SynthConfig& config, const fs::path& dir, MatrixFormat format) {
  SynthManifest mf;
  mf.synth = config;
  mf = save_truth(generate(config), mf, dir, format);
  write_manifest(mf, dir / "manifest.json");
  return mf;
}

SynthManifest save_instance(const VideoConfig& config, const fs::path& dir, MatrixFormat format) {
  SynthManifest mf;
  mf.kind = "video";
  mf.video = config;
  const GroundTruth gt = gen_video(config);
  mf = save_truth(gt, mf, dir, format);
  mf.frames = "frames";
  matrix_to_frames(gt.observed, config.height, config.width, dir / mf.frames);
  write_manifest(mf, dir / "manifest.json");
  return mf;
}

std::string read_text(const fs::path& path) {
  const auto bytes = read_bytes(path);
  return {bytes.begin(), bytes.end()};
}

void write_text(const std::string& text, const fs::path& path) {
  write_bytes(std::vector<unsigned char>(text.begin(), text.end()), path);
}

}  // namespace rcur
