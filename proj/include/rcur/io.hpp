#pragma once

// Matrix files (CSV and the rcur-bin binary layout), 8-bit PGM frame
// sequences, and the JSON manifest written next to generated instances.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rcur/matrix.hpp"
#include "rcur/synth.hpp"

namespace rcur {

enum class MatrixFormat { csv, bin };

/// ".csv" selects CSV, anything else rcur-bin.
MatrixFormat format_for_path(const std::filesystem::path& path);

// rcur-bin: "RCUR", u32 version (1), u64 rows, u64 cols, rows*cols f64,
// all little-endian, row-major.
void save_matrix(const Matrix& a, const std::filesystem::path& path, MatrixFormat format);
void save_matrix(const Matrix& a, const std::filesystem::path& path);
/// Format is sniffed from the leading magic bytes.
Matrix load_matrix(const std::filesystem::path& path);

std::string to_csv(const Matrix& a);
Matrix parse_csv(const std::string& text);
std::vector<unsigned char> to_rcur_bin(const Matrix& a);
Matrix parse_rcur_bin(const std::vector<unsigned char>& bytes);

struct Frame {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<unsigned char> pixels;  // row-major
};

Frame read_pgm(const std::filesystem::path& path);
void write_pgm(const Frame& frame, const std::filesystem::path& path);

struct FrameMatrix {
  Matrix data;  // (height * width) x frames
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::string> names;
};

/// Every *.pgm in dir, in lexicographic file-name order, one per column.
FrameMatrix frames_to_matrix(const std::filesystem::path& dir);

/// Column j becomes <prefix>_<j>.pgm (zero-padded). Values are clamped to
/// [0, 255] and rounded half-to-even. Returns the written paths.
std::vector<std::filesystem::path> matrix_to_frames(const Matrix& a, std::size_t height,
                                                    std::size_t width,
                                                    const std::filesystem::path& out_dir,
                                                    const std::string& prefix = "frame");

/// Sidecar describing a generated instance; file names are relative to the
/// manifest's directory.
struct SynthManifest {
  std::string kind = "synth";  // or "video"
  SynthConfig synth;
  VideoConfig video;
  std::string observed;
  std::string low_rank;
  std::string sparse;
  std::string mask;    // video only
  std::string frames;  // video only: directory of observed PGM frames
};

std::string to_json(const SynthManifest& manifest);
SynthManifest parse_manifest(const std::string& json_text);
void write_manifest(const SynthManifest& manifest, const std::filesystem::path& path);
SynthManifest read_manifest(const std::filesystem::path& path);

/// Ground-truth L next to an input matrix, found through a sibling
/// manifest.json whose "observed" (or "frames") entry names the input.
std::optional<std::filesystem::path> truth_for(const std::filesystem::path& input);

/// Generates the instance and writes observed, low_rank, sparse and
/// manifest.json into dir (video adds mask and a frames/ directory).
SynthManifest save_instance(const SynthConfig& config, const std::filesystem::path& dir,
                            MatrixFormat format);
SynthManifest save_instance(const VideoConfig& config, const std::filesystem::path& dir,
                            MatrixFormat format);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::string& text, const std::filesystem::path& path);

}  // namespace rcur
