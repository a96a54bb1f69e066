#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pairframe/frame.hpp"
#include "pairframe/pair.hpp"

namespace pairframe {

inline constexpr std::string_view kFormatVersion = "1";

/// On-disk frame / pair system, JSON with complex numbers as [re, im]:
///
///   {
///     "format_version": "1",
///     "dim": 2,
///     "vectors":   [ [[re, im], ...], ... ]        (f_i, so Lambda_i f = <f, f_i>)
///  or "operators": [ [ [[re, im], ...], ... ], ... ] (d_i x dim matrices)
///     "weights":   [[re, im], ...],                 optional, defaults to ones
///     "gamma":     { "vectors": ... } or { "operators": ... }   optional
///   }
struct FrameFile {
  OperatorFamily lambda;
  std::optional<WeightSequence> weights;
  std::optional<OperatorFamily> gamma;

  Eigen::Index dim() const { return lambda.ambient_dim(); }

  /// (weights or ones, gamma or lambda, lambda).
  PairSystem pair_system() const;

  bool operator==(const FrameFile&) const = default;
};

/// Throws Parse for malformed or invalid documents and DimensionMismatch
/// when widths, weight count, or gamma shape disagree with the declaration.
FrameFile parse_frame_file(std::string_view text);
FrameFile read_frame_file(const std::filesystem::path& path);

nlohmann::json to_json(const FrameFile& file);
/// Indented JSON, one vector or matrix row per line, trailing newline.
/// Doubles round-trip exactly.
std::string serialize_frame_file(const FrameFile& file);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

/// Signal file: a JSON array of [re, im] pairs.
CVector parse_signal(std::string_view text);

}  // namespace pairframe
