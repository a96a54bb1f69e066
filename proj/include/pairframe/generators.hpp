#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pairframe/frame.hpp"
#include "pairframe/pair.hpp"

namespace pairframe {

enum class GenKind {
  Orthonormal,
  Mercedes,
  Harmonic,
  RandomFrame,
  RandomGFrame,
  Weighted,
  SwapFixture,
  RankDeficient,
  PrescribedSpectrum,
};

std::string_view to_string(GenKind kind);
/// Throws InvalidSpec for an unknown name.
GenKind parse_gen_kind(std::string_view name);
const std::vector<GenKind>& all_gen_kinds();

/// Fixture recipe. Kind-specific params:
///   weighted            - one weight per basis vector (length dim)
///   random_gframe       - optional [max rows per member], default 2
///   rank_deficient      - optional [rank], default dim - 1
///   prescribed_spectrum - dim positive eigenvalues of the frame operator
struct GenSpec {
  GenKind kind = GenKind::Orthonormal;
  Eigen::Index dim = 2;
  Eigen::Index count = 2;
  std::uint64_t seed = 0;
  std::vector<double> params;
};

/// Count a kind uses when none is given (dim for square kinds, 3 for mercedes,
/// 2 * dim otherwise).
Eigen::Index default_count(GenKind kind, Eigen::Index dim);

/// Deterministic in every field of spec. Throws InvalidSpec, also when the
/// random kinds find no draw passing lambda_min > 0.05 lambda_max (expect this
/// for count close to dim once dim grows past a handful).
OperatorFamily generate(const GenSpec& spec);

/// The weight sequence a kind carries: params for weighted, ones otherwise.
WeightSequence generate_weights(const GenSpec& spec);

PairSystem generate_pair(const GenSpec& spec_gamma, const GenSpec& spec_lambda, const WeightSequence& weights);

}  // namespace pairframe
