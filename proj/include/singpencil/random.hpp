#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "singpencil/matcore.hpp"

namespace singpencil {

struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Philox4x32-10 block as published by Salmon et al.; exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based generator keyed by (seed, stream).  Draw j of a given
/// (seed, stream) is a pure function of (seed, stream, j), so streams can be
/// handed to independent workers without affecting each other.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);
  explicit Rng(RngState state) : Rng(state.seed, state.stream) {}

  RngState state() const { return {seed_, stream_}; }

  /// Independent child stream; deterministic in (seed, stream, index).
  Rng substream(std::uint64_t index) const;

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Gamma(shape, 1).
  double gamma(double shape);
  /// Beta(a, b) as X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b).
  double beta(double a, double b);
  /// Standard normal in the given field: N(0,1) for real, N(0,1/2)+iN(0,1/2) for complex.
  Scalar field_normal(FieldKind field);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// i.i.d. standard Gaussian entries in the given field.
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, FieldKind field, Rng& rng);

/// Uniform draw from the Stiefel manifold V_k^n via QR with positive-diagonal R.
Matrix stiefel_uniform(std::size_t n, std::size_t k, FieldKind field, Rng& rng);

/// Direction (E, F) uniform on the unit sphere of pairs of n x n matrices.
/// The complex field is the default; the real field is an experimental mode.
std::pair<Matrix, Matrix> sphere_direction(std::size_t n, Rng& rng,
                                           FieldKind field = FieldKind::complex);

}  // namespace singpencil
