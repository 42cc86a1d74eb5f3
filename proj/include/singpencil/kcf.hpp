#pragma once

// Test pencils with known Kronecker structure and the reference data that
// goes with them: reducing subspaces, eigenvector bases split as in the
// first-order expansion, and gamma(lambda).

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "singpencil/matcore.hpp"
#include "singpencil/pencil.hpp"
#include "singpencil/random.hpp"

namespace singpencil {

/// Parses "0.5", "1/3", "-2", "1+1i", "1-i", "2i".  Throws ParseError with
/// a 1-based column relative to `column_offset`.
Scalar parse_scalar(std::string_view text, std::size_t column_offset = 0);

struct KcfBlock {
  enum class Kind { jordan, nilpotent, right_singular, left_singular };

  Kind kind = Kind::jordan;
  /// Block size for J and N; minimal index for L and L^T.
  std::size_t size = 1;
  Scalar eigenvalue{};

  std::size_t rows() const;
  std::size_t cols() const;
  std::string to_string() const;
};

struct KcfSpec {
  std::vector<KcfBlock> blocks;

  /// Grammar: comma-separated tokens J<s>(<value>), N<s>, L<m>, LT<n>.
  static KcfSpec parse(std::string_view text);

  std::string to_string() const;
  /// Throws InvalidArgument unless the counts of L and L^T blocks agree and
  /// regular blocks have positive size.
  void validate() const;

  std::size_t n() const;
  std::size_t k() const;
  std::size_t nrank() const { return n() - k(); }
  /// Size of the regular part (J and N blocks).
  std::size_t r() const;
  std::size_t M() const;
  std::size_t N() const;
  /// Eigenvalues carried by exactly one J1 block and no other J block.
  std::vector<Scalar> simple_finite_eigenvalues() const;
  /// Real when every eigenvalue is real.
  FieldKind natural_field() const;
};

/// Reference data for one simple finite eigenvalue.  X = [x1 x] spans
/// ker(A - lambda B) with x1 a basis of its intersection with the minimal
/// right reducing subspace; likewise Y = [y1 y] on the left.
struct EigenGroundTruth {
  Scalar lambda;
  Matrix x1;
  Vector x;
  Matrix y1;
  Vector y;
  Scalar ybx;
  double gamma = 0.0;

  std::size_t k() const { return static_cast<std::size_t>(x1.cols()); }
};

struct BlockRange {
  KcfBlock block;
  std::size_t row_begin = 0;
  std::size_t col_begin = 0;
};

struct GroundTruth {
  KcfSpec spec;
  /// When true, p_inv and q satisfy A - lambda B = p_inv (K_A - lambda K_B) q^{-1}.
  bool exact_transforms = false;
  Matrix p_inv;
  Matrix q;
  std::vector<BlockRange> layout;
  Matrix m_rs;
  Matrix l_rs;
  std::vector<EigenGroundTruth> eigen;

  /// Entry whose eigenvalue lies within tol (1 + |lambda|) of lambda.
  const EigenGroundTruth& at(Scalar lambda, double tol = 1e-8) const;
};

/// Block-diagonal pencil in Kronecker coordinates with P = Q = I.
std::pair<Pencil, GroundTruth> assemble(const KcfSpec& spec);

enum class DisguiseKind { none, orthogonal, uniform_entries };

std::string_view to_string(DisguiseKind kind);
DisguiseKind disguise_from_string(std::string_view s);

/// (Qd A Zd, Qd B Zd) with unitary or U(0,1) factors.  Uniform factors whose
/// condition number exceeds 1e4 are redrawn up to 10 times before
/// IllConditionedDisguise is thrown.
std::pair<Pencil, GroundTruth> disguise(const Pencil& p, const GroundTruth& gt, DisguiseKind kind,
                                        Rng& rng);

enum class PaperPencil { hmp8x8, delta25, blockdiag10 };

std::string_view to_string(PaperPencil id);
PaperPencil paper_pencil_from_string(std::string_view s);

/// The three worked pencils with numerically computed reference data.
std::pair<Pencil, GroundTruth> paper_pencil(PaperPencil id);

/// Minimal right reducing subspace as the span of ker(A - z B) over random z.
/// Pass the adjoint pencil for the left one.  Empty when k = 0.
Matrix reducing_subspace_numeric(const Matrix& a, const Matrix& b, std::size_t k, Rng& rng);

/// Splits ker(A - lambda B) and its left counterpart against the given
/// reducing subspaces.  Throws NotSimpleOrWrongRank when the kernel does not
/// have dimension k + 1.
EigenGroundTruth eigen_truth_numeric(const Pencil& p, Scalar lambda, std::size_t k,
                                     const Matrix& m_rs, const Matrix& l_rs);

/// Numerical reference data for a pencil whose KCF is known only as a block list.
GroundTruth ground_truth_numeric(const Pencil& p, const KcfSpec& spec);

}  // namespace singpencil
