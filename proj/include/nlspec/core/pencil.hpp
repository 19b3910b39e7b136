#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlspec/core/domain.hpp"
#include "nlspec/core/index_space.hpp"

namespace nlspec {

/// Evaluation set available for a pencil: matrix elements only (Lambda1), or
/// additionally the Gram elements of T*T and TT* (Lambda2).
enum class Capability { lambda1, lambda2 };

enum class Operand { pencil, adjoint };

/// Matrix-element oracle for an operator pencil T: U -> C(H1, H2).
///
/// entry(z, i, j) = <T(z) e_j, f_i> for the column basis {e_j} of H1 and the
/// row basis {f_i} of H2. adjoint_entry(z, i, j) = <T(z)* g_j, h_i> is the
/// matching element of a discretization of the adjoint; it defaults to
/// conj(entry(z, j, i)), which is exact whenever both bases lie in the
/// respective operator domains. Pencils whose domains depend on z (or whose
/// row basis is not in the adjoint domain) override it.
///
/// A declared band b guarantees entry(z, i, j) = 0 whenever
/// level(i) > level(j) + b, and likewise for the adjoint discretization, so
/// the row window n2 + b captures every nonzero of the column window n2.
///
/// Implementations must be safe to call concurrently.
class PencilOracle {
 public:
  virtual ~PencilOracle() = default;

  virtual std::string name() const = 0;
  virtual IndexSpace row_space() const = 0;
  virtual IndexSpace col_space() const = 0;
  virtual DomainRegion domain() const { return DomainRegion::whole_plane(); }
  virtual std::optional<int> band() const { return std::nullopt; }
  virtual Capability capability() const { return band() ? Capability::lambda2 : Capability::lambda1; }

  /// Largest column window the oracle can realize, if bounded.
  virtual std::optional<int> max_columns() const { return std::nullopt; }

  virtual Complex entry(Complex z, int i, int j) const = 0;

  virtual Complex adjoint_entry(Complex z, int i, int j) const { return std::conj(entry(z, j, i)); }

  /// Dense block of the pencil (rows from row_space, cols from col_space) or
  /// of the adjoint (rows from col_space, cols from row_space).
  virtual Matrix block(Complex z, std::span<const int> rows, std::span<const int> cols, Operand which) const {
    Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t b = 0; b < cols.size(); ++b) {
      for (std::size_t a = 0; a < rows.size(); ++a) {
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            which == Operand::pencil ? entry(z, rows[a], cols[b]) : adjoint_entry(z, rows[a], cols[b]);
      }
    }
    return out;
  }

  /// n2-window of the Gram matrix <T e_j, T e_i> (pencil) or <T* f_j, T* f_i>
  /// (adjoint). Banded oracles derive it exactly from a finite block.
  virtual Matrix gram_block(Complex z, int n2, Operand which) const {
    const auto b = band();
    if (!b) throw Error(ErrorCode::missing_gram, name() + " has no Gram (Lambda2) access");
    const IndexSpace rs = which == Operand::pencil ? row_space() : col_space();
    const IndexSpace cs = which == Operand::pencil ? col_space() : row_space();
    const auto rows = rs.window(n2 + *b);
    const auto cols = cs.window(n2);
    const Matrix m = block(z, rows, cols, which);
    return m.adjoint() * m;
  }

  std::optional<Complex> gram_cols(Complex z, int i, int j) const { return gram_entry(z, i, j, Operand::pencil); }
  std::optional<Complex> gram_rows(Complex z, int i, int j) const { return gram_entry(z, i, j, Operand::adjoint); }

  /// Sampled values of the function sum_j coeffs[j] e_j on a 1-D mesh, one
  /// column per solution component. Sequence spaces return nullopt.
  virtual std::optional<Matrix> evaluate_columns(Complex z, const Vector& coeffs, std::span<const double> mesh) const {
    (void)z;
    (void)coeffs;
    (void)mesh;
    return std::nullopt;
  }

 private:
  std::optional<Complex> gram_entry(Complex z, int i, int j, Operand which) const {
    if (capability() != Capability::lambda2) return std::nullopt;
    const IndexSpace cs = which == Operand::pencil ? col_space() : row_space();
    const int n = std::max(cs.level(i), cs.level(j));
    const Matrix g = gram_block(z, n, which);
    return g(cs.position(i, n), cs.position(j, n));
  }
};

using PencilPtr = std::shared_ptr<const PencilOracle>;

/// Pencil defined by a callable; handy for constant or test pencils.
class FunctionPencil final : public PencilOracle {
 public:
  using EntryFn = std::function<Complex(Complex, int, int)>;

  FunctionPencil(std::string name, IndexSpace rows, IndexSpace cols, EntryFn entry, std::optional<int> band = std::nullopt,
                 DomainRegion domain = DomainRegion::whole_plane())
      : name_(std::move(name)), rows_(rows), cols_(cols), entry_(std::move(entry)), band_(band), domain_(std::move(domain)) {}

  std::string name() const override { return name_; }
  IndexSpace row_space() const override { return rows_; }
  IndexSpace col_space() const override { return cols_; }
  DomainRegion domain() const override { return domain_; }
  std::optional<int> band() const override { return band_; }
  Complex entry(Complex z, int i, int j) const override { return entry_(z, i, j); }

 private:
  std::string name_;
  IndexSpace rows_;
  IndexSpace cols_;
  EntryFn entry_;
  std::optional<int> band_;
  DomainRegion domain_;
};

/// Dense n1 x n2 truncation of the pencil (rows W(n1), cols W(n2)) or of its
/// adjoint discretization (rows from the domain side, cols from the range side).
inline Matrix assemble_truncation(const PencilOracle& oracle, Complex z, TruncationWindow w, Operand which) {
  if (w.n1 < 1 || w.n2 < 1) throw Error(ErrorCode::invalid_argument, "window sizes must be >= 1");
  if (!oracle.domain().contains(z))
    throw Error(ErrorCode::point_outside_domain, format_complex(z) + " is outside " + oracle.domain().description());
  if (const auto cap = oracle.max_columns(); cap && w.n2 > *cap)
    throw Error(ErrorCode::window_exceeds_capacity,
                "column window " + std::to_string(w.n2) + " exceeds " + std::to_string(*cap));
  const IndexSpace rs = which == Operand::pencil ? oracle.row_space() : oracle.col_space();
  const IndexSpace cs = which == Operand::pencil ? oracle.col_space() : oracle.row_space();
  const auto rows = rs.window(w.n1);
  const auto cols = cs.window(w.n2);
  Matrix m;
  try {
    m = oracle.block(z, rows, cols, which);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::oracle_evaluation, oracle.name() + " at z=" + format_complex(z) + ": " + e.what());
  }
  if (!m.allFinite()) {
    for (Eigen::Index b = 0; b < m.cols(); ++b)
      for (Eigen::Index a = 0; a < m.rows(); ++a)
        if (!std::isfinite(m(a, b).real()) || !std::isfinite(m(a, b).imag()))
          throw Error(ErrorCode::oracle_evaluation,
                      oracle.name() + " returned a non-finite entry at z=" + format_complex(z) + ", (i,j)=(" +
                          std::to_string(rows[static_cast<std::size_t>(a)]) + "," +
                          std::to_string(cols[static_cast<std::size_t>(b)]) + ")");
  }
  return m;
}

}  // namespace nlspec
