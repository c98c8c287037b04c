#pragma once

// Stoquastic Hamiltonians: sparse real symmetric matrices with non-positive
// entries whose off-diagonal support is connected.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cheeger_gap/kernels.hpp"
#include "cheeger_gap/report.hpp"

namespace cheeger_gap {

struct Triplet {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  double value = 0.0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Coordinate-form matrix. Builders store each unordered pair once with
/// row <= col; symmetry is implied for pairs listed in a single orientation.
/// Immutable once constructed, so it is safe to share across threads.
class StoquasticMatrix {
 public:
  StoquasticMatrix() = default;

  /// Sorts entries by (row, col). Throws on out-of-range indices or on the
  /// same oriented entry appearing twice. Does not validate sign, symmetry or
  /// connectivity; see validate().
  static StoquasticMatrix from_triplets(std::size_t dim, std::vector<Triplet> entries);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Triplet> entries() const noexcept { return entries_; }
  std::size_t stored() const noexcept { return entries_.size(); }

  /// H_ij, looking up either orientation; 0 for absent pairs.
  double value(std::uint32_t i, std::uint32_t j) const;
  double diagonal(std::uint32_t i) const { return diag_[i]; }

  /// Full (both triangles) CSR of the symmetric completion.
  kernels::CsrView csr() const noexcept;
  /// y <- H x
  void apply(std::span<const double> x, std::span<double> y) const;

  /// Row-major dense copy; intended for N up to a few thousand.
  std::vector<double> dense() const;

  friend bool operator==(const StoquasticMatrix& a, const StoquasticMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Triplet> entries_;
  std::vector<double> diag_;
  std::vector<std::uint32_t> row_ptr_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> vals_;
};

using ValidationReport = CheckReport;

/// Dimension, symmetry, sign and connectivity checks. Never throws.
ValidationReport validate(const StoquasticMatrix& h);

/// Throws Error(validation) carrying the report summary when validate() fails.
void require_valid(const StoquasticMatrix& h);

inline constexpr std::size_t kDefaultMaxSpins = 20;

/// Periodic hopping ring: -t between neighbours i and i+1 mod N.
StoquasticMatrix build_ring(std::size_t sites, double hopping);

/// -B * sum_k sigma^x_k on n spins; the graph is the hypercube Q_n.
/// Basis index bit k is spin k, with bit value 0 meaning s = +1.
StoquasticMatrix build_transverse_field(std::size_t spins, double field,
                                        std::size_t max_spins = kDefaultMaxSpins);

/// Open Ising chain -sum_k (s_k s_{k+1} + 2) - B sum_k sigma^x_k.
StoquasticMatrix build_ising_chain(std::size_t spins, double field,
                                   std::size_t max_spins = kDefaultMaxSpins);

enum class ModelKind { ring, transverse_field, ising_chain, file };

ModelKind parse_model_kind(const std::string& name);
const char* to_string(ModelKind kind);

struct ModelSpec {
  ModelKind kind = ModelKind::ring;
  std::size_t size = 0;   // sites for ring, spins for the spin models
  double coupling = 1.0;  // t for ring, B for the spin models
  std::filesystem::path path;
};

StoquasticMatrix build_model(const ModelSpec& spec, std::size_t max_spins = kDefaultMaxSpins);

// Text format: "stoq 1", "N nnz", then nnz lines "i j value"; '#' comments.
void write_matrix(std::ostream& os, const StoquasticMatrix& h);
/// Parses and validates; parse errors name the offending line.
StoquasticMatrix read_matrix(std::istream& is, const std::string& source = "<stream>");
void save_matrix(const StoquasticMatrix& h, const std::filesystem::path& path);
StoquasticMatrix load_matrix(const std::filesystem::path& path);

}  // namespace cheeger_gap
