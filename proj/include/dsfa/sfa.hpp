#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dsfa/embedding.hpp"

namespace dsfa {

struct ExpansionSpec {
  int degree = 2;
  std::size_t input_dimension = 0;

  /// m for degree 1, m + m(m+1)/2 for degree 2.
  std::size_t expanded_dimension() const noexcept;
  bool operator==(const ExpansionSpec&) const = default;
};

/// Monomial expansion of every row of `input` (samples x m). Column order is
/// x_1..x_m followed by the upper-triangular products x_i x_j (i <= j) in
/// row-major order: x_1^2, x_1 x_2, ..., x_1 x_m, x_2^2, ..., x_m^2.
Eigen::MatrixXd expand(const Eigen::Ref<const Eigen::MatrixXd>& input, int degree);
Eigen::MatrixXd expand(const EmbeddingMatrix& rows, int degree);

/// Mean squared successive difference, <(y(t+1) - y(t))^2> over the n-1
/// differences of an n-sample signal.
double delta(std::span<const double> signal);

struct FitOptions {
  int degree = 2;
  std::size_t components = 10;
  /// Singular directions with sigma_i < svd_cutoff * sigma_max are discarded
  /// before sphering.
  double svd_cutoff = 1e-7;
};

/// Fitted slow feature transform:
///   y = projections^T * whitening * (h(x) - expansion_mean)
struct SfaModel {
  ExpansionSpec expansion;
  Eigen::VectorXd expansion_mean;   // D
  Eigen::MatrixXd whitening;        // d' x D
  Eigen::MatrixXd projections;      // d' x k, orthonormal columns
  Eigen::VectorXd delta_values;     // k, ascending
  Eigen::VectorXd singular_values;  // all singular values of the centered expansion, descending
  double svd_cutoff = 1e-7;
  bool degenerate_pair = false;

  std::size_t retained_rank() const noexcept { return static_cast<std::size_t>(whitening.rows()); }
  std::size_t components() const noexcept { return static_cast<std::size_t>(projections.cols()); }
};

struct OutputSignals {
  Eigen::MatrixXd signals;  // samples x k, column i is y_{i+1}
  Eigen::VectorXd delta_values;
  TimeWindow window;        // center times of the rows, when known

  std::size_t components() const noexcept { return static_cast<std::size_t>(signals.cols()); }
  std::size_t samples() const noexcept { return static_cast<std::size_t>(signals.rows()); }
  std::span<const double> signal(std::size_t i) const {
    return {signals.col(static_cast<Eigen::Index>(i)).data(), samples()};
  }
};

struct FitResult {
  SfaModel model;
  OutputSignals outputs;
  std::vector<std::string> warnings;
};

FitResult fit(const Eigen::Ref<const Eigen::MatrixXd>& input, const FitOptions& options);
FitResult fit(const EmbeddingMatrix& rows, const FitOptions& options);

/// Whitened training-space signals z = whitening * (h(x) - mean), samples x d'.
Eigen::MatrixXd whiten(const SfaModel& model, const Eigen::Ref<const Eigen::MatrixXd>& input);

/// Applies a fitted model to new input. Outputs are not renormalized.
OutputSignals apply(const SfaModel& model, const Eigen::Ref<const Eigen::MatrixXd>& input);
OutputSignals apply(const SfaModel& model, const EmbeddingMatrix& rows);

/// Text serialization; doubles are written with 17 significant digits so a
/// round trip is bit-exact.
void save_model(const SfaModel& model, std::ostream& out);
SfaModel load_model(std::istream& in);
void save_model(const SfaModel& model, const std::string& path);
SfaModel load_model(const std::string& path);

}  // namespace dsfa
