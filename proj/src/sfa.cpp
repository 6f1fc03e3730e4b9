#include "dsfa/sfa.hpp"

#include <cmath>
#include <string>

#include "dsfa/error.hpp"
#include "dsfa/kernels.hpp"

namespace dsfa {
namespace {

constexpr double kMaxMatrixBytes = 4.0 * 1024 * 1024 * 1024;

Eigen::Map<const Eigen::MatrixXd> as_matrix(const EmbeddingMatrix& rows) {
  return {rows.data().data(), static_cast<Eigen::Index>(rows.rows()),
          static_cast<Eigen::Index>(rows.dimension())};
}

std::span<double> col_span(Eigen::MatrixXd& m, Eigen::Index j) {
  return {m.col(j).data(), static_cast<std::size_t>(m.rows())};
}

std::span<const double> col_span(const Eigen::MatrixXd& m, Eigen::Index j) {
  return {m.col(j).data(), static_cast<std::size_t>(m.rows())};
}

Eigen::MatrixXd centered(Eigen::MatrixXd expanded, const Eigen::VectorXd& mean) {
  for (Eigen::Index j = 0; j < expanded.cols(); ++j) kernels::add_scalar(col_span(expanded, j), -mean(j));
  return expanded;
}

// Shared by fit and apply so applying a model to its training input
// reproduces the training outputs bit for bit.
Eigen::MatrixXd whiten_centered(const Eigen::MatrixXd& centered_expansion, const Eigen::MatrixXd& whitening) {
  return centered_expansion * whitening.transpose();
}

void check_finite(const Eigen::Ref<const Eigen::MatrixXd>& input) {
  if (!input.allFinite()) throw NumericalDomain("input contains non-finite values");
}

}  // namespace

std::size_t ExpansionSpec::expanded_dimension() const noexcept {
  const std::size_t m = input_dimension;
  return degree == 1 ? m : m + m * (m + 1) / 2;
}

Eigen::MatrixXd expand(const Eigen::Ref<const Eigen::MatrixXd>& input, int degree) {
  if (degree != 1 && degree != 2) throw InvalidParameter("expansion degree must be 1 or 2");
  const ExpansionSpec spec{degree, static_cast<std::size_t>(input.cols())};
  const auto samples = static_cast<double>(input.rows());
  const auto dim = static_cast<double>(spec.expanded_dimension());
  if (dim * dim * 8.0 > kMaxMatrixBytes || samples * dim * 8.0 > kMaxMatrixBytes)
    throw InvalidParameter("expanded dimension " + std::to_string(spec.expanded_dimension()) +
                           " exceeds the memory guard");

  const Eigen::Index m = input.cols();
  Eigen::MatrixXd out(input.rows(), static_cast<Eigen::Index>(spec.expanded_dimension()));
  out.leftCols(m) = input;
  if (degree == 1) return out;

  const Eigen::MatrixXd& lin = out;
  Eigen::Index c = m;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j, ++c) {
      kernels::multiply(col_span(out, c), col_span(lin, i), col_span(lin, j));
    }
  }
  return out;
}

Eigen::MatrixXd expand(const EmbeddingMatrix& rows, int degree) { return expand(as_matrix(rows), degree); }

double delta(std::span<const double> signal) {
  if (signal.size() < 2) throw InsufficientData("delta needs at least 2 samples");
  return kernels::sum_sq_diff(signal) / static_cast<double>(signal.size() - 1);
}

FitResult fit(const Eigen::Ref<const Eigen::MatrixXd>& input, const FitOptions& options) {
  if (options.components == 0) throw InvalidParameter("at least one output component is required");
  if (!(options.svd_cutoff >= 0.0 && options.svd_cutoff < 1.0))
    throw InvalidParameter("svd cutoff must lie in [0, 1)");
  if (input.rows() < 2) throw InsufficientData("fit needs at least 2 samples");
  check_finite(input);

  FitResult result;
  SfaModel& model = result.model;
  model.expansion = {options.degree, static_cast<std::size_t>(input.cols())};
  model.svd_cutoff = options.svd_cutoff;

  Eigen::MatrixXd expanded = expand(input, options.degree);
  const Eigen::Index samples = expanded.rows();
  const Eigen::Index dim = expanded.cols();
  if (samples < dim + 2) {
    result.warnings.push_back("only " + std::to_string(samples) + " samples for expanded dimension " +
                              std::to_string(dim) + "; the fit is underdetermined");
  }

  model.expansion_mean.resize(dim);
  for (Eigen::Index j = 0; j < dim; ++j) model.expansion_mean(j) = kernels::mean(col_span(expanded, j));
  const Eigen::MatrixXd data = centered(std::move(expanded), model.expansion_mean);

  // Sphering. The thin SVD of the centered data is taken through its R
  // factor: data = Q R and R = U S V^T give the same S and V.
  const Eigen::Index r_rows = std::min(samples, dim);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(data);
  const Eigen::MatrixXd r_factor =
      qr.matrixQR().topRows(r_rows).triangularView<Eigen::Upper>();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(r_factor, Eigen::ComputeThinV);
  model.singular_values = svd.singularValues();

  const double sigma_max = model.singular_values.size() > 0 ? model.singular_values(0) : 0.0;
  Eigen::Index retained = 0;
  if (sigma_max > 0.0) {
    while (retained < model.singular_values.size() &&
           model.singular_values(retained) >= options.svd_cutoff * sigma_max)
      ++retained;
  }
  if (retained == 0 || static_cast<std::size_t>(retained) < options.components) {
    throw RankDeficiency("retained rank d'=" + std::to_string(retained) + " is smaller than the " +
                             std::to_string(options.components) + " requested components",
                         retained);
  }

  const double root_n = std::sqrt(static_cast<double>(samples));
  model.whitening = (root_n * model.singular_values.head(retained).cwiseInverse()).asDiagonal() *
                    svd.matrixV().leftCols(retained).transpose();
  const Eigen::MatrixXd z = whiten_centered(data, model.whitening);

  // Second moment of the discrete derivative; no mean removal, divisor L-1.
  const Eigen::MatrixXd dz = z.bottomRows(samples - 1) - z.topRows(samples - 1);
  Eigen::MatrixXd dcov = Eigen::MatrixXd::Zero(retained, retained);
  dcov.selfadjointView<Eigen::Lower>().rankUpdate(dz.transpose(), 1.0 / static_cast<double>(samples - 1));
  dcov.triangularView<Eigen::StrictlyUpper>() = dcov.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dcov);
  if (eig.info() != Eigen::Success) throw NumericalDomain("derivative covariance eigensolver failed");

  const auto k = static_cast<Eigen::Index>(options.components);
  model.projections = eig.eigenvectors().leftCols(k);
  model.delta_values = eig.eigenvalues().head(k).cwiseMax(0.0);
  if (retained >= 2) {
    const double gap = eig.eigenvalues()(1) - eig.eigenvalues()(0);
    model.degenerate_pair = gap < 1e-12 * dcov.trace();
    if (model.degenerate_pair)
      result.warnings.push_back("two smallest derivative eigenvalues coincide; y_1 is any vector in their span");
  }

  result.outputs.signals = z * model.projections;
  result.outputs.delta_values = model.delta_values;
  return result;
}

FitResult fit(const EmbeddingMatrix& rows, const FitOptions& options) {
  FitResult result = fit(as_matrix(rows), options);
  result.outputs.window = rows.window();
  return result;
}

Eigen::MatrixXd whiten(const SfaModel& model, const Eigen::Ref<const Eigen::MatrixXd>& input) {
  if (static_cast<std::size_t>(input.cols()) != model.expansion.input_dimension)
    throw InvalidParameter("input dimension " + std::to_string(input.cols()) + " does not match model dimension " +
                           std::to_string(model.expansion.input_dimension));
  check_finite(input);
  return whiten_centered(centered(expand(input, model.expansion.degree), model.expansion_mean), model.whitening);
}

OutputSignals apply(const SfaModel& model, const Eigen::Ref<const Eigen::MatrixXd>& input) {
  OutputSignals out;
  out.signals = whiten(model, input) * model.projections;
  out.delta_values = model.delta_values;
  return out;
}

OutputSignals apply(const SfaModel& model, const EmbeddingMatrix& rows) {
  OutputSignals out = apply(model, as_matrix(rows));
  out.window = rows.window();
  return out;
}

}  // namespace dsfa
