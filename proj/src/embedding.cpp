#include "dsfa/embedding.hpp"

#include <algorithm>
#include <string>

#include "dsfa/error.hpp"

namespace dsfa {

EmbeddingMatrix::EmbeddingMatrix(std::size_t dimension, std::size_t delay, TimeWindow window,
                                 std::vector<long> offsets, std::vector<double> column_major)
    : dimension_(dimension),
      delay_(delay),
      window_(window),
      offsets_(std::move(offsets)),
      data_(std::move(column_major)) {
  if (offsets_.size() != dimension_ || data_.size() != dimension_ * window_.size())
    throw InvalidParameter("embedding storage does not match its shape");
}

std::vector<double> EmbeddingMatrix::row(std::size_t r) const {
  std::vector<double> out(dimension_);
  for (std::size_t j = 0; j < dimension_; ++j) out[j] = (*this)(r, j);
  return out;
}

std::vector<long> embedding_offsets(std::size_t dimension, std::size_t delay) {
  const auto m = static_cast<long>(dimension);
  const auto tau = static_cast<long>(delay);
  const long first = -tau * (m / 2) + (m % 2 == 0 ? tau / 2 : 0);
  std::vector<long> offsets(dimension);
  for (long j = 0; j < m; ++j) offsets[static_cast<std::size_t>(j)] = first + tau * j;
  return offsets;
}

EmbeddingMatrix embed(const TimeSeries& series, std::size_t dimension, std::size_t delay) {
  if (dimension == 0) throw InvalidParameter("embedding dimension must be positive");
  if (delay == 0) throw InvalidParameter("embedding delay must be positive");
  const std::size_t span = delay * (dimension - 1);
  if (series.size() < span + 2)
    throw InsufficientData("series of length " + std::to_string(series.size()) +
                           " too short for m=" + std::to_string(dimension) +
                           ", tau=" + std::to_string(delay));

  std::vector<long> offsets = embedding_offsets(dimension, delay);
  const TimeWindow window{series.start - offsets.front(), series.last_time() - offsets.back()};
  const std::size_t rows = window.size();

  std::vector<double> data(rows * dimension);
  for (std::size_t j = 0; j < dimension; ++j) {
    const auto first = static_cast<std::size_t>(window.lo + offsets[j] - series.start);
    std::copy_n(series.values.begin() + static_cast<std::ptrdiff_t>(first), rows,
                data.begin() + static_cast<std::ptrdiff_t>(j * rows));
  }
  return EmbeddingMatrix(dimension, delay, window, std::move(offsets), std::move(data));
}

std::vector<double> window_restrict(std::span<const double> values, long first_time, const TimeWindow& window) {
  const long last_time = first_time + static_cast<long>(values.size()) - 1;
  if (window.lo < first_time || window.hi > last_time || window.hi < window.lo)
    throw InvalidParameter("window [" + std::to_string(window.lo) + "," + std::to_string(window.hi) +
                           "] outside [" + std::to_string(first_time) + "," + std::to_string(last_time) + "]");
  const auto begin = values.begin() + (window.lo - first_time);
  return {begin, begin + static_cast<std::ptrdiff_t>(window.size())};
}

std::vector<double> window_restrict(const DrivingForce& force, const TimeWindow& window) {
  return window_restrict(force.values, DrivingForce::kFirstTime, window);
}

}  // namespace dsfa
