#pragma once

#include <span>
#include <vector>

#include "dsfa/dynamics.hpp"

namespace dsfa {

/// Inclusive range of absolute time indices.
struct TimeWindow {
  long lo = 0;
  long hi = -1;
  std::size_t size() const noexcept { return hi < lo ? 0 : static_cast<std::size_t>(hi - lo + 1); }
  bool operator==(const TimeWindow&) const = default;
};

/// Centered delay embedding. Row r holds the vector for center time
/// window.lo + r; component j is u(t + offsets[j]). Storage is column-major so
/// each component is a contiguous, shifted slice of the input series.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t dimension, std::size_t delay, TimeWindow window, std::vector<long> offsets,
                  std::vector<double> column_major);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t delay() const noexcept { return delay_; }
  std::size_t rows() const noexcept { return window_.size(); }
  const TimeWindow& window() const noexcept { return window_; }
  const std::vector<long>& offsets() const noexcept { return offsets_; }

  std::span<const double> column(std::size_t j) const {
    return {data_.data() + j * rows(), rows()};
  }
  double operator()(std::size_t row, std::size_t col) const { return data_[col * rows() + row]; }
  std::vector<double> row(std::size_t r) const;
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t dimension_ = 0;
  std::size_t delay_ = 0;
  TimeWindow window_;
  std::vector<long> offsets_;
  std::vector<double> data_;
};

/// Offsets of the m taps relative to the center time. Odd m is symmetric;
/// even m is shifted by floor(delay / 2).
std::vector<long> embedding_offsets(std::size_t dimension, std::size_t delay);

EmbeddingMatrix embed(const TimeSeries& series, std::size_t dimension, std::size_t delay);

/// Samples of `values` (indexed from absolute time `first_time`) restricted to
/// `window`.
std::vector<double> window_restrict(std::span<const double> values, long first_time, const TimeWindow& window);

std::vector<double> window_restrict(const DrivingForce& force, const TimeWindow& window);

}  // namespace dsfa
