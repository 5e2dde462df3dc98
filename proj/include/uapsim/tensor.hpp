#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace uap {

// Thrown when tensor extents do not line up; message names the mismatch.
class ShapeError : public std::runtime_error {
 public:
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

using MatMap =
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using ConstMatMap = Eigen::Map<
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

// Dense row-major float64 tensor. Rank is arbitrary; 2-D views flatten all
// trailing extents into the column dimension, which is what every layer and
// loss in this library works on.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape)
      : shape_(std::move(shape)), data_(numel(shape_), 0.0) {}
  Tensor(std::vector<std::size_t> shape, std::vector<double> values)
      : shape_(std::move(shape)), data_(std::move(values)) {
    if (data_.size() != numel(shape_))
      throw ShapeError("tensor data length " + std::to_string(data_.size()) +
                       " does not match shape product " +
                       std::to_string(numel(shape_)));
  }

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  std::size_t extent(std::size_t i) const { return shape_.at(i); }
  bool empty() const { return data_.empty(); }

  // Leading extent, i.e. the batch dimension for activations.
  std::size_t rows() const { return shape_.empty() ? 0 : shape_[0]; }
  // Product of all trailing extents.
  std::size_t row_width() const {
    return shape_.empty() || shape_[0] == 0 ? 0 : data_.size() / shape_[0];
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& values() { return data_; }
  const std::vector<double>& values() const { return data_; }

  double& at(std::size_t r, std::size_t c) { return data_[r * row_width() + c]; }
  double at(std::size_t r, std::size_t c) const {
    return data_[r * row_width() + c];
  }

  MatMap mat() {
    return MatMap(data_.data(), static_cast<Eigen::Index>(rows()),
                  static_cast<Eigen::Index>(row_width()));
  }
  ConstMatMap mat() const {
    return ConstMatMap(data_.data(), static_cast<Eigen::Index>(rows()),
                       static_cast<Eigen::Index>(row_width()));
  }

  void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  static Tensor zeros_like(const Tensor& t) { return Tensor(t.shape()); }

  static std::string shape_string(const std::vector<std::size_t>& shape) {
    std::string s = "(";
    for (std::size_t i = 0; i < shape.size(); ++i)
      s += (i ? "x" : "") + std::to_string(shape[i]);
    return s + ")";
  }
  std::string shape_string() const { return shape_string(shape_); }

 private:
  static std::size_t numel(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t e : shape) n *= e;
    return shape.empty() ? 0 : n;
  }

  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

inline void require_width(const Tensor& t, std::size_t width,
                          const std::string& where) {
  if (t.row_width() != width)
    throw ShapeError(where + ": expected row width " + std::to_string(width) +
                     ", got " + std::to_string(t.row_width()) + " for shape " +
                     t.shape_string());
}

}  // namespace uap
