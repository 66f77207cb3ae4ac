#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "f4kit/fields.hpp"

namespace f4kit {

using Vector = std::vector<Element>;

/// Dense row-major matrix over a Field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& field, std::size_t n);
  static Matrix diagonal(const Field& field, const Vector& entries);
  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(const Field& field, std::size_t rows, const std::vector<Vector>& columns);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  Vector operator*(const Vector& v) const;
  friend bool operator==(const Matrix& a, const Matrix& b);

  bool is_symmetric() const;
  Element determinant() const;
  /// nullopt when singular.
  std::optional<Matrix> inverse() const;
  /// Basis of the right null space {x : A x = 0}.
  std::vector<Vector> null_space() const;
  std::size_t rank() const;

  Matrix embed(const Field& target) const;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

Vector zero_vector(const Field& field, std::size_t n);
Vector unit_vector(const Field& field, std::size_t n, std::size_t i);
bool is_zero_vector(const Vector& v);
Vector embed(const Vector& v, const Field& target);

}  // namespace f4kit
