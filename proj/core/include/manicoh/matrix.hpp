#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace manicoh {

using Int = boost::multiprecision::cpp_int;

// Dense row-major matrix of arbitrary-precision integers.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<long long>> rows);

  static Matrix identity(std::size_t n);
  // `cols` is only consulted when `rows` is empty.
  static Matrix from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols = 0);
  static Matrix diagonal(const std::vector<Int>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix& other) const = default;

  bool is_zero() const;
  Matrix transpose() const;
  std::vector<Int> column(std::size_t j) const;
  std::vector<Int> row(std::size_t i) const;
  Matrix columns(std::size_t first, std::size_t count) const;
  Matrix rows_range(std::size_t first, std::size_t count) const;
  Matrix negated() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<Int> operator*(const Matrix& a, const std::vector<Int>& v);
Matrix hconcat(const Matrix& a, const Matrix& b);

// Determinant by fraction-free elimination.
Int determinant(const Matrix& m);

// Non-negative representative of a mod m (m > 0).
Int mod_floor(const Int& a, const Int& m);

}  // namespace manicoh
