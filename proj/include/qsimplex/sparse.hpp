#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qsimplex/error.hpp"

namespace qsimplex {

/// Column-major sparse matrix. Row indices within a column are sorted and
/// every stored value is finite and nonzero.
class SparseMatrix {
 public:
  using Column = std::vector<std::pair<std::size_t, double>>;

  SparseMatrix() = default;

  SparseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), col_start_(cols + 1, 0) {}

  /// Builds from per-column (row, value) lists. Explicit zeros are dropped,
  /// duplicate rows within a column are summed.
  static SparseMatrix from_columns(std::size_t rows, std::span<const Column> columns) {
    SparseMatrix out(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      Column col = columns[j];
      std::sort(col.begin(), col.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::size_t k = 0;
      while (k < col.size()) {
        const std::size_t row = col[k].first;
        require(row < rows, ErrorCode::InvalidArgument,
                "row index " + std::to_string(row) + " out of range in column " + std::to_string(j));
        double value = 0.0;
        while (k < col.size() && col[k].first == row) value += col[k++].second;
        require(std::isfinite(value), ErrorCode::InvalidArgument,
                "non-finite entry in column " + std::to_string(j));
        if (value != 0.0) {
          out.row_index_.push_back(row);
          out.values_.push_back(value);
        }
      }
      out.col_start_[j + 1] = out.row_index_.size();
    }
    return out;
  }

  static SparseMatrix from_dense(const Eigen::MatrixXd& dense) {
    std::vector<Column> cols(static_cast<std::size_t>(dense.cols()));
    for (Eigen::Index j = 0; j < dense.cols(); ++j)
      for (Eigen::Index i = 0; i < dense.rows(); ++i)
        if (dense(i, j) != 0.0) cols[j].emplace_back(static_cast<std::size_t>(i), dense(i, j));
    return from_columns(static_cast<std::size_t>(dense.rows()), cols);
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t nnz() const noexcept { return values_.size(); }

  [[nodiscard]] std::span<const std::size_t> column_rows(std::size_t j) const {
    return {row_index_.data() + col_start_[j], col_start_[j + 1] - col_start_[j]};
  }
  [[nodiscard]] std::span<const double> column_values(std::size_t j) const {
    return {values_.data() + col_start_[j], col_start_[j + 1] - col_start_[j]};
  }
  [[nodiscard]] std::size_t column_nnz(std::size_t j) const {
    return col_start_[j + 1] - col_start_[j];
  }

  [[nodiscard]] std::size_t max_column_nnz() const {
    std::size_t best = 0;
    for (std::size_t j = 0; j < cols_; ++j) best = std::max(best, column_nnz(j));
    return best;
  }

  /// Nonzero count per row, i.e. the row-major mirror reduced to counts.
  [[nodiscard]] std::vector<std::size_t> row_nnz() const {
    std::vector<std::size_t> counts(rows_, 0);
    for (std::size_t r : row_index_) ++counts[r];
    return counts;
  }

  [[nodiscard]] double max_abs() const {
    double best = 0.0;
    for (double v : values_) best = std::max(best, std::abs(v));
    return best;
  }

  [[nodiscard]] Eigen::VectorXd column_dense(std::size_t j) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows_));
    auto rs = column_rows(j);
    auto vs = column_values(j);
    for (std::size_t k = 0; k < rs.size(); ++k) v(static_cast<Eigen::Index>(rs[k])) = vs[k];
    return v;
  }

  [[nodiscard]] double column_norm(std::size_t j) const {
    double s = 0.0;
    for (double v : column_values(j)) s += v * v;
    return std::sqrt(s);
  }

  [[nodiscard]] Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_),
                                              static_cast<Eigen::Index>(cols_));
    for (std::size_t j = 0; j < cols_; ++j) d.col(static_cast<Eigen::Index>(j)) = column_dense(j);
    return d;
  }

  [[nodiscard]] SparseMatrix select_columns(std::span<const std::size_t> which) const {
    std::vector<Column> cols;
    cols.reserve(which.size());
    for (std::size_t j : which) {
      require(j < cols_, ErrorCode::InvalidArgument, "column index out of range");
      Column c;
      auto rs = column_rows(j);
      auto vs = column_values(j);
      for (std::size_t k = 0; k < rs.size(); ++k) c.emplace_back(rs[k], vs[k]);
      cols.push_back(std::move(c));
    }
    return from_columns(rows_, cols);
  }

  [[nodiscard]] Eigen::VectorXd multiply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows_));
    for (std::size_t j = 0; j < cols_; ++j) {
      const double xj = x(static_cast<Eigen::Index>(j));
      if (xj == 0.0) continue;
      auto rs = column_rows(j);
      auto vs = column_values(j);
      for (std::size_t k = 0; k < rs.size(); ++k) y(static_cast<Eigen::Index>(rs[k])) += vs[k] * xj;
    }
    return y;
  }

  [[nodiscard]] Eigen::VectorXd multiply_transpose(const Eigen::VectorXd& y) const {
    Eigen::VectorXd x(static_cast<Eigen::Index>(cols_));
    for (std::size_t j = 0; j < cols_; ++j) {
      double s = 0.0;
      auto rs = column_rows(j);
      auto vs = column_values(j);
      for (std::size_t k = 0; k < rs.size(); ++k) s += vs[k] * y(static_cast<Eigen::Index>(rs[k]));
      x(static_cast<Eigen::Index>(j)) = s;
    }
    return x;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> col_start_{0};
  std::vector<std::size_t> row_index_;
  std::vector<double> values_;
};

}  // namespace qsimplex
