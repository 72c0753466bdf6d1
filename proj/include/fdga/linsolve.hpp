#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fdga/scalar.hpp"

namespace fdga {

/// Sparse system A x = b over an exact field.  Rows hold (column, value)
/// entries; duplicate columns within a row are summed.
struct LinearSystem {
  using Entry = std::pair<std::size_t, Scalar>;
  using Row = std::vector<Entry>;

  Field field = Field::rational();
  std::size_t columns = 0;
  std::vector<Row> rows;
  std::vector<Scalar> rhs;

  std::size_t add_row(Row row, Scalar value) {
    rows.push_back(std::move(row));
    rhs.push_back(std::move(value));
    return rows.size() - 1;
  }
};

/// Exact Gaussian elimination.  Free variables are set to zero.  The returned
/// solution is checked by substitution (InternalAssertion on mismatch);
/// std::nullopt means the system is inconsistent.
std::optional<std::vector<Scalar>> solve_linear(const LinearSystem& sys);

/// Residual check used by the solver and the tests.
bool satisfies(const LinearSystem& sys, const std::vector<Scalar>& x);

}  // namespace fdga
