#include "fdga/linsolve.hpp"

#include <algorithm>

#include "fdga/error.hpp"

namespace fdga {

namespace {

using Row = LinearSystem::Row;

Row canonical_row(const Row& in, const Field& field) {
  Row row = in;
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Row out;
  for (auto& [col, value] : row) {
    if (!out.empty() && out.back().first == col) {
      out.back().second += value;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!value.is_zero()) {
      out.emplace_back(col, field.make(value));
    }
  }
  return out;
}

// row - factor * pivot, both sorted by column
Row subtract_multiple(const Row& row, const Scalar& factor, const Row& pivot) {
  Row out;
  out.reserve(row.size() + pivot.size());
  auto a = row.begin();
  auto b = pivot.begin();
  while (a != row.end() || b != pivot.end()) {
    if (b == pivot.end() || (a != row.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == row.end() || b->first < a->first) {
      out.emplace_back(b->first, -(factor * b->second));
      ++b;
    } else {
      Scalar v = a->second - factor * b->second;
      if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

}  // namespace

bool satisfies(const LinearSystem& sys, const std::vector<Scalar>& x) {
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    Scalar acc = sys.field.make(Scalar(0));
    for (const auto& [col, value] : sys.rows[r]) acc += value * x.at(col);
    if (!(acc == sys.rhs[r])) return false;
  }
  return true;
}

std::optional<std::vector<Scalar>> solve_linear(const LinearSystem& sys) {
  const Field& field = sys.field;
  // pivot rows are normalized to a leading 1 in their pivot column
  std::vector<std::ptrdiff_t> pivot_of(sys.columns, -1);
  std::vector<Row> pivots;
  std::vector<Scalar> pivot_rhs;

  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    Row row = canonical_row(sys.rows[r], field);
    Scalar b = field.make(sys.rhs[r]);
    while (!row.empty()) {
      const std::size_t lead = row.front().first;
      if (lead >= sys.columns) fail(ErrorKind::Structure, "column index out of range");
      const auto p = pivot_of[lead];
      if (p < 0) break;
      const Scalar factor = row.front().second;
      row = subtract_multiple(row, factor, pivots[p]);
      b -= factor * pivot_rhs[p];
    }
    if (row.empty()) {
      if (!b.is_zero()) return std::nullopt;
      continue;
    }
    const Scalar inv = row.front().second.inverse();
    for (auto& entry : row) entry.second *= inv;
    pivot_of[row.front().first] = static_cast<std::ptrdiff_t>(pivots.size());
    pivots.push_back(std::move(row));
    pivot_rhs.push_back(b * inv);
  }

  std::vector<Scalar> x(sys.columns, field.make(Scalar(0)));
  for (std::size_t c = sys.columns; c-- > 0;) {
    const auto p = pivot_of[c];
    if (p < 0) continue;
    Scalar value = pivot_rhs[p];
    for (std::size_t k = 1; k < pivots[p].size(); ++k) value -= pivots[p][k].second * x[pivots[p][k].first];
    x[c] = std::move(value);
  }
  if (!satisfies(sys, x)) fail(ErrorKind::InternalAssertion, "linear solution failed substitution check");
  return x;
}

}  // namespace fdga
