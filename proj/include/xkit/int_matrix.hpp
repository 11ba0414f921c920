#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xkit {

// Dense integer matrix with overflow-checked arithmetic.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  std::int64_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::vector<std::int64_t> row(std::size_t i) const;
  std::vector<std::int64_t> col(std::size_t j) const;
  void append_row(const std::vector<std::int64_t>& r);
  bool is_zero() const;

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix&) const = default;

  // elementary operations used by the normal form
  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  void add_row_multiple(std::size_t dst, std::size_t src, std::int64_t k);  // row dst += k row src
  void add_col_multiple(std::size_t dst, std::size_t src, std::int64_t k);
  void negate_row(std::size_t i);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> a_;
};

struct SmithForm {
  IntMatrix D, U, V;  // U * m * V == D
  std::size_t rank = 0;
  std::vector<std::int64_t> diagonal() const;  // the rank nonzero entries
};

SmithForm smith_normal_form(const IntMatrix& m);
// Diagonal of the normal form only; cheaper and without transform growth.
std::vector<std::int64_t> smith_diagonal(const IntMatrix& m);

// Row-style Hermite form: H in echelon form with reduced entries above pivots, same row lattice as m.
struct HermiteForm {
  IntMatrix H;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
HermiteForm hermite_form(const IntMatrix& m);

// Rows k with k*m = 0, a Z-basis of the left kernel.
IntMatrix left_kernel(const IntMatrix& m);
// Columns k with m*k = 0, returned as rows.
IntMatrix right_kernel(const IntMatrix& m);
// Some integer x with x*m = b, if one exists.
std::optional<std::vector<std::int64_t>> solve_left(const IntMatrix& m, const std::vector<std::int64_t>& b);
// Z-basis of the row lattice of m.
IntMatrix row_lattice_basis(const IntMatrix& m);
std::size_t integer_rank(const IntMatrix& m);
// Fraction-free determinant of a square matrix.
std::int64_t determinant(const IntMatrix& m);

// Invariants of Z^n / rowspan(relations): torsion coefficients > 1 and free rank.
struct AbelianInvariants {
  std::vector<std::int64_t> torsion;
  std::size_t free_rank = 0;
  bool is_trivial() const { return torsion.empty() && free_rank == 0; }
  bool operator==(const AbelianInvariants&) const = default;
};
AbelianInvariants cokernel_invariants(const IntMatrix& relations, std::size_t n);
std::string to_string(const AbelianInvariants& inv);

}  // namespace xkit
