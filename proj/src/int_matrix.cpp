#include "xkit/int_matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "xkit/checked.hpp"

namespace xkit {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
  IntMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

std::vector<std::int64_t> IntMatrix::row(std::size_t i) const {
  return {a_.begin() + static_cast<std::ptrdiff_t>(i * cols_), a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<std::int64_t> IntMatrix::col(std::size_t j) const {
  std::vector<std::int64_t> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

void IntMatrix::append_row(const std::vector<std::int64_t>& r) {
  if (r.size() != cols_) fail(Errc::precondition_failed, "row length mismatch");
  a_.insert(a_.end(), r.begin(), r.end());
  ++rows_;
}

bool IntMatrix::is_zero() const {
  for (auto v : a_)
    if (v) return false;
  return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) fail(Errc::precondition_failed, "matrix product dimension mismatch");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::int64_t v = at(i, k);
      if (!v) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (o.at(k, j)) r.at(i, j) = checked_add(r.at(i, j), checked_mul(v, o.at(k, j)));
    }
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, std::int64_t k) {
  if (!k) return;
  for (std::size_t c = 0; c < cols_; ++c)
    if (at(src, c)) at(dst, c) = checked_add(at(dst, c), checked_mul(k, at(src, c)));
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, std::int64_t k) {
  if (!k) return;
  for (std::size_t r = 0; r < rows_; ++r)
    if (at(r, src)) at(r, dst) = checked_add(at(r, dst), checked_mul(k, at(r, src)));
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) at(i, c) = checked_sub(0, at(i, c));
}

std::vector<std::int64_t> SmithForm::diagonal() const {
  std::vector<std::int64_t> d;
  for (std::size_t i = 0; i < rank; ++i) d.push_back(D.at(i, i));
  return d;
}

namespace {

std::int64_t magnitude(std::int64_t v) {
  if (v == INT64_MIN) fail(Errc::overflow, "integer magnitude overflow");
  return v < 0 ? -v : v;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), 0};
  IntMatrix& A = s.D;
  const std::size_t R = A.rows(), C = A.cols();
  auto row_op = [&](std::size_t dst, std::size_t src, std::int64_t k) {
    A.add_row_multiple(dst, src, k);
    s.U.add_row_multiple(dst, src, k);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, std::int64_t k) {
    A.add_col_multiple(dst, src, k);
    s.V.add_col_multiple(dst, src, k);
  };
  auto swap_r = [&](std::size_t i, std::size_t j) {
    A.swap_rows(i, j);
    s.U.swap_rows(i, j);
  };
  auto swap_c = [&](std::size_t i, std::size_t j) {
    A.swap_cols(i, j);
    s.V.swap_cols(i, j);
  };

  std::size_t t = 0;
  for (; t < std::min(R, C); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::size_t pi = R, pj = C;
    std::int64_t best = 0;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (A.at(i, j) && (best == 0 || magnitude(A.at(i, j)) < best)) {
          best = magnitude(A.at(i, j));
          pi = i;
          pj = j;
        }
    if (best == 0) break;
    swap_r(t, pi);
    swap_c(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        row_op(i, t, -(A.at(i, t) / A.at(t, t)));
        if (A.at(i, t)) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        col_op(j, t, -(A.at(t, j) / A.at(t, t)));
        if (A.at(t, j)) clean = false;
      }
      if (!clean) {
        std::size_t bi = t, bj = t;
        std::int64_t b = magnitude(A.at(t, t));
        for (std::size_t i = t + 1; i < R; ++i)
          if (A.at(i, t) && magnitude(A.at(i, t)) < b) {
            b = magnitude(A.at(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < C; ++j)
          if (A.at(t, j) && magnitude(A.at(t, j)) < b) {
            b = magnitude(A.at(t, j));
            bi = t;
            bj = j;
          }
        swap_r(t, bi);
        swap_c(t, bj);
        continue;
      }
      // divisibility: fold an offending row into the pivot row and repeat
      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (A.at(i, j) % A.at(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == R) break;
      row_op(t, bad, 1);
    }
    if (A.at(t, t) < 0) {
      A.negate_row(t);
      s.U.negate_row(t);
    }
  }
  s.rank = t;
  return s;
}

namespace {

struct ExtGcd {
  std::int64_t g, s, t;
};

ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = checked_sub(old_r, checked_mul(q, r));
    old_r = r;
    r = tmp;
    tmp = checked_sub(old_s, checked_mul(q, s));
    old_s = s;
    s = tmp;
    tmp = checked_sub(old_t, checked_mul(q, t));
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// rows i, j <- (s*i + t*j, u*i + v*j) with s*v - t*u = 1
void combine_rows(IntMatrix& m, std::size_t i, std::size_t j, std::int64_t s, std::int64_t t, std::int64_t u,
                  std::int64_t v) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::int64_t a = m.at(i, c), b = m.at(j, c);
    if (!a && !b) continue;
    m.at(i, c) = checked_add(checked_mul(s, a), checked_mul(t, b));
    m.at(j, c) = checked_add(checked_mul(u, a), checked_mul(v, b));
  }
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

HermiteForm hermite_form(const IntMatrix& m) {
  HermiteForm h{m, 0, {}};
  IntMatrix& A = h.H;
  const std::size_t R = A.rows(), C = A.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    for (std::size_t i = row + 1; i < R; ++i) {
      std::int64_t a = A.at(row, col), b = A.at(i, col);
      if (b == 0) continue;
      if (a == 0) {
        A.swap_rows(row, i);
      } else if (b % a == 0) {
        A.add_row_multiple(i, row, -(b / a));
      } else {
        ExtGcd e = ext_gcd(a, b);
        combine_rows(A, row, i, e.s, e.t, -(b / e.g), a / e.g);
      }
    }
    if (A.at(row, col) == 0) continue;
    if (A.at(row, col) < 0) A.negate_row(row);
    for (std::size_t i = 0; i < row; ++i) A.add_row_multiple(i, row, -floor_div(A.at(i, col), A.at(row, col)));
    h.pivots.push_back(col);
    ++row;
  }
  h.rank = row;
  return h;
}

std::vector<std::int64_t> smith_diagonal(const IntMatrix& m) {
  return smith_normal_form(row_lattice_basis(m)).diagonal();
}

IntMatrix row_lattice_basis(const IntMatrix& m) {
  HermiteForm h = hermite_form(m);
  IntMatrix out(0, m.cols());
  for (std::size_t i = 0; i < h.rank; ++i) out.append_row(h.H.row(i));
  return out;
}

namespace {

// Pairwise reduction: subtract rounded projections while some row norm strictly drops.
void size_reduce(IntMatrix& K) {
  auto dot = [&](std::size_t a, std::size_t b) {
    __int128 s = 0;
    for (std::size_t j = 0; j < K.cols(); ++j) s += static_cast<__int128>(K.at(a, j)) * K.at(b, j);
    return s;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < K.rows(); ++i)
      for (std::size_t j = 0; j < K.rows(); ++j) {
        if (i == j) continue;
        __int128 nj = dot(j, j), ij = dot(i, j);
        if (nj == 0) continue;
        long double qf = std::nearbyint(static_cast<long double>(ij) / static_cast<long double>(nj));
        if (qf == 0 || std::fabs(qf) > 1e15L) continue;
        auto q = static_cast<__int128>(qf);
        // |K_i - q K_j|^2 - |K_i|^2 = q^2 |K_j|^2 - 2 q <K_i, K_j>
        if (q * q * nj - 2 * q * ij >= 0) continue;
        K.add_row_multiple(i, j, -static_cast<std::int64_t>(q));
        changed = true;
      }
  }
}

}  // namespace

// Kernel of one column at a time, size-reduced after every column to keep entries small.
IntMatrix left_kernel(const IntMatrix& m) {
  IntMatrix K = IntMatrix::identity(m.rows());
  for (std::size_t c = 0; c < m.cols() && K.rows() > 0; ++c) {
    std::vector<std::int64_t> v(K.rows(), 0);
    bool any = false;
    for (std::size_t i = 0; i < K.rows(); ++i) {
      for (std::size_t j = 0; j < K.cols(); ++j)
        if (K.at(i, j) && m.at(j, c)) v[i] = checked_add(v[i], checked_mul(K.at(i, j), m.at(j, c)));
      any = any || v[i] != 0;
    }
    if (!any) continue;
    std::size_t p = 0;
    for (;;) {
      p = K.rows();
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] && (p == K.rows() || magnitude(v[i]) < magnitude(v[p]))) p = i;
      bool clean = true;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i == p || !v[i]) continue;
        std::int64_t q = v[i] / v[p];
        K.add_row_multiple(i, p, -q);
        v[i] -= q * v[p];
        if (v[i]) clean = false;
      }
      if (clean) break;
    }
    IntMatrix next(0, K.cols());
    for (std::size_t i = 0; i < K.rows(); ++i)
      if (i != p) next.append_row(K.row(i));
    K = std::move(next);
    size_reduce(K);
  }
  return K;
}

IntMatrix right_kernel(const IntMatrix& m) { return left_kernel(m.transpose()); }

std::optional<std::vector<std::int64_t>> solve_left(const IntMatrix& m, const std::vector<std::int64_t>& b) {
  if (b.size() != m.cols()) fail(Errc::precondition_failed, "solve_left dimension mismatch");
  // x m = b  <=>  (x, -1) is in the left kernel of m stacked over b
  IntMatrix stacked = m;
  stacked.append_row(b);
  IntMatrix K = left_kernel(stacked);
  const std::size_t last = m.rows();
  std::vector<std::int64_t> acc(last + 1, 0);
  std::int64_t g = 0;
  for (std::size_t i = 0; i < K.rows(); ++i) {
    std::int64_t t = K.at(i, last);
    if (!t) continue;
    if (g == 0) {
      acc = K.row(i);
      g = t;
      continue;
    }
    ExtGcd e = ext_gcd(g, t);
    for (std::size_t j = 0; j <= last; ++j)
      acc[j] = checked_add(checked_mul(e.s, acc[j]), checked_mul(e.t, K.at(i, j)));
    g = e.g;
  }
  if (g != 1 && g != -1) return std::nullopt;
  std::vector<std::int64_t> x(last);
  for (std::size_t j = 0; j < last; ++j) x[j] = g == 1 ? checked_sub(0, acc[j]) : acc[j];
  return x;
}

std::size_t integer_rank(const IntMatrix& m) { return hermite_form(m).rank; }

std::int64_t determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) fail(Errc::precondition_failed, "determinant of non-square matrix");
  if (n == 0) return 1;
  IntMatrix a = m;
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = checked_sub(checked_mul(a.at(i, j), a.at(k, k)), checked_mul(a.at(i, k), a.at(k, j))) / prev;
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

AbelianInvariants cokernel_invariants(const IntMatrix& relations, std::size_t n) {
  AbelianInvariants inv;
  if (relations.rows() == 0) {
    inv.free_rank = n;
    return inv;
  }
  auto diag = smith_diagonal(relations);
  for (std::int64_t d : diag)
    if (d > 1) inv.torsion.push_back(d);
  inv.free_rank = n - diag.size();
  return inv;
}

std::string to_string(const AbelianInvariants& inv) {
  if (inv.is_trivial()) return "0";
  std::string out;
  if (inv.free_rank == 1) out = "Z";
  else if (inv.free_rank > 1) out = "Z^" + std::to_string(inv.free_rank);
  for (auto d : inv.torsion) out += (out.empty() ? "" : " x ") + std::string("C") + std::to_string(d);
  return out;
}

}  // namespace xkit
