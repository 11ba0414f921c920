#include "xkit/module_kernel.hpp"

namespace xkit {

std::vector<std::int64_t> expand_vector(const std::vector<ZG>& v, const FiniteGroup& g) {
  const auto n = static_cast<std::size_t>(g.order());
  std::vector<std::int64_t> out(v.size() * n, 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (const auto& [h, c] : v[i].terms()) out[i * n + h] = c;
  return out;
}

std::vector<ZG> fold_vector(const std::vector<std::int64_t>& coords, std::size_t rank, const FiniteGroup& g) {
  const auto n = static_cast<std::size_t>(g.order());
  std::vector<ZG> out(rank);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t h = 0; h < n; ++h) out[i].add_term(static_cast<int>(h), coords[i * n + h]);
  return out;
}

std::vector<ZG> apply_map(const std::vector<ZG>& v, const ModuleMatrix& m, std::size_t cols, const FiniteGroup& g) {
  std::vector<ZG> out(cols);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j] += multiply(m[i][j], v[i], g);
  return out;
}

ModuleMatrix compose_maps(const ModuleMatrix& a, const ModuleMatrix& b, std::size_t cols, const FiniteGroup& g) {
  ModuleMatrix out;
  for (const auto& row : a) out.push_back(apply_map(row, b, cols, g));
  return out;
}

IntMatrix expand_map(const ModuleMatrix& m, std::size_t cols, const FiniteGroup& g) {
  const auto n = static_cast<std::size_t>(g.order());
  IntMatrix e(m.size() * n, cols * n);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t j = 0; j < cols; ++j)
        for (const auto& [x, c] : m[i][j].terms()) {
          auto& cell = e.at(i * n + h, j * n + g.mul(x, static_cast<int>(h)));
          cell = checked_add(cell, c);
        }
  return e;
}

IntMatrix translate_closure(const std::vector<std::vector<ZG>>& vectors, std::size_t rank, const FiniteGroup& g) {
  IntMatrix out(0, rank * g.order());
  for (const auto& v : vectors)
    for (int h = 0; h < g.order(); ++h) {
      std::vector<ZG> t;
      for (const auto& c : v) t.push_back(right_translate(c, h, g));
      out.append_row(expand_vector(t, g));
    }
  return out;
}

ModuleKernel module_kernel(const ModuleMatrix& m, std::size_t cols, const FiniteGroup& g) {
  const std::size_t k = m.size();
  ModuleKernel out;
  out.integer_basis = left_kernel(expand_map(m, cols, g));
  out.rank = out.integer_basis.rows();
  IntMatrix span(0, k * g.order());
  for (std::size_t r = 0; r < out.integer_basis.rows(); ++r) {
    auto v = out.integer_basis.row(r);
    if (span.rows() > 0 && solve_left(span, v)) continue;
    auto folded = fold_vector(v, k, g);
    out.generators.push_back(folded);
    IntMatrix more = translate_closure({folded}, k, g);
    for (std::size_t i = 0; i < more.rows(); ++i) span.append_row(more.row(i));
  }
  return out;
}

}  // namespace xkit
