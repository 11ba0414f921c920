#pragma once

#include <vector>

#include "xkit/finite_group.hpp"
#include "xkit/group_ring.hpp"
#include "xkit/int_matrix.hpp"

namespace xkit {

// A map of free right Z[G]-modules Z[G]^k -> Z[G]^l, given by the images of the k basis
// vectors as rows. A vector v = sum e_i v_i maps to sum_i row_i * v_i.
using ModuleMatrix = std::vector<std::vector<ZG>>;

// Z-coordinates of the free module: index i*|G| + g stands for e_i g.
std::vector<std::int64_t> expand_vector(const std::vector<ZG>& v, const FiniteGroup& g);
std::vector<ZG> fold_vector(const std::vector<std::int64_t>& coords, std::size_t rank, const FiniteGroup& g);
// Integer matrix of the map on Z-bases: row (i,h) is the image of e_i h.
IntMatrix expand_map(const ModuleMatrix& m, std::size_t cols, const FiniteGroup& g);
// Z-span of all right translates v*h of the given vectors.
IntMatrix translate_closure(const std::vector<std::vector<ZG>>& vectors, std::size_t rank, const FiniteGroup& g);

// Image of the vector v under m.
std::vector<ZG> apply_map(const std::vector<ZG>& v, const ModuleMatrix& m, std::size_t cols, const FiniteGroup& g);
// The composite "first a, then b".
ModuleMatrix compose_maps(const ModuleMatrix& a, const ModuleMatrix& b, std::size_t cols, const FiniteGroup& g);

struct ModuleKernel {
  std::vector<std::vector<ZG>> generators;  // Z[G]-generators of the kernel
  IntMatrix integer_basis;                  // Z-basis in expanded coordinates
  std::size_t rank = 0;                     // Z-rank
};

ModuleKernel module_kernel(const ModuleMatrix& m, std::size_t cols, const FiniteGroup& g);

}  // namespace xkit
