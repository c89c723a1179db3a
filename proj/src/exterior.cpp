#include "bracketlab/exterior.hpp"

#include <algorithm>

namespace blab {

std::vector<std::size_t> mask_indices(Mask m) {
  std::vector<std::size_t> out;
  while (m) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

Mask mask_of(const std::vector<std::size_t>& idx) {
  Mask m = 0;
  for (auto i : idx) {
    Mask bit = Mask{1} << i;
    if (m & bit) throw DomainError("repeated index in basis element");
    m |= bit;
  }
  return m;
}

int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  // count pairs (i in a, j in b) with i > j
  int inversions = 0;
  Mask bb = b;
  while (bb) {
    int j = std::countr_zero(bb);
    bb &= bb - 1;
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

std::vector<Mask> subsets(std::size_t n, int k) {
  std::vector<Mask> out;
  if (k < 0 || k > static_cast<int>(n)) return out;
  for (Mask m = 0; m < (Mask{1} << n); ++m)
    if (mask_size(m) == k) out.push_back(m);
  std::sort(out.begin(), out.end(), MaskOrder{});
  return out;
}

std::vector<Mask> all_subsets(std::size_t n) {
  std::vector<Mask> out;
  for (int k = 0; k <= static_cast<int>(n); ++k) {
    auto s = subsets(n, k);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

Multivector make_derivation(const Context& ctx, const std::vector<Polynomial>& comps) {
  if (comps.size() != ctx->size()) throw DomainError("make_derivation: wrong number of components");
  Multivector x(ctx, 1);
  for (std::size_t i = 0; i < comps.size(); ++i) x.add_term(Mask{1} << i, comps[i]);
  return x;
}

}  // namespace blab
