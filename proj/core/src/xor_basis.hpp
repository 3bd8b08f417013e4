#pragma once

#include <bit>
#include <cstdint>
#include <vector>

// GF(2) elimination helpers shared by the translation units in src/.

namespace framepot::detail {

// basis keyed by lowest set bit, words up to 64 coordinates
struct XorBasis64 {
  uint64_t piv[64] = {};
  int rank = 0;

  // reduces w against the basis; true iff w was independent (then absorbed)
  bool insert(uint64_t w) {
    while (w) {
      const int b = std::countr_zero(w);
      if (!piv[b]) {
        piv[b] = w;
        ++rank;
        return true;
      }
      w ^= piv[b];
    }
    return false;
  }
};

// echelon basis over wide bit vectors (one uint64 block per 64 coordinates);
// each stored row keeps a distinct leading coordinate
struct WideXorBasis {
  std::vector<std::vector<uint64_t>> rows;
  std::vector<int> leads;

  static int first_bit(const std::vector<uint64_t>& v) {
    for (size_t w = 0; w < v.size(); ++w)
      if (v[w]) return static_cast<int>(w * 64) + std::countr_zero(v[w]);
    return -1;
  }

  bool insert(std::vector<uint64_t> v) {
    for (;;) {
      const int lead = first_bit(v);
      if (lead < 0) return false;
      size_t hit = rows.size();
      for (size_t i = 0; i < rows.size(); ++i)
        if (leads[i] == lead) {
          hit = i;
          break;
        }
      if (hit == rows.size()) {
        rows.push_back(std::move(v));
        leads.push_back(lead);
        return true;
      }
      for (size_t w = 0; w < v.size(); ++w) v[w] ^= rows[hit][w];
    }
  }
};

}  // namespace framepot::detail
