#pragma once

#include <cstdint>

namespace matsemi {

  //! Size limits.  Exceeding any of them raises CapExceeded; nothing is ever
  //! truncated silently.
  struct Caps {
    int           max_q           = 64;
    int           max_n           = 8;
    std::uint64_t max_enumeration = std::uint64_t(1) << 20;
    // whole-semigroup scans of M(n, q)
    std::uint64_t max_universe = 4096;
    // brute-force pair scans (sg_classes brute, primary witness search)
    std::uint64_t max_brute = 512;
    // backtracking isomorphism search
    std::uint64_t max_iso = 64;
    // 2^m subset scans
    std::uint64_t max_subset_elems = 16;

    //! Raises the element-count caps to at least `max_elems` (--max-elems).
    static Caps raised_to(std::uint64_t max_elems) {
      Caps c;
      if (max_elems > c.max_universe) {
        c.max_universe = max_elems;
      }
      if (max_elems > c.max_brute) {
        c.max_brute = max_elems;
      }
      if (max_elems > c.max_enumeration) {
        c.max_enumeration = max_elems;
      }
      return c;
    }
  };

  // Computes base^exp, saturating at UINT64_MAX.
  constexpr std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
      if (base != 0 && result > UINT64_MAX / base) {
        return UINT64_MAX;
      }
      result *= base;
    }
    return result;
  }

}  // namespace matsemi
