#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

#include "caps.hpp"
#include "table.hpp"

namespace matsemi {

  //! Every multiplicatively closed subset of a table with at most 16
  //! elements, as bitmasks over ids in ascending mask order.  The scan is
  //! split into contiguous mask ranges across `threads`; output order does
  //! not depend on the thread count.
  inline std::vector<std::uint32_t>
  enumerate_subsemigroups(SemigroupTable const& t,
                          bool                  include_empty = false,
                          unsigned              threads       = 1,
                          Caps const&           caps          = {}) {
    std::size_t const m = t.size();
    if (m > caps.max_subset_elems || m > 31) {
      fail(ErrorKind::CapExceeded,
           "subset scan needs at most " + std::to_string(caps.max_subset_elems)
               + " elements, got " + std::to_string(m));
    }
    std::vector<std::uint32_t> prod(m * m);
    for (Id a = 0; a < m; ++a) {
      for (Id b = 0; b < m; ++b) {
        prod[a * m + b] = std::uint32_t{1} << t.mul(a, b);
      }
    }
    auto closed = [&](std::uint32_t mask) {
      for (std::uint32_t x = mask; x != 0; x &= x - 1) {
        unsigned const a = static_cast<unsigned>(__builtin_ctz(x));
        for (std::uint32_t y = mask; y != 0; y &= y - 1) {
          unsigned const b = static_cast<unsigned>(__builtin_ctz(y));
          if ((prod[a * m + b] & mask) == 0) {
            return false;
          }
        }
      }
      return true;
    };
    std::uint64_t const total = std::uint64_t{1} << m;
    threads                   = std::max(1u, threads);
    std::vector<std::vector<std::uint32_t>> found(threads);
    auto scan = [&](unsigned slot) {
      std::uint64_t const lo = total * slot / threads;
      std::uint64_t const hi = total * (slot + 1) / threads;
      for (std::uint64_t mask = lo; mask < hi; ++mask) {
        if ((mask != 0 || include_empty) && closed(static_cast<std::uint32_t>(mask))) {
          found[slot].push_back(static_cast<std::uint32_t>(mask));
        }
      }
    };
    if (threads == 1) {
      scan(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned s = 0; s < threads; ++s) {
        pool.emplace_back(scan, s);
      }
    }
    std::vector<std::uint32_t> out;
    for (auto const& part : found) {
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }

}  // namespace matsemi
