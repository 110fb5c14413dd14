#pragma once

#include <optional>
#include <unordered_set>
#include <vector>

#include "caps.hpp"
#include "matset.hpp"
#include "table.hpp"

namespace matsemi {

  //! Least multiplicatively closed superset of `seed`.
  inline MatSet closure(MatSet const& seed, Caps const& caps = {}) {
    std::vector<Matrix>                            members(seed.begin(), seed.end());
    std::unordered_set<Matrix, MatrixHash>         seen(members.begin(), members.end());
    // Every pair (i, j) is multiplied once max(i, j) has been reached.
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        for (int side = 0; side < 2; ++side) {
          Matrix p = side == 0 ? members[i] * members[j] : members[j] * members[i];
          if (seen.insert(p).second) {
            members.push_back(std::move(p));
            if (members.size() > caps.max_enumeration) {
              fail(ErrorKind::CapExceeded, "closure grew beyond the cap");
            }
          }
        }
      }
    }
    return MatSet(seed.field(), seed.dim(), std::move(members));
  }

  //! Closure of `seed` inside an ambient table.  `stop(id)` is consulted for
  //! every element as it joins; returning true abandons the computation.
  template <typename Stop>
  std::optional<Bits> closure_in(SemigroupTable const& ambient,
                                 Bits const&           seed,
                                 Stop&&                stop) {
    Bits            in = seed;
    std::vector<Id> members;
    for (auto x = seed.find_first(); x != Bits::npos; x = seed.find_next(x)) {
      if (stop(static_cast<Id>(x))) {
        return std::nullopt;
      }
      members.push_back(static_cast<Id>(x));
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        Id const products[2] = {ambient.mul(members[i], members[j]),
                                ambient.mul(members[j], members[i])};
        for (Id p : products) {
          if (!in.test(p)) {
            if (stop(p)) {
              return std::nullopt;
            }
            in.set(p);
            members.push_back(p);
          }
        }
      }
    }
    return in;
  }

  inline Bits closure_in(SemigroupTable const& ambient, Bits const& seed) {
    return *closure_in(ambient, seed, [](Id) { return false; });
  }

  inline bool is_closed_in(SemigroupTable const& ambient, Bits const& s) {
    for (auto a = s.find_first(); a != Bits::npos; a = s.find_next(a)) {
      for (auto b = s.find_first(); b != Bits::npos; b = s.find_next(b)) {
        if (!s.test(ambient.mul(static_cast<Id>(a), static_cast<Id>(b)))) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace matsemi
