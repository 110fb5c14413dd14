#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "caps.hpp"
#include "table.hpp"

namespace matsemi {

  namespace detail {
    // Isomorphism-invariant profile of one element.
    inline std::vector<long> element_profile(SemigroupTable const& t,
                                             Id                    x,
                                             Bits const&           squares) {
      std::size_t const m = t.size();
      Bits              left(m), right(m);
      long              fixes_left = 0, fixes_right = 0, commutes = 0;
      for (Id y = 0; y < m; ++y) {
        left.set(t.mul(x, y));
        right.set(t.mul(y, x));
        fixes_left += t.mul(x, y) == x;
        fixes_right += t.mul(y, x) == x;
        commutes += t.mul(x, y) == t.mul(y, x);
      }
      Bits powers(m);
      Id   p = x;
      while (!powers.test(p)) {
        powers.set(p);
        p = t.mul(p, x);
      }
      return {t.zero_id() == x,
              t.identity_id() == x,
              t.mul(x, x) == x,
              static_cast<long>(left.count()),
              static_cast<long>(right.count()),
              static_cast<long>(powers.count()),
              fixes_left,
              fixes_right,
              commutes,
              squares.test(x)};
    }

    inline std::vector<std::vector<long>> profiles(SemigroupTable const& t) {
      Bits const                     sq = product_set(t, all_ids(t), all_ids(t));
      std::vector<std::vector<long>> out;
      for (Id x = 0; x < t.size(); ++x) {
        out.push_back(element_profile(t, x, sq));
      }
      return out;
    }

    class IsoSearch {
     public:
      IsoSearch(SemigroupTable const& u, SemigroupTable const& w)
          : _u(u),
            _w(w),
            _pu(profiles(u)),
            _pw(profiles(w)),
            _f(u.size(), kNone),
            _used(w.size(), false) {}

      bool profiles_compatible() const {
        auto a = _pu;
        auto b = _pw;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
      }

      std::optional<std::vector<Id>> run() {
        // rarest profile class first
        std::map<std::vector<long>, int> freq;
        for (auto const& p : _pu) {
          ++freq[p];
        }
        for (Id x = 0; x < _u.size(); ++x) {
          _order.push_back(x);
        }
        std::stable_sort(_order.begin(), _order.end(), [&](Id a, Id b) {
          return freq[_pu[a]] < freq[_pu[b]];
        });
        if (!extend(0)) {
          return std::nullopt;
        }
        return _f;
      }

     private:
      static constexpr Id kNone = static_cast<Id>(-1);

      bool assign(Id x, Id y) {
        if (_f[x] != kNone) {
          return _f[x] == y;
        }
        if (_used[y] || _pu[x] != _pw[y]) {
          return false;
        }
        _f[x]    = y;
        _used[y] = true;
        _trail.push_back(x);
        _assigned.push_back(x);
        for (std::size_t i = 0; i < _assigned.size(); ++i) {
          Id const z = _assigned[i];
          if (!assign(_u.mul(x, z), _w.mul(_f[x], _f[z]))
              || !assign(_u.mul(z, x), _w.mul(_f[z], _f[x]))) {
            return false;
          }
        }
        return true;
      }

      void undo(std::size_t mark) {
        while (_trail.size() > mark) {
          Id const x = _trail.back();
          _trail.pop_back();
          _used[_f[x]] = false;
          _f[x]        = kNone;
          _assigned.pop_back();
        }
      }

      bool extend(std::size_t pos) {
        while (pos < _order.size() && _f[_order[pos]] != kNone) {
          ++pos;
        }
        if (pos == _order.size()) {
          return true;
        }
        Id const x = _order[pos];
        for (Id y = 0; y < _w.size(); ++y) {
          if (_used[y] || _pu[x] != _pw[y]) {
            continue;
          }
          std::size_t const mark = _trail.size();
          if (assign(x, y) && extend(pos + 1)) {
            return true;
          }
          undo(mark);
        }
        return false;
      }

      SemigroupTable const&          _u;
      SemigroupTable const&          _w;
      std::vector<std::vector<long>> _pu;
      std::vector<std::vector<long>> _pw;
      std::vector<Id>                _f;
      std::vector<bool>              _used;
      std::vector<Id>                _order;
      std::vector<Id>                _trail;
      std::vector<Id>                _assigned;
    };
  }  // namespace detail

  //! True iff f is a bijection u -> w preserving every product.
  inline bool is_isomorphism(SemigroupTable const& u,
                             SemigroupTable const& w,
                             std::vector<Id> const& f) {
    if (u.size() != w.size() || f.size() != u.size()) {
      return false;
    }
    std::vector<bool> hit(w.size(), false);
    for (Id y : f) {
      if (y >= w.size() || hit[y]) {
        return false;
      }
      hit[y] = true;
    }
    for (Id a = 0; a < u.size(); ++a) {
      for (Id b = 0; b < u.size(); ++b) {
        if (f[u.mul(a, b)] != w.mul(f[a], f[b])) {
          return false;
        }
      }
    }
    return true;
  }

  //! A multiplication-preserving bijection u -> w, or nullopt when none
  //! exists.  Backtracking with product propagation; candidates are pruned by
  //! per-element invariants (zero/identity, idempotency, left/right
  //! multiplication profiles, power-chain length, decomposability).
  inline std::optional<std::vector<Id>> table_iso(SemigroupTable const& u,
                                                  SemigroupTable const& w,
                                                  Caps const&           caps = {}) {
    if (u.size() != w.size()) {
      return std::nullopt;
    }
    if (u.size() > caps.max_iso) {
      fail(ErrorKind::CapExceeded,
           "isomorphism search limited to " + std::to_string(caps.max_iso)
               + " elements");
    }
    detail::IsoSearch search(u, w);
    if (!search.profiles_compatible()) {
      return std::nullopt;
    }
    auto f = search.run();
    if (f && !is_isomorphism(u, w, *f)) {
      fail(ErrorKind::InternalError, "isomorphism search returned a non-isomorphism");
    }
    return f;
  }

}  // namespace matsemi
