#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "error.hpp"

namespace matsemi {

  using Id = std::uint32_t;

  //! Union-find with path halving and union by size.
  class DisjointSets {
   public:
    explicit DisjointSets(std::size_t m) : _parent(m), _size(m, 1) {
      std::iota(_parent.begin(), _parent.end(), Id{0});
    }

    std::size_t size() const noexcept {
      return _parent.size();
    }

    Id find(Id x) noexcept {
      while (_parent[x] != x) {
        _parent[x] = _parent[_parent[x]];
        x          = _parent[x];
      }
      return x;
    }

    void unite(Id a, Id b) noexcept {
      a = find(a);
      b = find(b);
      if (a == b) {
        return;
      }
      if (_size[a] < _size[b]) {
        std::swap(a, b);
      }
      _parent[b] = a;
      _size[a] += _size[b];
    }

    //! Merges every class of `other` (same element count) into this one.
    void absorb(DisjointSets& other) {
      for (Id x = 0; x < other.size(); ++x) {
        unite(x, other.find(x));
      }
    }

   private:
    std::vector<Id>          _parent;
    std::vector<std::size_t> _size;
  };

  //! An immutable partition of {0, ..., m-1}; every class is represented by
  //! its least element.
  class Partition {
   public:
    explicit Partition(DisjointSets& sets) : _rep(sets.size()) {
      std::vector<Id> least(sets.size(), static_cast<Id>(sets.size()));
      for (Id x = 0; x < sets.size(); ++x) {
        Id const root = sets.find(x);
        if (least[root] == sets.size()) {
          least[root] = x;  // x ascending, so the first hit is the least
        }
        _rep[x] = least[root];
      }
    }

    //! Partition from a class key per element.
    template <typename Key>
    static Partition from_keys(std::vector<Key> const& keys) {
      DisjointSets sets(keys.size());
      std::vector<std::pair<Key, Id>> sorted;
      for (Id x = 0; x < keys.size(); ++x) {
        sorted.emplace_back(keys[x], x);
      }
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].first == sorted[i - 1].first) {
          sets.unite(sorted[i].second, sorted[i - 1].second);
        }
      }
      return Partition(sets);
    }

    std::size_t size() const noexcept {
      return _rep.size();
    }

    Id find(Id x) const noexcept {
      return _rep[x];
    }

    bool same(Id a, Id b) const noexcept {
      return _rep[a] == _rep[b];
    }

    //! Classes ordered by representative, members ascending.
    std::vector<std::vector<Id>> classes() const {
      std::vector<std::vector<Id>> out;
      std::vector<std::size_t>     slot(_rep.size(), 0);
      for (Id x = 0; x < _rep.size(); ++x) {
        if (_rep[x] == x) {
          slot[x] = out.size();
          out.emplace_back();
        }
        out[slot[_rep[x]]].push_back(x);
      }
      return out;
    }

    std::size_t class_count() const noexcept {
      std::size_t c = 0;
      for (Id x = 0; x < _rep.size(); ++x) {
        c += _rep[x] == x;
      }
      return c;
    }

    friend bool operator==(Partition const&, Partition const&) = default;

   private:
    std::vector<Id> _rep;
  };

  //! The finest partition of {0..m-1} merging every pair in `pairs`.
  template <typename PairRange>
  Partition equiv_closure(std::size_t m, PairRange const& pairs) {
    DisjointSets sets(m);
    for (auto const& [a, b] : pairs) {
      if (a >= m || b >= m) {
        fail(ErrorKind::DimMismatch, "pair id out of range");
      }
      sets.unite(static_cast<Id>(a), static_cast<Id>(b));
    }
    return Partition(sets);
  }

}  // namespace matsemi
