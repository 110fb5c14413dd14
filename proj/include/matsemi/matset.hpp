#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"

namespace matsemi {

  //! A duplicate-free set of n x n matrices kept in canonical order: by rank,
  //! then by entry codes lexicographically (row-major).  Element ids used by
  //! tables and reports are positions in this order.
  class MatSet {
   public:
    MatSet(Field field, int n) : _field(std::move(field)), _n(n) {}

    MatSet(Field field, int n, std::vector<Matrix> elements)
        : _field(std::move(field)), _n(n) {
      std::vector<std::pair<int, std::size_t>> keyed;
      keyed.reserve(elements.size());
      for (std::size_t i = 0; i < elements.size(); ++i) {
        auto const& m = elements[i];
        if (m.rows() != n || m.cols() != n) {
          fail(ErrorKind::DimMismatch, "MatSet element has wrong shape");
        }
        require_same_field(m.field(), _field);
        keyed.emplace_back(rank(m), i);
      }
      std::sort(keyed.begin(), keyed.end(), [&](auto const& x, auto const& y) {
        if (x.first != y.first) {
          return x.first < y.first;
        }
        return elements[x.second].entries() < elements[y.second].entries();
      });
      for (auto const& [r, i] : keyed) {
        if (!_elements.empty() && _ranks.back() == r
            && _elements.back().entries() == elements[i].entries()) {
          continue;
        }
        _elements.push_back(std::move(elements[i]));
        _ranks.push_back(r);
      }
    }

    Field const& field() const noexcept {
      return _field;
    }
    int dim() const noexcept {
      return _n;
    }
    std::size_t size() const noexcept {
      return _elements.size();
    }
    bool empty() const noexcept {
      return _elements.empty();
    }
    Matrix const& operator[](std::size_t i) const noexcept {
      return _elements[i];
    }
    int rank_of(std::size_t i) const noexcept {
      return _ranks[i];
    }
    std::vector<Matrix> const& elements() const noexcept {
      return _elements;
    }
    auto begin() const noexcept {
      return _elements.begin();
    }
    auto end() const noexcept {
      return _elements.end();
    }

    std::optional<std::size_t> index_of(Matrix const& m) const {
      if (m.rows() != _n || m.cols() != _n) {
        return std::nullopt;
      }
      int const r  = rank(m);
      auto      lo = std::size_t{0};
      auto      hi = _elements.size();
      while (lo < hi) {
        auto const mid = (lo + hi) / 2;
        bool const less
            = _ranks[mid] < r
              || (_ranks[mid] == r && _elements[mid].entries() < m.entries());
        if (less) {
          lo = mid + 1;
        } else {
          hi = mid;
        }
      }
      if (lo < _elements.size() && _ranks[lo] == r
          && _elements[lo].entries() == m.entries()) {
        return lo;
      }
      return std::nullopt;
    }

    bool contains(Matrix const& m) const {
      return index_of(m).has_value();
    }

    bool is_subset_of(MatSet const& other) const {
      return std::all_of(_elements.begin(),
                         _elements.end(),
                         [&](Matrix const& m) { return other.contains(m); });
    }

    friend bool operator==(MatSet const& a, MatSet const& b) noexcept {
      return a._n == b._n && a._elements == b._elements;
    }

   private:
    Field               _field;
    int                 _n;
    std::vector<Matrix> _elements;
    std::vector<int>    _ranks;
  };

  inline MatSet set_union(MatSet const& a, MatSet const& b) {
    std::vector<Matrix> all = a.elements();
    all.insert(all.end(), b.begin(), b.end());
    return MatSet(a.field(), a.dim(), std::move(all));
  }

}  // namespace matsemi
