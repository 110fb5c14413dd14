#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "caps.hpp"
#include "error.hpp"
#include "field.hpp"
#include "matrix.hpp"

namespace matsemi {

  //! A subspace of F^n stored by its reduced row echelon basis, so equal
  //! subspaces have identical representations.  The zero subspace has an
  //! empty basis.
  class Subspace {
   public:
    //! The span of `vectors` (any number, possibly dependent).
    static Subspace span(Field const& field,
                         int          ambient,
                         std::vector<Vector> const& vectors) {
      std::vector<Scalar> e;
      e.reserve(vectors.size() * ambient);
      for (auto const& v : vectors) {
        if (static_cast<int>(v.size()) != ambient) {
          fail(ErrorKind::AmbientMismatch, "vector length differs from ambient");
        }
        e.insert(e.end(), v.begin(), v.end());
      }
      int const rows   = static_cast<int>(vectors.size());
      auto      pivots = rows == 0 ? std::vector<int>{}
                                   : detail::row_reduce(field, rows, ambient, e);
      std::vector<Vector> basis;
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        basis.emplace_back(e.begin() + static_cast<std::ptrdiff_t>(i) * ambient,
                           e.begin()
                               + static_cast<std::ptrdiff_t>(i + 1) * ambient);
      }
      return Subspace(field, ambient, std::move(basis));
    }

    static Subspace zero(Field const& field, int ambient) {
      return Subspace(field, ambient, {});
    }

    static Subspace full(Field const& field, int ambient) {
      std::vector<Vector> basis;
      for (int i = 0; i < ambient; ++i) {
        basis.push_back(standard_vector(ambient, i));
      }
      return Subspace(field, ambient, std::move(basis));
    }

    static Vector standard_vector(int ambient, int i) {
      Vector v(ambient, 0);
      v[i] = 1;
      return v;
    }

    Field const& field() const noexcept {
      return _field;
    }
    int ambient() const noexcept {
      return _ambient;
    }
    int dim() const noexcept {
      return static_cast<int>(_basis.size());
    }
    std::vector<Vector> const& basis() const noexcept {
      return _basis;
    }

    std::vector<int> pivots() const {
      std::vector<int> out;
      for (auto const& row : _basis) {
        out.push_back(static_cast<int>(
            std::find_if(row.begin(), row.end(), [](Scalar x) { return x != 0; })
            - row.begin()));
      }
      return out;
    }

    bool contains(Vector const& v) const {
      if (static_cast<int>(v.size()) != _ambient) {
        fail(ErrorKind::AmbientMismatch, "vector length differs from ambient");
      }
      // Reduce v against the RREF basis: the pivots make this a single pass.
      Vector     w  = v;
      auto const pv = pivots();
      for (std::size_t i = 0; i < _basis.size(); ++i) {
        Scalar const c = w[pv[i]];
        if (c == 0) {
          continue;
        }
        for (int j = 0; j < _ambient; ++j) {
          w[j] = _field.sub(w[j], _field.mul(c, _basis[i][j]));
        }
      }
      return std::all_of(w.begin(), w.end(), [](Scalar x) { return x == 0; });
    }

    bool contains(Subspace const& other) const {
      check_compatible(other);
      return std::all_of(other._basis.begin(),
                         other._basis.end(),
                         [this](Vector const& v) { return contains(v); });
    }

    void check_compatible(Subspace const& other) const {
      if (other._ambient != _ambient || !(other._field == _field)) {
        fail(ErrorKind::AmbientMismatch, "subspaces live in different spaces");
      }
    }

    //! Basis rows as a dim x ambient matrix (requires dim > 0).
    Matrix as_matrix() const {
      std::vector<Scalar> e;
      for (auto const& row : _basis) {
        e.insert(e.end(), row.begin(), row.end());
      }
      return Matrix(_field, dim(), _ambient, std::move(e));
    }

    //! Sort key: row-major basis entries read as a base-q little-endian
    //! number, compared most significant digit first.
    std::vector<Scalar> sort_key() const {
      std::vector<Scalar> key;
      for (auto const& row : _basis) {
        key.insert(key.end(), row.begin(), row.end());
      }
      std::reverse(key.begin(), key.end());
      return key;
    }

    friend bool operator==(Subspace const& a, Subspace const& b) noexcept {
      return a._ambient == b._ambient && a._basis == b._basis
             && a._field == b._field;
    }

    //! Dimension first, then sort_key.
    friend bool operator<(Subspace const& a, Subspace const& b) {
      if (a.dim() != b.dim()) {
        return a.dim() < b.dim();
      }
      return a.sort_key() < b.sort_key();
    }

   private:
    Subspace(Field field, int ambient, std::vector<Vector> basis)
        : _field(std::move(field)), _ambient(ambient), _basis(std::move(basis)) {}

    Field               _field;
    int                 _ambient;
    std::vector<Vector> _basis;
  };

  inline Subspace sum(Subspace const& u, Subspace const& w) {
    u.check_compatible(w);
    std::vector<Vector> all = u.basis();
    all.insert(all.end(), w.basis().begin(), w.basis().end());
    return Subspace::span(u.field(), u.ambient(), all);
  }

  //! Null space of a (as a subspace of F^cols).
  inline Subspace kernel(Matrix const& a) {
    Field const&        f = a.field();
    std::vector<Scalar> e = a.entries();
    auto const pivots     = detail::row_reduce(f, a.rows(), a.cols(), e);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int c : pivots) {
      is_pivot[c] = true;
    }
    std::vector<Vector> basis;
    for (int free = 0; free < a.cols(); ++free) {
      if (is_pivot[free]) {
        continue;
      }
      Vector v(a.cols(), 0);
      v[free] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        v[pivots[r]] = f.neg(e[r * a.cols() + free]);
      }
      basis.push_back(std::move(v));
    }
    return Subspace::span(f, a.cols(), basis);
  }

  //! Column space of a.
  inline Subspace image(Matrix const& a) {
    std::vector<Vector> cols;
    for (int j = 0; j < a.cols(); ++j) {
      cols.push_back(a.column(j));
    }
    return Subspace::span(a.field(), a.rows(), cols);
  }

  inline Subspace intersect(Subspace const& u, Subspace const& w) {
    u.check_compatible(w);
    if (u.dim() == 0 || w.dim() == 0) {
      return Subspace::zero(u.field(), u.ambient());
    }
    // Solve sum a_i u_i = sum b_j w_j through the kernel of [U | -W].
    Field const&        f = u.field();
    std::vector<Vector> cols;
    for (auto const& v : u.basis()) {
      cols.push_back(v);
    }
    for (auto const& v : w.basis()) {
      Vector neg(v.size());
      std::transform(
          v.begin(), v.end(), neg.begin(), [&f](Scalar x) { return f.neg(x); });
      cols.push_back(std::move(neg));
    }
    Matrix const        m = Matrix::from_columns(f, u.ambient(), cols);
    Subspace const      solutions = kernel(m);
    std::vector<Vector> out;
    for (auto const& k : solutions.basis()) {
      Vector x(u.ambient(), 0);
      for (int i = 0; i < u.dim(); ++i) {
        for (int j = 0; j < u.ambient(); ++j) {
          x[j] = f.add(x[j], f.mul(k[i], u.basis()[i][j]));
        }
      }
      out.push_back(std::move(x));
    }
    return Subspace::span(f, u.ambient(), out);
  }

  //! The image of a subspace under a linear map.
  inline Subspace apply(Matrix const& a, Subspace const& u) {
    std::vector<Vector> imgs;
    for (auto const& v : u.basis()) {
      imgs.push_back(a * v);
    }
    return Subspace::span(a.field(), a.rows(), imgs);
  }

  //! Vectors completing a basis of u to a basis of F^n, chosen among the
  //! standard basis vectors in increasing index order.
  inline std::vector<Vector> standard_complement(Subspace const& u) {
    std::vector<Vector> current = u.basis();
    std::vector<Vector> added;
    int                 have = u.dim();
    for (int i = 0; i < u.ambient() && have < u.ambient(); ++i) {
      auto e = Subspace::standard_vector(u.ambient(), i);
      current.push_back(e);
      if (Subspace::span(u.field(), u.ambient(), current).dim() > have) {
        ++have;
        added.push_back(std::move(e));
      } else {
        current.pop_back();
      }
    }
    return added;
  }

  //! The idempotent projecting onto v1 along v2 (F^n = v1 (+) v2 required).
  inline Matrix projection(Subspace const& v1, Subspace const& v2) {
    v1.check_compatible(v2);
    int const n = v1.ambient();
    if (v1.dim() + v2.dim() != n || intersect(v1, v2).dim() != 0) {
      fail(ErrorKind::InvariantViolation,
           "projection needs complementary subspaces");
    }
    std::vector<Vector> cols = v1.basis();
    cols.insert(cols.end(), v2.basis().begin(), v2.basis().end());
    Matrix const p = Matrix::from_columns(v1.field(), n, cols);
    Matrix       d(v1.field(), n, n);
    for (int i = 0; i < v1.dim(); ++i) {
      d.set(i, i, 1);
    }
    return p * d * inverse(p);
  }

  //! Number of d-dimensional subspaces of F_q^n, counted as a sum over
  //! pivot patterns of q^(free positions).  Saturates on overflow.
  inline std::uint64_t count_subspaces(int q, int n, int d) {
    if (d < 0 || d > n) {
      return 0;
    }
    // row r contributes the non-pivot columns to the right of its pivot
    std::uint64_t   total = 0;
    std::vector<int> piv(d);
    for (int i = 0; i < d; ++i) {
      piv[i] = i;
    }
    while (true) {
      std::uint64_t free = 0;
      for (int r = 0; r < d; ++r) {
        free += static_cast<std::uint64_t>(n - piv[r] - 1 - (d - r - 1));
      }
      std::uint64_t term = saturating_pow(q, free);
      total              = (UINT64_MAX - total < term) ? UINT64_MAX : total + term;
      int i              = d - 1;
      while (i >= 0 && piv[i] == n - d + i) {
        --i;
      }
      if (i < 0) {
        break;
      }
      ++piv[i];
      for (int j = i + 1; j < d; ++j) {
        piv[j] = piv[j - 1] + 1;
      }
    }
    return total;
  }

  //! All d-dimensional subspaces of F^n, canonical and sorted.
  inline std::vector<Subspace> enumerate_subspaces(Field const& field,
                                                   int          n,
                                                   int          d,
                                                   Caps const&  caps = {}) {
    if (d < 0 || d > n) {
      fail(ErrorKind::DimMismatch, "subspace dimension out of range");
    }
    if (count_subspaces(field.q(), n, d) > caps.max_enumeration) {
      fail(ErrorKind::CapExceeded, "too many subspaces to enumerate");
    }
    std::vector<Subspace> out;
    if (d == 0) {
      out.push_back(Subspace::zero(field, n));
      return out;
    }
    std::vector<int> piv(d);
    for (int i = 0; i < d; ++i) {
      piv[i] = i;
    }
    while (true) {
      // free slots: (row r, column c) with c > piv[r] and c not a pivot
      std::vector<std::pair<int, int>> slots;
      for (int r = 0; r < d; ++r) {
        for (int c = piv[r] + 1; c < n; ++c) {
          if (std::find(piv.begin(), piv.end(), c) == piv.end()) {
            slots.emplace_back(r, c);
          }
        }
      }
      std::vector<int> digits(slots.size(), 0);
      while (true) {
        std::vector<Vector> rows(d, Vector(n, 0));
        for (int r = 0; r < d; ++r) {
          rows[r][piv[r]] = 1;
        }
        for (std::size_t s = 0; s < slots.size(); ++s) {
          rows[slots[s].first][slots[s].second] = static_cast<Scalar>(digits[s]);
        }
        out.push_back(Subspace::span(field, n, rows));
        std::size_t s = 0;
        while (s < digits.size() && ++digits[s] == field.q()) {
          digits[s++] = 0;
        }
        if (s == digits.size()) {
          break;
        }
      }
      int i = d - 1;
      while (i >= 0 && piv[i] == n - d + i) {
        --i;
      }
      if (i < 0) {
        break;
      }
      ++piv[i];
      for (int j = i + 1; j < d; ++j) {
        piv[j] = piv[j - 1] + 1;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

}  // namespace matsemi
