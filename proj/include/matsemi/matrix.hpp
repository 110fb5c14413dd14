#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace matsemi {

  //! Column vector of field codes.
  using Vector = std::vector<Scalar>;

  //! Dense row-major matrix over a finite field.  Matrices act on column
  //! vectors: A(v) = A * v.
  class Matrix {
   public:
    Matrix(Field field, int rows, int cols)
        : _field(std::move(field)),
          _rows(rows),
          _cols(cols),
          _a(static_cast<std::size_t>(rows) * cols, 0) {
      if (rows <= 0 || cols <= 0) {
        fail(ErrorKind::DimMismatch, "matrix dimensions must be positive");
      }
    }

    Matrix(Field field, int rows, int cols, std::vector<Scalar> entries)
        : _field(std::move(field)),
          _rows(rows),
          _cols(cols),
          _a(std::move(entries)) {
      if (rows <= 0 || cols <= 0
          || _a.size() != static_cast<std::size_t>(rows) * cols) {
        fail(ErrorKind::DimMismatch, "entry count does not match dimensions");
      }
      for (Scalar x : _a) {
        if (!_field.valid(x)) {
          fail(ErrorKind::ParseError,
               "entry " + std::to_string(x) + " is not an element of GF("
                   + _field.to_string() + ")");
        }
      }
    }

    static Matrix identity(Field const& field, int n) {
      Matrix m(field, n, n);
      for (int i = 0; i < n; ++i) {
        m.set(i, i, 1);
      }
      return m;
    }

    //! The matrix unit with a single 1 at (i, j), 0-based.
    static Matrix unit(Field const& field, int n, int i, int j) {
      Matrix m(field, n, n);
      m.set(i, j, 1);
      return m;
    }

    //! Matrix whose columns are the given vectors.
    static Matrix from_columns(Field const& field,
                               int          rows,
                               std::vector<Vector> const& columns) {
      Matrix m(field, rows, static_cast<int>(columns.size()));
      for (int j = 0; j < m.cols(); ++j) {
        for (int i = 0; i < rows; ++i) {
          m.set(i, j, columns[j][i]);
        }
      }
      return m;
    }

    Field const& field() const noexcept {
      return _field;
    }
    int rows() const noexcept {
      return _rows;
    }
    int cols() const noexcept {
      return _cols;
    }
    bool is_square() const noexcept {
      return _rows == _cols;
    }

    Scalar operator()(int i, int j) const noexcept {
      return _a[static_cast<std::size_t>(i) * _cols + j];
    }
    void set(int i, int j, Scalar v) noexcept {
      _a[static_cast<std::size_t>(i) * _cols + j] = v;
    }
    std::vector<Scalar> const& entries() const noexcept {
      return _a;
    }

    bool is_zero() const noexcept {
      return std::all_of(_a.begin(), _a.end(), [](Scalar x) { return x == 0; });
    }

    Vector column(int j) const {
      Vector v(_rows);
      for (int i = 0; i < _rows; ++i) {
        v[i] = (*this)(i, j);
      }
      return v;
    }
    Vector row(int i) const {
      return Vector(_a.begin() + static_cast<std::ptrdiff_t>(i) * _cols,
                    _a.begin() + static_cast<std::ptrdiff_t>(i + 1) * _cols);
    }

    friend bool operator==(Matrix const& a, Matrix const& b) noexcept {
      return a._rows == b._rows && a._cols == b._cols && a._a == b._a
             && a._field == b._field;
    }

    //! Structural order (dimensions, then entries lexicographically).  This
    //! is not the canonical rank-first order used by MatSet.
    friend bool operator<(Matrix const& a, Matrix const& b) noexcept {
      if (a._rows != b._rows) {
        return a._rows < b._rows;
      }
      if (a._cols != b._cols) {
        return a._cols < b._cols;
      }
      return a._a < b._a;
    }

   private:
    Field               _field;
    int                 _rows;
    int                 _cols;
    std::vector<Scalar> _a;
  };

  struct MatrixHash {
    std::size_t operator()(Matrix const& m) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (Scalar x : m.entries()) {
        h = (h ^ x) * 1099511628211ull;
      }
      return h ^ (static_cast<std::size_t>(m.rows()) << 32);
    }
  };

  inline Matrix operator*(Matrix const& a, Matrix const& b) {
    require_same_field(a.field(), b.field());
    if (a.cols() != b.rows()) {
      fail(ErrorKind::DimMismatch, "inner dimensions differ in product");
    }
    Field const& f = a.field();
    Matrix       c(f, a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
      for (int l = 0; l < a.cols(); ++l) {
        Scalar const x = a(i, l);
        if (x == 0) {
          continue;
        }
        for (int j = 0; j < b.cols(); ++j) {
          c.set(i, j, f.add(c(i, j), f.mul(x, b(l, j))));
        }
      }
    }
    return c;
  }

  inline Vector operator*(Matrix const& a, Vector const& v) {
    if (static_cast<int>(v.size()) != a.cols()) {
      fail(ErrorKind::DimMismatch, "vector length differs from column count");
    }
    Field const& f = a.field();
    Vector       out(a.rows(), 0);
    for (int i = 0; i < a.rows(); ++i) {
      Scalar s = 0;
      for (int j = 0; j < a.cols(); ++j) {
        s = f.add(s, f.mul(a(i, j), v[j]));
      }
      out[i] = s;
    }
    return out;
  }

  inline Matrix operator+(Matrix const& a, Matrix const& b) {
    require_same_field(a.field(), b.field());
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
      fail(ErrorKind::DimMismatch, "summands have different shapes");
    }
    Matrix c(a.field(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) {
        c.set(i, j, a.field().add(a(i, j), b(i, j)));
      }
    }
    return c;
  }

  inline Matrix scale(Scalar lambda, Matrix const& a) {
    Matrix c(a.field(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) {
        c.set(i, j, a.field().mul(lambda, a(i, j)));
      }
    }
    return c;
  }

  inline Matrix transpose(Matrix const& a) {
    Matrix t(a.field(), a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) {
        t.set(j, i, a(i, j));
      }
    }
    return t;
  }

  inline Matrix pow(Matrix const& a, std::uint64_t e) {
    if (!a.is_square()) {
      fail(ErrorKind::DimMismatch, "power of a non-square matrix");
    }
    Matrix result = Matrix::identity(a.field(), a.rows());
    Matrix base   = a;
    while (e > 0) {
      if (e & 1) {
        result = result * base;
      }
      e >>= 1;
      if (e > 0) {
        base = base * base;
      }
    }
    return result;
  }

  namespace detail {
    // In-place reduced row echelon form; returns the pivot columns.
    inline std::vector<int> row_reduce(Field const&         f,
                                       int                  rows,
                                       int                  cols,
                                       std::vector<Scalar>& a) {
      auto at = [&](int i, int j) -> Scalar& {
        return a[static_cast<std::size_t>(i) * cols + j];
      };
      std::vector<int> pivots;
      int              r = 0;
      for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i) {
          if (at(i, c) != 0) {
            piv = i;
            break;
          }
        }
        if (piv < 0) {
          continue;
        }
        if (piv != r) {
          for (int j = 0; j < cols; ++j) {
            std::swap(at(piv, j), at(r, j));
          }
        }
        Scalar const inv = f.inv(at(r, c));
        for (int j = 0; j < cols; ++j) {
          at(r, j) = f.mul(inv, at(r, j));
        }
        for (int i = 0; i < rows; ++i) {
          if (i == r || at(i, c) == 0) {
            continue;
          }
          Scalar const factor = at(i, c);
          for (int j = 0; j < cols; ++j) {
            at(i, j) = f.sub(at(i, j), f.mul(factor, at(r, j)));
          }
        }
        pivots.push_back(c);
        ++r;
      }
      return pivots;
    }
  }  // namespace detail

  //! Reduced row echelon form.
  inline Matrix rref(Matrix const& a) {
    std::vector<Scalar> e = a.entries();
    detail::row_reduce(a.field(), a.rows(), a.cols(), e);
    return Matrix(a.field(), a.rows(), a.cols(), std::move(e));
  }

  inline int rank(Matrix const& a) {
    std::vector<Scalar> e = a.entries();
    return static_cast<int>(
        detail::row_reduce(a.field(), a.rows(), a.cols(), e).size());
  }

  inline bool is_invertible(Matrix const& a) {
    return a.is_square() && rank(a) == a.rows();
  }

  inline Matrix inverse(Matrix const& a) {
    if (!a.is_square()) {
      fail(ErrorKind::DimMismatch, "inverse of a non-square matrix");
    }
    int const           n = a.rows();
    std::vector<Scalar> aug(static_cast<std::size_t>(n) * 2 * n, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        aug[static_cast<std::size_t>(i) * 2 * n + j] = a(i, j);
      }
      aug[static_cast<std::size_t>(i) * 2 * n + n + i] = 1;
    }
    auto const pivots = detail::row_reduce(a.field(), n, 2 * n, aug);
    if (static_cast<int>(pivots.size()) < n || pivots[n - 1] >= n) {
      fail(ErrorKind::NotInvertible, "matrix is singular");
    }
    Matrix inv(a.field(), n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        inv.set(i, j, aug[static_cast<std::size_t>(i) * 2 * n + n + j]);
      }
    }
    return inv;
  }

  inline bool is_nilpotent(Matrix const& a) {
    return pow(a, static_cast<std::uint64_t>(a.rows())).is_zero();
  }

  inline bool is_idempotent(Matrix const& a) {
    return a * a == a;
  }

}  // namespace matsemi
