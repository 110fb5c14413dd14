#pragma once

// Similarity of square matrices over GF(q) by rational canonical form:
// A ~ B iff xI - A and xI - B have the same Smith normal form over F[x].

#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"

namespace matsemi {

  //! Polynomial over a finite field, coefficients low degree first, no
  //! trailing zeros (the zero polynomial is empty).
  using Poly = std::vector<Scalar>;

  namespace poly {
    inline void trim(Poly& a) {
      while (!a.empty() && a.back() == 0) {
        a.pop_back();
      }
    }

    inline int degree(Poly const& a) {
      return static_cast<int>(a.size()) - 1;
    }

    inline Poly sub(Field const& f, Poly a, Poly const& b) {
      if (a.size() < b.size()) {
        a.resize(b.size(), 0);
      }
      for (std::size_t i = 0; i < b.size(); ++i) {
        a[i] = f.sub(a[i], b[i]);
      }
      trim(a);
      return a;
    }

    inline Poly add(Field const& f, Poly a, Poly const& b) {
      if (a.size() < b.size()) {
        a.resize(b.size(), 0);
      }
      for (std::size_t i = 0; i < b.size(); ++i) {
        a[i] = f.add(a[i], b[i]);
      }
      trim(a);
      return a;
    }

    inline Poly mul(Field const& f, Poly const& a, Poly const& b) {
      if (a.empty() || b.empty()) {
        return {};
      }
      Poly c(a.size() + b.size() - 1, 0);
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
          c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
        }
      }
      trim(c);
      return c;
    }

    //! (quotient, remainder) of a / b, b nonzero.
    inline std::pair<Poly, Poly> divmod(Field const& f, Poly a, Poly const& b) {
      if (b.empty()) {
        fail(ErrorKind::DivisionByZero, "polynomial division by zero");
      }
      Poly         q;
      Scalar const lead_inv = f.inv(b.back());
      if (a.size() >= b.size()) {
        q.assign(a.size() - b.size() + 1, 0);
      }
      while (!a.empty() && a.size() >= b.size()) {
        std::size_t const shift = a.size() - b.size();
        Scalar const      c     = f.mul(a.back(), lead_inv);
        q[shift]                = c;
        for (std::size_t i = 0; i < b.size(); ++i) {
          a[i + shift] = f.sub(a[i + shift], f.mul(c, b[i]));
        }
        trim(a);
      }
      trim(q);
      return {std::move(q), std::move(a)};
    }

    inline Poly monic(Field const& f, Poly a) {
      if (a.empty()) {
        return a;
      }
      Scalar const inv = f.inv(a.back());
      for (auto& c : a) {
        c = f.mul(inv, c);
      }
      return a;
    }
  }  // namespace poly

  //! Nonconstant monic invariant factors of a square matrix, in divisibility
  //! order (each divides the next).  Computed by Smith reduction of xI - A.
  inline std::vector<Poly> invariant_factors(Matrix const& a) {
    if (!a.is_square()) {
      fail(ErrorKind::DimMismatch, "invariant factors need a square matrix");
    }
    Field const& f = a.field();
    int const    n = a.rows();
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Poly p{f.neg(a(i, j))};
        if (i == j) {
          p.push_back(1);
        }
        poly::trim(p);
        m[i][j] = std::move(p);
      }
    }

    for (int k = 0; k < n; ++k) {
      while (true) {
        // pivot: nonzero entry of least degree in the trailing block
        int pi = -1;
        int pj = -1;
        for (int i = k; i < n; ++i) {
          for (int j = k; j < n; ++j) {
            if (!m[i][j].empty()
                && (pi < 0 || m[i][j].size() < m[pi][pj].size())) {
              pi = i;
              pj = j;
            }
          }
        }
        if (pi < 0) {
          break;  // trailing block is zero
        }
        std::swap(m[k], m[pi]);
        for (int i = 0; i < n; ++i) {
          std::swap(m[i][k], m[i][pj]);
        }
        bool dirty = false;
        for (int i = k + 1; i < n; ++i) {
          if (m[i][k].empty()) {
            continue;
          }
          auto [q, r] = poly::divmod(f, m[i][k], m[k][k]);
          for (int j = k; j < n; ++j) {
            m[i][j] = poly::sub(f, m[i][j], poly::mul(f, q, m[k][j]));
          }
          dirty = dirty || !r.empty();
        }
        for (int j = k + 1; j < n; ++j) {
          if (m[k][j].empty()) {
            continue;
          }
          auto [q, r] = poly::divmod(f, m[k][j], m[k][k]);
          for (int i = k; i < n; ++i) {
            m[i][j] = poly::sub(f, m[i][j], poly::mul(f, q, m[i][k]));
          }
          dirty = dirty || !r.empty();
        }
        if (dirty) {
          continue;  // a remainder of smaller degree now exists
        }
        // divisibility of the trailing block by the pivot
        int bad_row = -1;
        for (int i = k + 1; i < n && bad_row < 0; ++i) {
          for (int j = k + 1; j < n; ++j) {
            if (!m[i][j].empty() && !poly::divmod(f, m[i][j], m[k][k]).second.empty()) {
              bad_row = i;
              break;
            }
          }
        }
        if (bad_row < 0) {
          break;
        }
        for (int j = k; j < n; ++j) {
          m[k][j] = poly::add(f, m[k][j], m[bad_row][j]);
        }
      }
    }

    std::vector<Poly> factors;
    for (int k = 0; k < n; ++k) {
      Poly d = poly::monic(f, m[k][k]);
      if (poly::degree(d) >= 1) {
        factors.push_back(std::move(d));
      }
    }
    // The Smith diagonal is already ordered by divisibility, hence by degree.
    return factors;
  }

  //! True iff a = g^-1 b g for some invertible g.
  inline bool similar(Matrix const& a, Matrix const& b) {
    require_same_field(a.field(), b.field());
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
      fail(ErrorKind::DimMismatch, "similarity needs equal square shapes");
    }
    return invariant_factors(a) == invariant_factors(b);
  }

}  // namespace matsemi
