#pragma once

#include <algorithm>

#include "error.hpp"
#include "matrix.hpp"

namespace matsemi {

  //! M = lambda * v * w^t with v, w hat-normalized (first nonzero entry 1).
  struct Rank1Factorization {
    Scalar lambda;
    Vector v;
    Vector w;

    Matrix reassemble(Field const& field) const {
      Matrix m(field, static_cast<int>(v.size()), static_cast<int>(w.size()));
      for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
          m.set(i, j, field.mul(lambda, field.mul(v[i], w[j])));
        }
      }
      return m;
    }

    friend bool operator==(Rank1Factorization const&,
                           Rank1Factorization const&) = default;
  };

  inline bool is_hat_normalized(Vector const& x) {
    auto it = std::find_if(x.begin(), x.end(), [](Scalar s) { return s != 0; });
    return it != x.end() && *it == 1;
  }

  //! The unique hat-normalized factorization of a rank-1 matrix.  With i', j'
  //! the first nonzero coordinates of v and w, lambda = m(i', j').
  inline Rank1Factorization rank1_factor(Matrix const& m) {
    if (rank(m) != 1) {
      fail(ErrorKind::RankNotOne, "matrix does not have rank 1");
    }
    Field const& f  = m.field();
    int          i0 = -1;
    int          j0 = -1;
    // Row i' of lambda * v * w^t is lambda * w, so the first nonzero entry in
    // reading order sits at (i', j').
    for (int i = 0; i < m.rows() && i0 < 0; ++i) {
      for (int j = 0; j < m.cols(); ++j) {
        if (m(i, j) != 0) {
          i0 = i;
          j0 = j;
          break;
        }
      }
    }
    Scalar const lambda = m(i0, j0);
    Scalar const inv    = f.inv(lambda);
    Vector       v(m.rows());
    Vector       w(m.cols());
    for (int i = 0; i < m.rows(); ++i) {
      v[i] = f.mul(inv, m(i, j0));
    }
    for (int j = 0; j < m.cols(); ++j) {
      w[j] = f.mul(inv, m(i0, j));
    }
    return {lambda, std::move(v), std::move(w)};
  }

}  // namespace matsemi
