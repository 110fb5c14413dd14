#pragma once

// Conjugacy in M(n, q): the stability index and core of a matrix, GL- and
// semigroup-conjugacy deciders, the explicit chain of primary conjugations
// from a matrix to its core, and the whole-semigroup class computation by
// two independent routes.

#include <algorithm>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "caps.hpp"
#include "matrix.hpp"
#include "partition.hpp"
#include "similarity.hpp"
#include "subspace.hpp"
#include "universe.hpp"

namespace matsemi {

  struct CoreDecomposition {
    int      t;         // stability index
    Subspace image_t;   // Im(A^t)
    Subspace kernel_t;  // ker(A^t)
    Matrix   core;      // A on Im(A^t), zero on ker(A^t)
  };

  //! Least t >= 0 with rank(A^t) = rank(A^(t+1)).
  inline int stability_index(Matrix const& a) {
    if (!a.is_square()) {
      fail(ErrorKind::DimMismatch, "stability index of a non-square matrix");
    }
    Matrix power = Matrix::identity(a.field(), a.rows());
    int    r     = a.rows();
    for (int t = 0;; ++t) {
      Matrix next = power * a;
      int    rn   = rank(next);
      if (rn == r) {
        return t;
      }
      power = std::move(next);
      r     = rn;
    }
  }

  inline CoreDecomposition core(Matrix const& a) {
    int const      t   = stability_index(a);
    Matrix const   at  = pow(a, static_cast<std::uint64_t>(t));
    Subspace       im  = image(at);
    Subspace       ker = kernel(at);
    Matrix const   e   = projection(im, ker);
    return {t, std::move(im), std::move(ker), a * e};
  }

  inline bool gl_conjugate(Matrix const& a, Matrix const& b) {
    return similar(a, b);
  }

  //! a ~ b in M(n, F) iff their cores are similar.
  inline bool sg_conjugate(Matrix const& a, Matrix const& b) {
    require_same_field(a.field(), b.field());
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
      fail(ErrorKind::DimMismatch, "conjugacy needs equal square shapes");
    }
    return similar(core(a).core, core(b).core);
  }

  //! The first (X, Y) in canonical order with a = XY and b = YX.
  inline std::optional<std::pair<Matrix, Matrix>>
  primary_conjugate_witness(Matrix const& a, Matrix const& b, Caps const& caps = {}) {
    require_same_field(a.field(), b.field());
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
      fail(ErrorKind::DimMismatch, "conjugacy needs equal square shapes");
    }
    Universe const u(a.field(), a.rows(), caps.max_brute);
    Id const       ia = u.id_of(a);
    Id const       ib = u.id_of(b);
    for (Id x = 0; x < u.size(); ++x) {
      for (Id y = 0; y < u.size(); ++y) {
        if (u.mul(x, y) == ia && u.mul(y, x) == ib) {
          return std::make_pair(u[x], u[y]);
        }
      }
    }
    return std::nullopt;
  }

  //! B_1 = A, ..., B_m = core(A); u_i v_i = B_i and v_i u_i = B_(i+1).
  struct ConjugacyChain {
    std::vector<Matrix>                   steps;
    std::vector<std::pair<Matrix, Matrix>> witnesses;

    bool valid() const {
      if (witnesses.size() + 1 != steps.size()) {
        return false;
      }
      for (std::size_t i = 0; i < witnesses.size(); ++i) {
        auto const& [u, v] = witnesses[i];
        if (!(u * v == steps[i]) || !(v * u == steps[i + 1])) {
          return false;
        }
      }
      return true;
    }
  };

  //! Builds B_i = e(V_i, V'_i) A e(V_(i-1), V'_(i-1)) with V_i = Im(A^i),
  //! V'_i = ker(A^i) from the stability index on, and before that V'_i the
  //! span of the standard vectors completing a basis of V_i.
  inline ConjugacyChain conjugacy_chain(Matrix const& a) {
    int const    t = stability_index(a);
    int const    n = a.rows();
    Field const& f = a.field();
    if (t == 0) {
      return {{a}, {}};
    }
    std::vector<Matrix> e;  // e[i] = e(V_i, V'_i), i = 0..t+1
    Matrix              power = Matrix::identity(f, n);
    for (int i = 0; i <= t + 1; ++i) {
      Subspace const vi = image(power);
      Subspace const ci = i >= t ? kernel(power)
                                 : Subspace::span(f, n, standard_complement(vi));
      e.push_back(projection(vi, ci));
      power = power * a;
    }
    ConjugacyChain chain;
    for (int i = 1; i <= t + 1; ++i) {
      chain.steps.push_back(e[i] * a * e[i - 1]);
    }
    for (int i = 1; i <= t; ++i) {
      chain.witnesses.emplace_back(e[i], chain.steps[i - 1]);
    }
    return chain;
  }

  enum class ClassMethod { theorem1, brute };

  struct SgClasses {
    MatSet    elements;
    Partition partition;
  };

  //! Semigroup-conjugacy classes by brute force: the transitive closure of
  //! {(xy, yx)} for a product `mul` on ids 0..m-1.  Each thread folds a
  //! contiguous range of x into its own union-find; merging is order
  //! independent.
  template <typename Mul>
  Partition primary_closure(std::size_t m, Mul const& mul, unsigned threads = 1) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(m)));
    std::vector<DisjointSets> local(threads, DisjointSets(m));
    auto scan = [&](unsigned slot) {
      Id const lo = static_cast<Id>(m * slot / threads);
      Id const hi = static_cast<Id>(m * (slot + 1) / threads);
      for (Id x = lo; x < hi; ++x) {
        for (Id y = 0; y < m; ++y) {
          local[slot].unite(mul(x, y), mul(y, x));
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
    for (unsigned s = 1; s < threads; ++s) {
      local[0].absorb(local[s]);
    }
    return Partition(local[0]);
  }

  inline Partition primary_closure(SemigroupTable const& t, unsigned threads = 1) {
    return primary_closure(
        t.size(), [&t](Id a, Id b) { return t.mul(a, b); }, threads);
  }

  //! Class key of the first route: invariant factors of the core.
  inline std::vector<Poly> core_class_key(Matrix const& a) {
    return invariant_factors(core(a).core);
  }

  inline SgClasses sg_classes(Field const& field,
                              int          n,
                              ClassMethod  method,
                              unsigned     threads = 1,
                              Caps const&  caps    = {}) {
    if (method == ClassMethod::theorem1) {
      Universe const                 u(field, n, caps.max_universe, false);
      std::vector<std::vector<Poly>> keys;
      keys.reserve(u.size());
      for (Id x = 0; x < u.size(); ++x) {
        keys.push_back(core_class_key(u[x]));
      }
      return {u.elements(), Partition::from_keys(keys)};
    }
    Universe const u(field, n, caps.max_brute, true);
    return {u.elements(), primary_closure(u.table(), threads)};
  }

}  // namespace matsemi
