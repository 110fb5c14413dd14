#pragma once

// Test-side helpers.  Nothing here calls into the library beyond Field,
// Matrix construction and multiplication, so the oracles stay independent.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <matsemi/error.hpp>
#include <matsemi/matrix.hpp>

namespace oracle {

  using matsemi::Field;
  using matsemi::Matrix;

  // Kind of the Error thrown by f, or nullopt-like "none".
  template <typename F>
  std::string thrown_kind(F&& f) {
    try {
      f();
    } catch (matsemi::Error const& e) {
      return std::string(matsemi::to_string(e.kind()));
    }
    return "none";
  }

  // Every n x m matrix, counting in base q over the row-major entries.
  inline std::vector<Matrix> all_matrices(Field const& f, int rows, int cols) {
    int const           cells = rows * cols;
    std::vector<Matrix> out;
    std::vector<int>    e(cells, 0);
    while (true) {
      Matrix m(f, rows, cols);
      for (int i = 0; i < cells; ++i) {
        m.set(i / cols, i % cols, e[i]);
      }
      out.push_back(m);
      int i = 0;
      while (i < cells && ++e[i] == f.q()) {
        e[i++] = 0;
      }
      if (i == cells) {
        return out;
      }
    }
  }

  inline Matrix random_matrix(Field const& f, int rows, int cols, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, f.q() - 1);
    Matrix                             m(f, rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        m.set(i, j, pick(rng));
      }
    }
    return m;
  }

  // Rank by plain Gaussian elimination on a copy.
  inline int elimination_rank(Matrix m) {
    Field const& f = m.field();
    int          r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
      int p = r;
      while (p < m.rows() && m(p, c) == 0) {
        ++p;
      }
      if (p == m.rows()) {
        continue;
      }
      for (int j = 0; j < m.cols(); ++j) {
        auto t = m(p, j);
        m.set(p, j, m(r, j));
        m.set(r, j, t);
      }
      auto const inv = f.inv(m(r, c));
      for (int i = 0; i < m.rows(); ++i) {
        if (i == r || m(i, c) == 0) {
          continue;
        }
        auto const factor = f.mul(m(i, c), inv);
        for (int j = 0; j < m.cols(); ++j) {
          m.set(i, j, f.sub(m(i, j), f.mul(factor, m(r, j))));
        }
      }
      ++r;
    }
    return r;
  }

  inline long ipow(long b, long e) {
    long r = 1;
    while (e-- > 0) {
      r *= b;
    }
    return r;
  }

  // Gaussian binomial [n, d]_q by the product formula.
  inline long gaussian_binomial(int n, int d, int q) {
    long num = 1, den = 1;
    for (int i = 0; i < d; ++i) {
      num *= ipow(q, n - i) - 1;
      den *= ipow(q, i + 1) - 1;
    }
    return num / den;
  }

  // Number of n x n matrices of rank i over F_q.
  inline long rank_count(int n, int i, int q) {
    long num = 1, den = 1;
    for (int j = 0; j < i; ++j) {
      num *= (ipow(q, n) - ipow(q, j)) * (ipow(q, n) - ipow(q, j));
      den *= ipow(q, i) - ipow(q, j);
    }
    return num / den;
  }

  inline long gl_order(int n, int q) {
    return rank_count(n, n, q);
  }

  // Naive union-find for oracle partitions.
  struct Classes {
    std::vector<int> parent;
    explicit Classes(int m) : parent(m) {
      for (int i = 0; i < m; ++i) {
        parent[i] = i;
      }
    }
    int find(int x) {
      while (parent[x] != x) {
        x = parent[x];
      }
      return x;
    }
    void join(int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) {
        parent[std::max(a, b)] = std::min(a, b);
      }
    }
  };

}  // namespace oracle
