#pragma once

// Exact arithmetic in GF(p^k) for q = p^k <= 64.  An element is stored as its
// code: the base-p little-endian digits of the code are the coefficients of
// the residue polynomial modulo the field's modulus.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "caps.hpp"
#include "error.hpp"

namespace matsemi {

  using Scalar = std::uint8_t;

  namespace detail {
    struct FieldTables {
      int                 p = 0;
      int                 k = 0;
      int                 q = 0;
      std::vector<int>    modulus;  // low degree first, leading 1; empty if k == 1
      std::vector<Scalar> add;      // q * q
      std::vector<Scalar> mul;      // q * q
      std::vector<Scalar> neg;
      std::vector<Scalar> inv;  // inv[0] unused
    };

    inline bool is_prime(int p) {
      if (p < 2) {
        return false;
      }
      for (int d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
          return false;
        }
      }
      return true;
    }

    inline std::vector<int> digits(int code, int p, int k) {
      std::vector<int> out(k);
      for (int i = 0; i < k; ++i) {
        out[i] = code % p;
        code /= p;
      }
      return out;
    }

    inline int undigits(std::vector<int> const& d, int p) {
      int code = 0;
      for (auto it = d.rbegin(); it != d.rend(); ++it) {
        code = code * p + *it;
      }
      return code;
    }

    // Remainder of a modulo the monic polynomial m, coefficients mod p.
    inline std::vector<int> poly_mod(std::vector<int> a,
                                     std::vector<int> const& m,
                                     int                     p) {
      int const dm = static_cast<int>(m.size()) - 1;
      for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
        int c = a[i] % p;
        if (c == 0) {
          continue;
        }
        for (int j = 0; j <= dm; ++j) {
          a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
        }
      }
      a.resize(dm);
      return a;
    }

    inline bool is_irreducible(std::vector<int> const& f, int p) {
      int const deg = static_cast<int>(f.size()) - 1;
      for (int d = 1; 2 * d <= deg; ++d) {
        int const count = static_cast<int>(saturating_pow(p, d));
        for (int c = 0; c < count; ++c) {
          auto g = digits(c, p, d);
          g.push_back(1);
          auto r = poly_mod(f, g, p);
          bool zero = true;
          for (int x : r) {
            zero = zero && x == 0;
          }
          if (zero) {
            return false;
          }
        }
      }
      return true;
    }
  }  // namespace detail

  //! A finite field GF(p^k) with precomputed operation tables.  Copies share
  //! the (immutable) tables.
  class Field {
   public:
    //! Builds GF(p^k) using the lexicographically smallest monic irreducible
    //! modulus (coefficients read as a base-p integer, low degree least
    //! significant).
    static Field make(int p, int k = 1, int q_cap = Caps{}.max_q) {
      if (!detail::is_prime(p)) {
        fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
      }
      if (k < 1) {
        fail(ErrorKind::ParseError, "extension degree must be >= 1");
      }
      std::uint64_t const q = saturating_pow(p, k);
      if (q > static_cast<std::uint64_t>(q_cap)
          || q > 256) {  // codes are bytes
        fail(ErrorKind::CapExceeded,
             "field size " + std::to_string(p) + "^" + std::to_string(k)
                 + " exceeds cap " + std::to_string(q_cap));
      }
      auto t = std::make_shared<detail::FieldTables>();
      t->p   = p;
      t->k   = k;
      t->q   = static_cast<int>(q);
      if (k > 1) {
        bool found = false;
        for (int c = 0; c < t->q && !found; ++c) {
          auto f = detail::digits(c, p, k);
          f.push_back(1);
          if (detail::is_irreducible(f, p)) {
            t->modulus = f;
            found      = true;
          }
        }
        if (!found) {
          fail(ErrorKind::InternalError, "no irreducible polynomial found");
        }
      }
      int const qq = t->q;
      t->add.resize(qq * qq);
      t->mul.resize(qq * qq);
      t->neg.resize(qq);
      t->inv.assign(qq, 0);
      for (int a = 0; a < qq; ++a) {
        auto da = detail::digits(a, p, k);
        for (int b = 0; b < qq; ++b) {
          auto             db = detail::digits(b, p, k);
          std::vector<int> s(k);
          for (int i = 0; i < k; ++i) {
            s[i] = (da[i] + db[i]) % p;
          }
          t->add[a * qq + b] = static_cast<Scalar>(detail::undigits(s, p));
          std::vector<int> prod(2 * k - 1, 0);
          for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
              prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
          }
          if (k > 1) {
            prod = detail::poly_mod(prod, t->modulus, p);
          }
          t->mul[a * qq + b] = static_cast<Scalar>(detail::undigits(prod, p));
        }
        std::vector<int> n(k);
        for (int i = 0; i < k; ++i) {
          n[i] = (p - da[i]) % p;
        }
        t->neg[a] = static_cast<Scalar>(detail::undigits(n, p));
      }
      for (int a = 1; a < qq; ++a) {
        for (int b = 1; b < qq; ++b) {
          if (t->mul[a * qq + b] == 1) {
            t->inv[a] = static_cast<Scalar>(b);
          }
        }
      }
      return Field(std::move(t));
    }

    int p() const noexcept {
      return _t->p;
    }
    int k() const noexcept {
      return _t->k;
    }
    int q() const noexcept {
      return _t->q;
    }
    //! Coefficients of the modulus, low degree first (empty for prime fields).
    std::vector<int> const& modulus() const noexcept {
      return _t->modulus;
    }

    bool valid(int code) const noexcept {
      return code >= 0 && code < _t->q;
    }

    Scalar add(Scalar a, Scalar b) const noexcept {
      return _t->add[a * _t->q + b];
    }
    Scalar mul(Scalar a, Scalar b) const noexcept {
      return _t->mul[a * _t->q + b];
    }
    Scalar neg(Scalar a) const noexcept {
      return _t->neg[a];
    }
    Scalar sub(Scalar a, Scalar b) const noexcept {
      return add(a, neg(b));
    }
    Scalar inv(Scalar a) const {
      if (a == 0) {
        fail(ErrorKind::DivisionByZero, "inverse of 0");
      }
      return _t->inv[a];
    }
    Scalar div(Scalar a, Scalar b) const {
      return mul(a, inv(b));
    }
    Scalar pow(Scalar a, std::uint64_t e) const noexcept {
      Scalar r = 1;
      for (std::uint64_t i = 0; i < e; ++i) {
        r = mul(r, a);
      }
      return r;
    }

    friend bool operator==(Field const& a, Field const& b) noexcept {
      return a._t == b._t || (a._t->p == b._t->p && a._t->k == b._t->k);
    }

    //! `p` or `p^k`.
    std::string to_string() const {
      return _t->k == 1 ? std::to_string(_t->p)
                        : std::to_string(_t->p) + "^" + std::to_string(_t->k);
    }

   private:
    explicit Field(std::shared_ptr<detail::FieldTables const> t)
        : _t(std::move(t)) {}

    std::shared_ptr<detail::FieldTables const> _t;
  };

  inline void require_same_field(Field const& a, Field const& b) {
    if (!(a == b)) {
      fail(ErrorKind::DimMismatch,
           "operands over different fields " + a.to_string() + " and "
               + b.to_string());
    }
  }

}  // namespace matsemi
