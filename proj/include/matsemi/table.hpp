#pragma once

#include <boost/dynamic_bitset.hpp>

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "matset.hpp"
#include "partition.hpp"
#include "text.hpp"

namespace matsemi {

  using Bits = boost::dynamic_bitset<>;

  //! Interned multiplication table of a finite semigroup.  When built from a
  //! MatSet, element ids are canonical MatSet positions; an adjoined identity
  //! (realizing T^1) is appended as the last id and has no matrix.
  class SemigroupTable {
   public:
    //! Abstract table from a row-major product grid.  Associativity is
    //! checked exhaustively for m <= 512 and on 10^5 sampled triples beyond.
    SemigroupTable(std::size_t m, std::vector<Id> products)
        : _m(m), _table(std::move(products)) {
      if (_table.size() != m * m) {
        fail(ErrorKind::DimMismatch, "product grid has wrong size");
      }
      for (Id x : _table) {
        if (x >= m) {
          fail(ErrorKind::NotClosed, "product id out of range");
        }
      }
      check_associative();
      detect_units();
    }

    std::size_t size() const noexcept {
      return _m;
    }
    Id mul(Id a, Id b) const noexcept {
      return _table[static_cast<std::size_t>(a) * _m + b];
    }
    std::vector<Id> const& grid() const noexcept {
      return _table;
    }
    std::optional<Id> zero_id() const noexcept {
      return _zero;
    }
    std::optional<Id> identity_id() const noexcept {
      return _identity;
    }
    bool adjoined_identity() const noexcept {
      return _adjoined;
    }
    //! Matrix of each id when built from matrices (an adjoined identity has
    //! none, so this is one shorter than size() in that case).
    std::vector<Matrix> const& matrices() const noexcept {
      return _matrices;
    }

    //! The same semigroup with a fresh identity appended (T^1).  Returns a
    //! copy when an identity already exists.
    SemigroupTable with_identity() const {
      if (_identity.has_value()) {
        return *this;
      }
      std::size_t const m1 = _m + 1;
      std::vector<Id>   g(m1 * m1);
      Id const          one = static_cast<Id>(_m);
      for (Id a = 0; a < m1; ++a) {
        for (Id b = 0; b < m1; ++b) {
          g[a * m1 + b] = a == one ? b : (b == one ? a : mul(a, b));
        }
      }
      SemigroupTable t(m1, std::move(g));
      t._adjoined = true;
      t._matrices = _matrices;
      return t;
    }

    void attach_matrices(std::vector<Matrix> ms) {
      _matrices = std::move(ms);
    }

   private:
    void check_associative() const {
      auto bad = [this](Id a, Id b, Id c) {
        return mul(mul(a, b), c) != mul(a, mul(b, c));
      };
      if (_m <= 512) {
        for (Id a = 0; a < _m; ++a) {
          for (Id b = 0; b < _m; ++b) {
            Id const ab = mul(a, b);
            for (Id c = 0; c < _m; ++c) {
              if (mul(ab, c) != mul(a, mul(b, c))) {
                fail(ErrorKind::InvariantViolation,
                     "table is not associative at (" + std::to_string(a) + ","
                         + std::to_string(b) + "," + std::to_string(c) + ")");
              }
            }
          }
        }
        return;
      }
      std::mt19937_64                    rng(0x5eed);
      std::uniform_int_distribution<Id> pick(0, static_cast<Id>(_m - 1));
      for (int i = 0; i < 100000; ++i) {
        Id const a = pick(rng), b = pick(rng), c = pick(rng);
        if (bad(a, b, c)) {
          fail(ErrorKind::InvariantViolation, "table is not associative");
        }
      }
    }

    void detect_units() {
      for (Id z = 0; z < _m && !_zero; ++z) {
        bool ok = true;
        for (Id x = 0; x < _m && ok; ++x) {
          ok = mul(z, x) == z && mul(x, z) == z;
        }
        if (ok) {
          _zero = z;
        }
      }
      for (Id e = 0; e < _m && !_identity; ++e) {
        bool ok = true;
        for (Id x = 0; x < _m && ok; ++x) {
          ok = mul(e, x) == x && mul(x, e) == x;
        }
        if (ok) {
          _identity = e;
        }
      }
    }

    std::size_t         _m;
    std::vector<Id>     _table;
    std::optional<Id>   _zero;
    std::optional<Id>   _identity;
    bool                _adjoined = false;
    std::vector<Matrix> _matrices;
  };

  //! Interns the products of a multiplicatively closed MatSet.  Throws
  //! NotClosed naming a witness pair otherwise.
  inline SemigroupTable build_table(MatSet const& s, bool adjoin_identity = false) {
    std::size_t const m = s.size();
    std::vector<Id>   g(m * m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        auto const idx = s.index_of(s[a] * s[b]);
        if (!idx) {
          fail(ErrorKind::NotClosed,
               "product of " + text::format(s[a]) + " and " + text::format(s[b])
                   + " leaves the set");
        }
        g[a * m + b] = static_cast<Id>(*idx);
      }
    }
    SemigroupTable t(m, std::move(g));
    t.attach_matrices(s.elements());
    return adjoin_identity ? t.with_identity() : t;
  }

  inline bool is_closed(MatSet const& s) {
    for (auto const& a : s) {
      for (auto const& b : s) {
        if (!s.contains(a * b)) {
          return false;
        }
      }
    }
    return true;
  }

  //! {a * b : a in x, b in y}.
  inline Bits product_set(SemigroupTable const& t, Bits const& x, Bits const& y) {
    Bits out(t.size());
    for (auto a = x.find_first(); a != Bits::npos; a = x.find_next(a)) {
      for (auto b = y.find_first(); b != Bits::npos; b = y.find_next(b)) {
        out.set(t.mul(static_cast<Id>(a), static_cast<Id>(b)));
      }
    }
    return out;
  }

  inline Bits all_ids(SemigroupTable const& t) {
    Bits b(t.size());
    b.set();
    return b;
  }

  //! Power sets S^1, S^2, ... of the subset s, stopping after `count` terms
  //! or at stabilization.
  inline std::vector<Bits> power_sets(SemigroupTable const& t,
                                      Bits const&           s,
                                      std::size_t           count) {
    std::vector<Bits> out{s};
    while (out.size() < count) {
      Bits next = product_set(t, out.back(), s);
      bool const stable = next == out.back();
      out.push_back(std::move(next));
      if (stable) {
        break;
      }
    }
    return out;
  }

  //! Least k with S^k = {0} for the subset s; nullopt when the table has no
  //! zero or the powers stabilize elsewhere.
  inline std::optional<int> nilpotency_degree(SemigroupTable const& t,
                                              Bits const&           s) {
    auto const zero = t.zero_id();
    if (!zero || s.none()) {
      return std::nullopt;
    }
    Bits zero_only(t.size());
    zero_only.set(*zero);
    Bits current = s;
    for (std::size_t k = 1; k <= t.size() + 1; ++k) {
      if (current == zero_only) {
        return static_cast<int>(k);
      }
      Bits next = product_set(t, current, s);
      if (next == current) {
        return std::nullopt;
      }
      current = std::move(next);
    }
    return std::nullopt;
  }

  inline std::optional<int> nilpotency_degree(SemigroupTable const& t) {
    return nilpotency_degree(t, all_ids(t));
  }

}  // namespace matsemi
