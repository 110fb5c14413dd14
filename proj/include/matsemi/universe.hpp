#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "caps.hpp"
#include "matrix.hpp"
#include "matset.hpp"
#include "table.hpp"

namespace matsemi {

  //! All of M(n, q) in canonical MatSet order, with O(1) matrix -> id lookup
  //! and (on request) the full multiplication table.
  class Universe {
   public:
    Universe(Field field, int n, std::uint64_t cap, bool with_table = true)
        : _field(std::move(field)), _n(n) {
      std::uint64_t const count
          = saturating_pow(static_cast<std::uint64_t>(_field.q()),
                           static_cast<std::uint64_t>(n) * n);
      if (n < 1 || count > cap) {
        fail(ErrorKind::CapExceeded,
             "M(" + std::to_string(n) + "," + _field.to_string() + ") has "
                 + (count == UINT64_MAX ? std::string("too many")
                                        : std::to_string(count))
                 + " elements, cap is " + std::to_string(cap));
      }
      std::vector<Matrix> all;
      all.reserve(count);
      int const cells = n * n;
      for (std::uint64_t code = 0; code < count; ++code) {
        all.push_back(decode(code, cells));
      }
      _set = std::make_shared<MatSet>(_field, n, std::move(all));
      _id_of_code.assign(count, 0);
      _rank.resize(count);
      for (std::size_t id = 0; id < _set->size(); ++id) {
        _id_of_code[encode((*_set)[id])] = static_cast<Id>(id);
        _rank[id]                        = _set->rank_of(id);
      }
      if (with_table) {
        std::vector<Id> g(count * count);
        for (std::size_t a = 0; a < count; ++a) {
          for (std::size_t b = 0; b < count; ++b) {
            g[a * count + b] = id_of((*_set)[a] * (*_set)[b]);
          }
        }
        _table = std::make_shared<SemigroupTable>(count, std::move(g));
        _table->attach_matrices(_set->elements());
      }
    }

    Field const& field() const noexcept {
      return _field;
    }
    int dim() const noexcept {
      return _n;
    }
    std::size_t size() const noexcept {
      return _set->size();
    }
    MatSet const& elements() const noexcept {
      return *_set;
    }
    Matrix const& operator[](Id id) const noexcept {
      return (*_set)[id];
    }
    int rank(Id id) const noexcept {
      return _rank[id];
    }
    Id id_of(Matrix const& m) const {
      return _id_of_code[encode(m)];
    }
    bool has_table() const noexcept {
      return static_cast<bool>(_table);
    }
    SemigroupTable const& table() const {
      if (!_table) {
        fail(ErrorKind::InternalError, "universe built without a table");
      }
      return *_table;
    }
    Id mul(Id a, Id b) const noexcept {
      return _table->mul(a, b);
    }

    Bits ids_of(MatSet const& s) const {
      Bits b(size());
      for (auto const& m : s) {
        b.set(id_of(m));
      }
      return b;
    }

    MatSet to_matset(Bits const& b) const {
      std::vector<Matrix> ms;
      for (auto x = b.find_first(); x != Bits::npos; x = b.find_next(x)) {
        ms.push_back((*_set)[x]);
      }
      return MatSet(_field, _n, std::move(ms));
    }

   private:
    // Row-major entries as a base-q number, first entry most significant.
    std::uint64_t encode(Matrix const& m) const {
      std::uint64_t code = 0;
      for (Scalar x : m.entries()) {
        code = code * static_cast<std::uint64_t>(_field.q()) + x;
      }
      return code;
    }

    Matrix decode(std::uint64_t code, int cells) const {
      std::vector<Scalar> e(cells);
      for (int i = cells - 1; i >= 0; --i) {
        e[i] = static_cast<Scalar>(code % static_cast<std::uint64_t>(_field.q()));
        code /= static_cast<std::uint64_t>(_field.q());
      }
      return Matrix(_field, _n, _n, std::move(e));
    }

    Field                           _field;
    int                             _n;
    std::shared_ptr<MatSet>         _set;
    std::vector<Id>                 _id_of_code;
    std::vector<int>                _rank;
    std::shared_ptr<SemigroupTable> _table;
  };

}  // namespace matsemi
