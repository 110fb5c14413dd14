#pragma once

// Flags 0 = V_0 < V_1 < ... < V_k = F^n, the maximal nilpotent semigroups
// phi(F) = {a : a V_i <= V_(i-1)}, the inverse map psi, consolidation and
// the constructive helpers built on F-bases.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "caps.hpp"
#include "matrix.hpp"
#include "matset.hpp"
#include "subspace.hpp"
#include "table.hpp"
#include "text.hpp"

namespace matsemi {

  using Signature = std::vector<int>;

  class Flag {
   public:
    //! Validates a strict chain; the zero space and F^n are adjoined when
    //! missing from the ends.
    Flag(Field field, int n, std::vector<Subspace> subspaces)
        : _field(std::move(field)), _n(n) {
      _chain.push_back(Subspace::zero(_field, n));
      for (auto& u : subspaces) {
        if (u.ambient() != n || !(u.field() == _field)) {
          fail(ErrorKind::AmbientMismatch, "flag member lives in another space");
        }
        if (_chain.size() == 1 && u.dim() == 0) {
          continue;
        }
        Subspace const& prev = _chain.back();
        if (u.dim() <= prev.dim() || !u.contains(prev)) {
          fail(ErrorKind::NotAChain,
               text::format(prev) + " is not strictly inside " + text::format(u));
        }
        _chain.push_back(std::move(u));
      }
      if (_chain.back().dim() != n) {
        _chain.push_back(Subspace::full(_field, n));
      }
    }

    Field const& field() const noexcept {
      return _field;
    }
    int ambient() const noexcept {
      return _n;
    }
    //! k, the number of proper steps.
    int length() const noexcept {
      return static_cast<int>(_chain.size()) - 1;
    }
    Subspace const& operator[](int i) const {
      return _chain.at(i);
    }
    std::vector<Subspace> const& chain() const noexcept {
      return _chain;
    }
    std::vector<Subspace> interior() const {
      return {_chain.begin() + 1, _chain.end() - 1};
    }
    Signature signature() const {
      Signature s;
      for (std::size_t i = 1; i < _chain.size(); ++i) {
        s.push_back(_chain[i].dim() - _chain[i - 1].dim());
      }
      return s;
    }

    friend bool operator==(Flag const& a, Flag const& b) {
      return a._field == b._field && a._n == b._n && a._chain == b._chain;
    }

   private:
    Field                 _field;
    int                   _n;
    std::vector<Subspace> _chain;
  };

  inline Flag flag_make(Field const& field, int n, std::vector<Subspace> subspaces) {
    return Flag(field, n, std::move(subspaces));
  }

  //! V_i = span(e_1, ..., e_(d_1 + ... + d_i)).
  inline Flag standard_flag(Field const& field, Signature const& sig) {
    int n = 0;
    for (int d : sig) {
      if (d < 1) {
        fail(ErrorKind::BadSignature, "signature entries must be positive");
      }
      n += d;
    }
    if (n < 1) {
      fail(ErrorKind::BadSignature, "empty signature");
    }
    std::vector<Subspace> inner;
    std::vector<Vector>   basis;
    for (std::size_t i = 0; i + 1 < sig.size(); ++i) {
      for (int j = 0; j < sig[i]; ++j) {
        basis.push_back(Subspace::standard_vector(n, static_cast<int>(basis.size())));
      }
      inner.push_back(Subspace::span(field, n, basis));
    }
    return Flag(field, n, std::move(inner));
  }

  namespace text {

    //! Interior subspaces joined by `|`; `-` (or nothing) is the flag 0 < F^n.
    inline Flag parse_flag(Field const& field, int n, std::string_view s) {
      std::vector<Subspace> inner;
      if (!trim(s).empty()) {
        for (auto part : split(s, '|')) {
          inner.push_back(parse_subspace(field, n, part));
        }
      }
      return Flag(field, n, std::move(inner));
    }

    inline std::string format(Flag const& f) {
      if (f.length() == 1) {
        return "-";
      }
      std::string out;
      for (int i = 1; i < f.length(); ++i) {
        if (i > 1) {
          out += '|';
        }
        out += format(f[i]);
      }
      return out;
    }

    inline std::string format(Signature const& s) {
      std::string out = "(";
      for (std::size_t i = 0; i < s.size(); ++i) {
        out += (i ? "," : "") + std::to_string(s[i]);
      }
      return out + ")";
    }

  }  // namespace text

  //! An F-basis: for every i, the first dim V_i vectors span V_i.  Each
  //! stratum is filled greedily from the RREF rows of V_i, after `lead`
  //! when `lead` belongs to that stratum.
  inline std::vector<Vector> f_basis(Flag const& f, Vector const* lead = nullptr) {
    std::vector<Vector> basis;
    for (int i = 1; i <= f.length(); ++i) {
      Subspace current = Subspace::span(f.field(), f.ambient(), basis);
      auto     take    = [&](Vector const& v) {
        if (!current.contains(v)) {
          basis.push_back(v);
          current = Subspace::span(f.field(), f.ambient(), basis);
        }
      };
      if (lead && f[i].contains(*lead) && !f[i - 1].contains(*lead)) {
        take(*lead);
      }
      for (auto const& v : f[i].basis()) {
        take(v);
      }
    }
    return basis;
  }

  inline bool phi_member(Flag const& f, Matrix const& a) {
    if (a.rows() != f.ambient() || a.cols() != f.ambient()) {
      fail(ErrorKind::DimMismatch, "matrix and flag live in different spaces");
    }
    require_same_field(a.field(), f.field());
    for (int i = 1; i <= f.length(); ++i) {
      if (!f[i - 1].contains(apply(a, f[i]))) {
        return false;
      }
    }
    return true;
  }

  inline std::uint64_t phi_size_exponent(Signature const& sig) {
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      for (std::size_t j = i + 1; j < sig.size(); ++j) {
        e += static_cast<std::uint64_t>(sig[i]) * sig[j];
      }
    }
    return e;
  }

  //! phi(F) = P U P^-1 with P an F-basis and U block strictly upper
  //! triangular for the signature.
  inline MatSet phi_enumerate(Flag const& f, Caps const& caps = {}) {
    Signature const     sig   = f.signature();
    Field const&        field = f.field();
    int const           n     = f.ambient();
    std::uint64_t const count
        = saturating_pow(static_cast<std::uint64_t>(field.q()), phi_size_exponent(sig));
    if (count > caps.max_enumeration) {
      fail(ErrorKind::CapExceeded, "phi(F) has more elements than the cap");
    }
    std::vector<int> block(n);
    for (int i = 0, b = 0, used = 0; i < n; ++i) {
      if (i == used + sig[b]) {
        used += sig[b++];
      }
      block[i] = b;
    }
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (block[i] < block[j]) {
          cells.emplace_back(i, j);
        }
      }
    }
    Matrix const p    = Matrix::from_columns(field, n, f_basis(f));
    Matrix const pinv = inverse(p);
    std::vector<Matrix> out;
    out.reserve(count);
    std::vector<Scalar> digits(cells.size(), 0);
    for (std::uint64_t c = 0; c < count; ++c) {
      Matrix u(field, n, n);
      for (std::size_t s = 0; s < cells.size(); ++s) {
        u.set(cells[s].first, cells[s].second, digits[s]);
      }
      out.push_back(p * u * pinv);
      for (std::size_t s = 0; s < digits.size(); ++s) {
        if (++digits[s] < field.q()) {
          break;
        }
        digits[s] = 0;
      }
    }
    return MatSet(field, n, std::move(out));
  }

  namespace detail {
    // The abstract zero of the table must be the zero matrix.
    inline std::optional<int> matrix_nilpotency(MatSet const& s, SemigroupTable const& t) {
      if (s.empty() || !s[0].is_zero()) {
        return std::nullopt;
      }
      return nilpotency_degree(t);
    }
  }  // namespace detail

  //! nd(S) of a closed set: least k with S^k = {0}.
  inline int nilpotency_degree(MatSet const& s) {
    auto const nd = detail::matrix_nilpotency(s, build_table(s));
    if (!nd) {
      fail(ErrorKind::NotNilpotent, "no power of the set is {0}");
    }
    return *nd;
  }

  //! 0 < <S^(k-1) F^n> < ... < <S F^n> < F^n for nilpotent S with nd = k >= 2.
  inline Flag psi(MatSet const& s) {
    SemigroupTable const t  = build_table(s);
    auto const           nd = detail::matrix_nilpotency(s, t);
    if (!nd || *nd < 2) {
      fail(ErrorKind::NotNilpotent, "psi needs a nilpotent semigroup of degree >= 2");
    }
    auto const            powers = power_sets(t, all_ids(t), static_cast<std::size_t>(*nd));
    std::vector<Subspace> inner;
    for (int i = *nd - 1; i >= 1; --i) {
      std::vector<Vector> cols;
      Bits const&         p = powers[i - 1];
      for (auto x = p.find_first(); x != Bits::npos; x = p.find_next(x)) {
        Subspace const im = image(s[x]);
        cols.insert(cols.end(), im.basis().begin(), im.basis().end());
      }
      inner.push_back(Subspace::span(s.field(), s.dim(), cols));
    }
    return Flag(s.field(), s.dim(), std::move(inner));
  }

  inline bool is_k_maximal(MatSet const& s, Caps const& caps = {}) {
    return phi_enumerate(psi(s), caps) == s;
  }

  //! True iff every subspace of `g` occurs in `f`.
  inline bool consolidation(Flag const& f, Flag const& g) {
    if (f.ambient() != g.ambient()) {
      fail(ErrorKind::DimMismatch, "flags live in different spaces");
    }
    require_same_field(f.field(), g.field());
    for (auto const& u : g.chain()) {
      if (std::find(f.chain().begin(), f.chain().end(), u) == f.chain().end()) {
        return false;
      }
    }
    return true;
  }

  //! Index i with v in V_i but not V_(i-1); 0 for v = 0.
  inline int stratum(Flag const& f, Vector const& v) {
    for (int i = 0; i <= f.length(); ++i) {
      if (f[i].contains(v)) {
        return i;
      }
    }
    return f.length();
  }

  //! a in phi(F) with a(v) = w and a killing the rest of an F-basis through v.
  inline Matrix connecting_map(Flag const& f, Vector const& v, Vector const& w) {
    if (static_cast<int>(v.size()) != f.ambient()
        || static_cast<int>(w.size()) != f.ambient()) {
      fail(ErrorKind::DimMismatch, "vectors live in another space");
    }
    int const i = stratum(f, v);
    if (i < 2 || stratum(f, w) != i - 1) {
      fail(ErrorKind::PreconditionViolated,
           "need v in V_i \\ V_(i-1) and w in V_(i-1) \\ V_(i-2) with i >= 2");
    }
    auto const          basis = f_basis(f, &v);
    std::vector<Vector> targets(basis.size(), Vector(f.ambient(), 0));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (basis[j] == v) {
        targets[j] = w;
      }
    }
    Field const& field = f.field();
    return Matrix::from_columns(field, f.ambient(), targets)
         * inverse(Matrix::from_columns(field, f.ambient(), basis));
  }

  //! Invertible g with g V_i = W_i for all i.
  inline Matrix flag_transporter(Flag const& f, Flag const& g) {
    require_same_field(f.field(), g.field());
    if (f.ambient() != g.ambient() || f.signature() != g.signature()) {
      fail(ErrorKind::SignatureMismatch,
           "signatures " + text::format(f.signature()) + " and "
               + text::format(g.signature()) + " differ");
    }
    Field const& field = f.field();
    return Matrix::from_columns(field, g.ambient(), f_basis(g))
         * inverse(Matrix::from_columns(field, f.ambient(), f_basis(f)));
  }

  //! Every flag of F^n, depth first through the sorted subspace lists, so
  //! shorter prefixes and smaller subspaces come first.
  inline std::vector<Flag> enumerate_flags(Field const& field, int n, Caps const& caps = {}) {
    std::vector<std::vector<Subspace>> by_dim(n + 1);
    for (int d = 1; d < n; ++d) {
      by_dim[d] = enumerate_subspaces(field, n, d, caps);
    }
    std::vector<Flag>     out;
    std::vector<Subspace> prefix;
    std::function<void(int)> extend = [&](int lo) {
      out.emplace_back(field, n, prefix);
      if (out.size() > caps.max_enumeration) {
        fail(ErrorKind::CapExceeded, "too many flags");
      }
      for (int d = lo; d < n; ++d) {
        for (auto const& u : by_dim[d]) {
          if (prefix.empty() || u.contains(prefix.back())) {
            prefix.push_back(u);
            extend(d + 1);
            prefix.pop_back();
          }
        }
      }
    };
    extend(1);
    return out;
  }

  //! The flags of F^n with the given signature, in enumerate_flags order.
  inline std::vector<Flag> enumerate_flags(Field const& field,
                                           Signature const& sig,
                                           Caps const& caps = {}) {
    int n = 0;
    for (int d : sig) {
      n += d;
    }
    std::vector<Flag> out;
    for (auto& f : enumerate_flags(field, n, caps)) {
      if (f.signature() == sig) {
        out.push_back(std::move(f));
      }
    }
    return out;
  }

}  // namespace matsemi
