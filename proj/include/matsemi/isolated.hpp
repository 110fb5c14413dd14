#pragma once

// Rank strata and ideals of M(n, q), idempotents e(V1, V2), the semigroups
// S(A, B) and the isolated / completely isolated predicates, with the
// exhaustive and list-based classification routes.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "caps.hpp"
#include "closure.hpp"
#include "matset.hpp"
#include "subsemigroups.hpp"
#include "subspace.hpp"
#include "universe.hpp"

namespace matsemi {

  //! D_i: all matrices of rank i.
  inline MatSet rank_stratum(Field const& field, int n, int i, Caps const& caps = {}) {
    Universe const      u(field, n, caps.max_universe, false);
    std::vector<Matrix> out;
    for (Id x = 0; x < u.size(); ++x) {
      if (u.rank(x) == i) {
        out.push_back(u[x]);
      }
    }
    return MatSet(field, n, std::move(out));
  }

  //! I_i = D_0 u ... u D_i.
  inline MatSet ideal(Field const& field, int n, int i, Caps const& caps = {}) {
    Universe const      u(field, n, caps.max_universe, false);
    std::vector<Matrix> out;
    for (Id x = 0; x < u.size(); ++x) {
      if (u.rank(x) <= i) {
        out.push_back(u[x]);
      }
    }
    return MatSet(field, n, std::move(out));
  }

  //! The semigroup generated by D_k, 1 <= k <= n-1.
  inline MatSet ideal_generated_by_stratum(Field const& field, int n, int k,
                                           Caps const& caps = {}) {
    if (k < 1 || k >= n) {
      fail(ErrorKind::BadK, "k must satisfy 1 <= k <= n-1, got " + std::to_string(k));
    }
    return closure(rank_stratum(field, n, k, caps), caps);
  }

  struct IdempotentPair {
    Subspace v1;  // image
    Subspace v2;  // kernel
    Matrix   e;
  };

  //! e(V1, V2): projection onto V1 along V2.
  inline IdempotentPair idempotent_of(Subspace const& v1, Subspace const& v2) {
    return {v1, v2, projection(v1, v2)};
  }

  //! Every idempotent of M(n, q) in canonical order, with its (Im, ker) pair.
  inline std::vector<IdempotentPair> idempotents(Field const& field, int n,
                                                 Caps const& caps = {}) {
    Universe const              u(field, n, caps.max_universe, false);
    std::vector<IdempotentPair> out;
    for (Id x = 0; x < u.size(); ++x) {
      if (is_idempotent(u[x])) {
        out.push_back({image(u[x]), kernel(u[x]), u[x]});
      }
    }
    return out;
  }

  //! A family of hyperplanes (images) and lines (kernels) with no line
  //! inside a hyperplane.
  class SubspacePairFamily {
   public:
    SubspacePairFamily(std::vector<Subspace> a_family, std::vector<Subspace> b_family)
        : _a(std::move(a_family)), _b(std::move(b_family)) {
      if (_a.empty() || _b.empty()) {
        fail(ErrorKind::EmptyFamily, "both families must be nonempty");
      }
      std::sort(_a.begin(), _a.end());
      _a.erase(std::unique(_a.begin(), _a.end()), _a.end());
      std::sort(_b.begin(), _b.end());
      _b.erase(std::unique(_b.begin(), _b.end()), _b.end());
      int const n = _a.front().ambient();
      for (auto const& h : _a) {
        if (h.ambient() != n || h.dim() != n - 1) {
          fail(ErrorKind::InvariantViolation, "image family must consist of hyperplanes");
        }
      }
      for (auto const& l : _b) {
        if (l.ambient() != n || l.dim() != 1) {
          fail(ErrorKind::InvariantViolation, "kernel family must consist of lines");
        }
        for (auto const& h : _a) {
          if (h.contains(l)) {
            fail(ErrorKind::ContainmentViolation,
                 text::format(l) + " lies inside " + text::format(h));
          }
        }
      }
    }

    std::vector<Subspace> const& a_family() const noexcept {
      return _a;
    }
    std::vector<Subspace> const& b_family() const noexcept {
      return _b;
    }
    Field const& field() const noexcept {
      return _a.front().field();
    }
    int ambient() const noexcept {
      return _a.front().ambient();
    }

    bool admits(Matrix const& m) const {
      if (rank(m) != ambient() - 1) {
        return false;
      }
      return std::binary_search(_a.begin(), _a.end(), image(m))
          && std::binary_search(_b.begin(), _b.end(), kernel(m));
    }

   private:
    std::vector<Subspace> _a;
    std::vector<Subspace> _b;
  };

  //! S(A, B) = {A : Im(A) in A, ker(A) in B}.
  inline MatSet s_ab_make(SubspacePairFamily const& fam, Caps const& caps = {}) {
    Universe const      u(fam.field(), fam.ambient(), caps.max_universe, false);
    std::vector<Matrix> out;
    for (Id x = 0; x < u.size(); ++x) {
      if (u.rank(x) == fam.ambient() - 1 && fam.admits(u[x])) {
        out.push_back(u[x]);
      }
    }
    MatSet s(fam.field(), fam.ambient(), std::move(out));
    if (!is_closed(s)) {
      fail(ErrorKind::InvariantViolation, "S(A, B) is not closed");
    }
    return s;
  }

  //! M(n, q) with its table when it is small enough, and the power orbit of
  //! every element.  Shared by the predicates below.
  class IsolationAmbient {
   public:
    IsolationAmbient(Field const& field, int n, Caps const& caps = {})
        : _u(field, n, caps.max_universe,
             saturating_pow(static_cast<std::uint64_t>(field.q()),
                            static_cast<std::uint64_t>(n) * n)
                 <= caps.max_brute) {
      _orbit.resize(_u.size());
      for (Id x = 0; x < _u.size(); ++x) {
        Bits seen(_u.size());
        Id   p = x;
        while (!seen.test(p)) {
          seen.set(p);
          _orbit[x].push_back(p);
          p = mul(p, x);
        }
      }
    }

    Universe const& universe() const noexcept {
      return _u;
    }
    std::size_t size() const noexcept {
      return _u.size();
    }
    Id mul(Id a, Id b) const {
      return _u.has_table() ? _u.mul(a, b) : _u.id_of(_u[a] * _u[b]);
    }
    //! x, x^2, ... up to the first repeat.
    std::vector<Id> const& orbit(Id x) const {
      return _orbit[x];
    }
    Bits ids_of(MatSet const& s) const {
      return _u.ids_of(s);
    }

    bool is_closed(Bits const& s) const {
      for (auto a = s.find_first(); a != Bits::npos; a = s.find_next(a)) {
        for (auto b = s.find_first(); b != Bits::npos; b = s.find_next(b)) {
          if (!s.test(mul(static_cast<Id>(a), static_cast<Id>(b)))) {
            return false;
          }
        }
      }
      return true;
    }

    //! Some power of x in S forces x in S.
    bool is_isolated(Bits const& s) const {
      require_closed(s);
      for (Id x = 0; x < size(); ++x) {
        if (s.test(x)) {
          continue;
        }
        for (Id p : _orbit[x]) {
          if (s.test(p)) {
            return false;
          }
        }
      }
      return true;
    }

    //! xy in S forces x in S or y in S.
    bool is_completely_isolated(Bits const& s) const {
      require_closed(s);
      Bits const out = ~s;
      for (auto a = out.find_first(); a != Bits::npos; a = out.find_next(a)) {
        for (auto b = out.find_first(); b != Bits::npos; b = out.find_next(b)) {
          if (s.test(mul(static_cast<Id>(a), static_cast<Id>(b)))) {
            return false;
          }
        }
      }
      return true;
    }

   private:
    void require_closed(Bits const& s) const {
      if (!is_closed(s)) {
        fail(ErrorKind::NotClosed, "set is not a subsemigroup");
      }
    }

    Universe                     _u;
    std::vector<std::vector<Id>> _orbit;
  };

  inline bool is_isolated(MatSet const& s, Caps const& caps = {}) {
    IsolationAmbient const amb(s.field(), s.dim(), caps);
    return amb.is_isolated(amb.ids_of(s));
  }

  inline bool is_completely_isolated(MatSet const& s, Caps const& caps = {}) {
    IsolationAmbient const amb(s.field(), s.dim(), caps);
    return amb.is_completely_isolated(amb.ids_of(s));
  }

  struct IsolatedEntry {
    std::string           kind;  // M, GL, I, SAB or other
    std::vector<Subspace> a_family;
    std::vector<Subspace> b_family;
    MatSet                elements;
    bool                  isolated            = false;
    bool                  completely_isolated = false;
  };

  //! Every valid (A, B) family in canonical order: A runs over nonempty sets
  //! of hyperplanes (as bitmasks over the sorted list), B over the nonempty
  //! sets of lines outside all of them.
  inline std::vector<SubspacePairFamily> enumerate_families(Field const& field, int n,
                                                            Caps const& caps = {}) {
    if (n < 2) {
      return {};
    }
    auto const hyper = enumerate_subspaces(field, n, n - 1, caps);
    auto const lines = enumerate_subspaces(field, n, 1, caps);
    if (hyper.size() > 20 || lines.size() > 20) {
      fail(ErrorKind::CapExceeded, "too many subspace families to list");
    }
    std::vector<std::uint32_t> inside(hyper.size());  // lines within each hyperplane
    for (std::size_t h = 0; h < hyper.size(); ++h) {
      for (std::size_t l = 0; l < lines.size(); ++l) {
        if (hyper[h].contains(lines[l])) {
          inside[h] |= std::uint32_t{1} << l;
        }
      }
    }
    std::vector<SubspacePairFamily> out;
    for (std::uint32_t am = 1; am < (std::uint32_t{1} << hyper.size()); ++am) {
      std::uint32_t blocked = 0;
      std::vector<Subspace> a;
      for (std::size_t h = 0; h < hyper.size(); ++h) {
        if (am >> h & 1) {
          blocked |= inside[h];
          a.push_back(hyper[h]);
        }
      }
      std::uint32_t const free = ~blocked & ((std::uint32_t{1} << lines.size()) - 1);
      // nonempty submasks of `free` in increasing order
      for (std::uint32_t bm = 1; bm <= free; ++bm) {
        if ((bm & ~free) != 0) {
          continue;
        }
        std::vector<Subspace> b;
        for (std::size_t l = 0; l < lines.size(); ++l) {
          if (bm >> l & 1) {
            b.push_back(lines[l]);
          }
        }
        out.emplace_back(a, std::move(b));
        if (out.size() > caps.max_enumeration) {
          fail(ErrorKind::CapExceeded, "too many families");
        }
      }
    }
    return out;
  }

  //! M, GL, I_(n-1) and every S(A, B), as predicted by the classification.
  inline std::vector<IsolatedEntry> theorem_list(IsolationAmbient const& amb,
                                                 bool with_complete = true,
                                                 Caps const& caps   = {}) {
    Universe const& u = amb.universe();
    Field const&    f = u.field();
    int const       n = u.dim();
    std::vector<IsolatedEntry> out;
    std::vector<Matrix>        gl, in;
    for (Id x = 0; x < u.size(); ++x) {
      (u.rank(x) == n ? gl : in).push_back(u[x]);
    }
    out.push_back({"M", {}, {}, u.elements()});
    out.push_back({"GL", {}, {}, MatSet(f, n, std::move(gl))});
    out.push_back({"I", {}, {}, MatSet(f, n, std::move(in))});
    struct Corank1 {
      Id       id;
      Subspace im, ker;
    };
    std::vector<Corank1> corank1;
    for (Id x = 0; x < u.size(); ++x) {
      if (u.rank(x) == n - 1) {
        corank1.push_back({x, image(u[x]), kernel(u[x])});
      }
    }
    for (auto const& fam : enumerate_families(f, n, caps)) {
      auto const&         a = fam.a_family();
      auto const&         b = fam.b_family();
      std::vector<Matrix> ms;
      for (auto const& c : corank1) {
        if (std::binary_search(a.begin(), a.end(), c.im)
            && std::binary_search(b.begin(), b.end(), c.ker)) {
          ms.push_back(u[c.id]);
        }
      }
      out.push_back({"SAB", fam.a_family(), fam.b_family(), MatSet(f, n, std::move(ms))});
    }
    for (auto& e : out) {
      Bits const ids        = amb.ids_of(e.elements);
      e.isolated            = amb.is_isolated(ids);
      e.completely_isolated = with_complete && amb.is_completely_isolated(ids);
    }
    return out;
  }

  enum class IsolatedMode { exhaustive, theorem_list };

  struct IsolatedReport {
    std::vector<IsolatedEntry> entries;  // isolated subsemigroups found
    std::size_t                subsemigroups = 0;  // exhaustive mode only
    bool                       complete      = false;  // completeness was checked
    bool                       lists_agree   = true;
  };

  //! Exhaustive mode scans every subset of M(n, q) (q^(n^2) <= 16) and
  //! compares the isolated ones with the predicted list; theorem_list mode
  //! only checks that every predicted semigroup is isolated.
  inline IsolatedReport enumerate_isolated(Field const& field, int n, IsolatedMode mode,
                                           unsigned threads = 1, Caps const& caps = {}) {
    IsolationAmbient const amb(field, n, caps);
    auto                   predicted = theorem_list(amb, true, caps);
    IsolatedReport         rep;
    if (mode == IsolatedMode::theorem_list) {
      for (auto& e : predicted) {
        rep.lists_agree = rep.lists_agree && e.isolated;
      }
      rep.entries = std::move(predicted);
      return rep;
    }
    Universe const& u = amb.universe();
    if (u.size() > caps.max_subset_elems) {
      fail(ErrorKind::CapExceeded, "exhaustive scan needs q^(n^2) <= "
                                       + std::to_string(caps.max_subset_elems));
    }
    auto const masks  = enumerate_subsemigroups(u.table(), false, threads, caps);
    rep.subsemigroups = masks.size();
    rep.complete      = true;
    std::vector<std::uint32_t> predicted_masks;
    for (auto const& e : predicted) {
      std::uint32_t mask = 0;
      for (auto const& m : e.elements) {
        mask |= std::uint32_t{1} << u.id_of(m);
      }
      predicted_masks.push_back(mask);
    }
    std::size_t matched = 0;
    for (std::uint32_t mask : masks) {
      Bits ids(u.size(), mask);
      if (!amb.is_isolated(ids)) {
        continue;
      }
      auto const it = std::find(predicted_masks.begin(), predicted_masks.end(), mask);
      if (it != predicted_masks.end()) {
        rep.entries.push_back(predicted[static_cast<std::size_t>(it - predicted_masks.begin())]);
        ++matched;
      } else {
        IsolatedEntry e{"other", {}, {}, u.to_matset(ids)};
        e.isolated            = true;
        e.completely_isolated = amb.is_completely_isolated(ids);
        rep.entries.push_back(std::move(e));
        rep.lists_agree = false;
      }
    }
    for (auto const& e : predicted) {
      rep.lists_agree = rep.lists_agree && e.isolated;
    }
    rep.lists_agree = rep.lists_agree && matched == predicted.size();
    return rep;
  }

  struct Lemma27Report {
    std::size_t              checked   = 0;
    std::size_t              triggered = 0;  // hypothesis held
    std::vector<std::string> violations;
  };

  //! On each isolated S: if S holds 0, an idempotent of rank <= n-2, or two
  //! rank n-1 idempotents e(V1, V2), e(V1', V2') with V2 <= V1', then S
  //! contains I_(n-1).
  inline Lemma27Report lemma27_check(IsolatedReport const& rep, Field const& field, int n,
                                     Caps const& caps = {}) {
    Lemma27Report  out;
    MatSet const   top = ideal(field, n, n - 1, caps);
    for (auto const& e : rep.entries) {
      ++out.checked;
      std::vector<IdempotentPair> idem;
      bool                        hyp = false;
      for (auto const& m : e.elements) {
        if (m.is_zero()) {
          hyp = true;
        }
        if (is_idempotent(m)) {
          idem.push_back({image(m), kernel(m), m});
          if (rank(m) <= n - 2) {
            hyp = true;
          }
        }
      }
      for (auto const& x : idem) {
        for (auto const& y : idem) {
          if (x.v1.dim() == n - 1 && y.v1.dim() == n - 1 && y.v1.contains(x.v2)) {
            hyp = true;
          }
        }
      }
      if (!hyp) {
        continue;
      }
      ++out.triggered;
      if (!top.is_subset_of(e.elements)) {
        out.violations.push_back(e.kind + " of size " + std::to_string(e.elements.size()));
      }
    }
    return out;
  }

}  // namespace matsemi
