#pragma once

// r-maximal nilpotent semigroups T = phi(F): the preorders < and <<, their
// depth sets, the K_{u,v} sets and super rank, the u-statistic and the
// isomorphism fingerprint, and the isomorphism decision procedure.

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "caps.hpp"
#include "flags.hpp"
#include "matset.hpp"
#include "preorder.hpp"
#include "subspace.hpp"
#include "table.hpp"
#include "table_iso.hpp"

namespace matsemi {

  enum class PrecMethod { products, kernels };
  enum class LlMethod { products, images };
  enum class Preorder { prec, ll };

  class NilContext;

  namespace detail {

    struct NilAnalysis {
      Bits                            decomposable;
      std::vector<Bits>               tat;          // {C A D : C, D in T}
      std::vector<bool>               tat_nonzero;
      std::array<Bits, 9>             k;            // index 3u + v
      std::vector<std::optional<int>> super_rank;   // nullopt: zero or undefined
    };

  }  // namespace detail

  //! T = phi(F) for a flag of length r >= 2 together with its table and the
  //! per-element data the invariants are built from.  Heavier analysis (K
  //! sets, super ranks) is computed once on first use.
  class NilContext {
   public:
    explicit NilContext(Flag flag, Caps const& caps = {})
        : _flag(std::move(flag)),
          _elements(std::make_shared<MatSet>(phi_enumerate_checked(_flag, caps))),
          _table(std::make_shared<SemigroupTable>(build_table(*_elements))),
          _once(std::make_shared<std::once_flag>()) {
      int const   r   = _flag.length();
      auto const& top = _flag[r - 1];
      auto const& v1  = _flag[1];
      std::size_t const m = size();
      _zero               = *_table->zero_id();
      _ker_top.reserve(m);
      _im_plus.reserve(m);
      for (Id a = 0; a < m; ++a) {
        Matrix const& x = (*_elements)[a];
        _ker_top.push_back(intersect(kernel(x), top));
        Subspace const im = image(x);
        _im_plus.push_back(sum(im, v1));
        _prec_depth.push_back(top.dim() - _ker_top.back().dim());
        _ll_depth.push_back(im.dim() - intersect(im, v1).dim());
      }
      _zr.assign(m, Bits(m));
      _zl.assign(m, Bits(m));
      for (Id a = 0; a < m; ++a) {
        for (Id c = 0; c < m; ++c) {
          if (_table->mul(a, c) == _zero) {
            _zr[a].set(c);
          }
          if (_table->mul(c, a) == _zero) {
            _zl[a].set(c);
          }
        }
      }
      _powers = power_sets(*_table, all_ids(*_table), static_cast<std::size_t>(r));
    }

    Flag const& flag() const noexcept {
      return _flag;
    }
    int r() const noexcept {
      return _flag.length();
    }
    Signature signature() const {
      return _flag.signature();
    }
    Field const& field() const noexcept {
      return _flag.field();
    }
    MatSet const& elements() const noexcept {
      return *_elements;
    }
    SemigroupTable const& table() const noexcept {
      return *_table;
    }
    std::size_t size() const noexcept {
      return _elements->size();
    }
    Matrix const& operator[](Id a) const {
      return (*_elements)[a];
    }
    Id zero() const noexcept {
      return _zero;
    }
    Id mul(Id a, Id b) const noexcept {
      return _table->mul(a, b);
    }

    Id id_of(Matrix const& a) const {
      if (a.rows() != _flag.ambient() || a.cols() != _flag.ambient()
          || !(a.field() == field())) {
        fail(ErrorKind::NotInContext, "matrix lives in another space");
      }
      auto const idx = _elements->index_of(a);
      if (!idx) {
        fail(ErrorKind::NotInContext, text::format(a) + " is not in phi(F)");
      }
      return static_cast<Id>(*idx);
    }

    //! T^j for j >= 1 (T^j = {0} past the nilpotency degree).
    Bits power(int j) const {
      if (j <= static_cast<int>(_powers.size())) {
        return _powers[j - 1];
      }
      Bits z(size());
      z.set(_zero);
      return z;
    }

    //! ker(A) meet V_(r-1); Im(A) + V_1.
    Subspace const& kernel_top(Id a) const {
      return _ker_top[a];
    }
    Subspace const& image_plus(Id a) const {
      return _im_plus[a];
    }
    int prec_depth(Id a) const {
      return _prec_depth[a];
    }
    int ll_depth(Id a) const {
      return _ll_depth[a];
    }
    //! {C : AC = 0} and {C : CA = 0}.
    Bits const& right_zeros(Id a) const {
      return _zr[a];
    }
    Bits const& left_zeros(Id a) const {
      return _zl[a];
    }

    detail::NilAnalysis const& analysis() const {
      std::call_once(*_once, [this] { _analysis = analyze(); });
      return *_analysis;
    }

   private:
    static MatSet phi_enumerate_checked(Flag const& f, Caps const& caps) {
      if (f.length() < 2) {
        fail(ErrorKind::PreconditionViolated, "context needs a flag of length >= 2");
      }
      std::uint64_t const count = saturating_pow(
          static_cast<std::uint64_t>(f.field().q()), phi_size_exponent(f.signature()));
      if (count > caps.max_universe) {
        fail(ErrorKind::CapExceeded,
             "phi(F) has " + std::to_string(count) + " elements, cap is "
                 + std::to_string(caps.max_universe));
      }
      return phi_enumerate(f, caps);
    }

    std::shared_ptr<detail::NilAnalysis> analyze() const;

    Flag                                         _flag;
    std::shared_ptr<MatSet const>                _elements;
    std::shared_ptr<SemigroupTable const>        _table;
    Id                                           _zero = 0;
    std::vector<Subspace>                        _ker_top;
    std::vector<Subspace>                        _im_plus;
    std::vector<int>                             _prec_depth;
    std::vector<int>                             _ll_depth;
    std::vector<Bits>                            _zr;
    std::vector<Bits>                            _zl;
    std::vector<Bits>                            _powers;
    std::shared_ptr<std::once_flag>              _once;
    mutable std::shared_ptr<detail::NilAnalysis> _analysis;
  };

  //! A < B: AC = 0 implies BC = 0 for all C in T.
  inline bool prec(NilContext const& ctx, Matrix const& a, Matrix const& b,
                   PrecMethod method = PrecMethod::products) {
    Id const x = ctx.id_of(a);
    Id const y = ctx.id_of(b);
    if (method == PrecMethod::products) {
      return ctx.right_zeros(x).is_subset_of(ctx.right_zeros(y));
    }
    return ctx.kernel_top(y).contains(ctx.kernel_top(x));
  }

  //! A << B: CA = 0 implies CB = 0 for all C in T.  The image form used is
  //! Im(B) <= Im(A) + V_1.
  inline bool ll(NilContext const& ctx, Matrix const& a, Matrix const& b,
                 LlMethod method = LlMethod::products) {
    Id const x = ctx.id_of(a);
    Id const y = ctx.id_of(b);
    if (method == LlMethod::products) {
      return ctx.left_zeros(x).is_subset_of(ctx.left_zeros(y));
    }
    return ctx.image_plus(x).contains(ctx.image_plus(y));
  }

  //! M_i by the dimension criteria, as an id set.
  inline Bits depth_ids(NilContext const& ctx, Preorder which, int i) {
    Bits out(ctx.size());
    for (Id a = 0; a < ctx.size(); ++a) {
      int const d = which == Preorder::prec ? ctx.prec_depth(a) : ctx.ll_depth(a);
      if (d == i) {
        out.set(a);
      }
    }
    return out;
  }

  inline MatSet to_matset(NilContext const& ctx, Bits const& ids) {
    std::vector<Matrix> ms;
    for (auto a = ids.find_first(); a != Bits::npos; a = ids.find_next(a)) {
      ms.push_back(ctx[static_cast<Id>(a)]);
    }
    return MatSet(ctx.field(), ctx.flag().ambient(), std::move(ms));
  }

  inline MatSet depth_sets(NilContext const& ctx, Preorder which, int i) {
    return to_matset(ctx, depth_ids(ctx, which, i));
  }

  //! Depth of every element in the order induced by the product definition.
  inline std::vector<int> order_depths(NilContext const& ctx, Preorder which) {
    // a is below b when b sits higher, i.e. a < b in the preorder.
    return preorder_depths(ctx.size(), [&](Id a, Id b) {
      return which == Preorder::prec
                 ? ctx.right_zeros(a).is_subset_of(ctx.right_zeros(b))
                 : ctx.left_zeros(a).is_subset_of(ctx.left_zeros(b));
    });
  }

  inline bool is_indecomposable(NilContext const& ctx, Matrix const& a) {
    Id const x = ctx.id_of(a);
    return !ctx.analysis().decomposable.test(x);
  }

  inline Bits const& k_ids(NilContext const& ctx, int u, int v) {
    bool const valid = u >= 0 && v >= 0 && u <= 2 && v <= 2 && (u + v) > 0;
    if (!valid) {
      fail(ErrorKind::PreconditionViolated, "K_{u,v} needs 0 <= u, v <= 2, not both 0");
    }
    return ctx.analysis().k[3 * u + v];
  }

  inline MatSet k_set(NilContext const& ctx, int u, int v) {
    return to_matset(ctx, k_ids(ctx, u, v));
  }

  //! 1, 2, or nullopt when undefined.
  inline std::optional<int> super_rank(NilContext const& ctx, Matrix const& a) {
    Id const x = ctx.id_of(a);
    if (x == ctx.zero()) {
      fail(ErrorKind::ZeroElement, "super rank of 0 is not defined");
    }
    return ctx.analysis().super_rank[x];
  }

  inline std::shared_ptr<detail::NilAnalysis> NilContext::analyze() const {
    auto              out = std::make_shared<detail::NilAnalysis>();
    std::size_t const m   = size();
    Bits const        all = all_ids(*_table);
    out->decomposable     = product_set(*_table, all, all);

    out->tat.resize(m);
    out->tat_nonzero.resize(m);
    for (Id a = 0; a < m; ++a) {
      Bits left(m);
      for (Id c = 0; c < m; ++c) {
        left.set(mul(c, a));
      }
      out->tat[a] = product_set(*_table, left, all);
      Bits nz     = out->tat[a];
      nz.reset(_zero);
      out->tat_nonzero[a] = nz.any();
    }

    auto in_depths = [&](Id a, int u, int v) {
      return _prec_depth[a] == u && _ll_depth[a] == v;
    };
    for (auto& k : out->k) {
      k.resize(m);
    }
    for (Id a = 0; a < m; ++a) {
      static constexpr std::pair<int, int> plain[] = {{1, 0}, {0, 1}, {2, 0}, {0, 2}};
      static constexpr std::pair<int, int> mixed[] = {{1, 1}, {2, 1}, {1, 2}};
      for (auto [u, v] : plain) {
        if (in_depths(a, u, v)) {
          out->k[3 * u + v].set(a);
        }
      }
      for (auto [u, v] : mixed) {
        if (in_depths(a, u, v) && out->tat_nonzero[a]) {
          out->k[3 * u + v].set(a);
        }
      }
    }

    Bits const indecomposable = ~out->decomposable;
    Bits const ind1 = indecomposable & (out->k[3] | out->k[1] | out->k[4]);

    // Decomposable elements having a factorization into indecomposables with
    // a factor from `marked`.  P_l: products of l indecomposables, Q_l: those
    // with a marked factor.
    auto with_marked_factor = [&](Bits const& marked) {
      Bits p = indecomposable;
      Bits q = marked;
      Bits hit(m);
      for (int l = 2; l <= r(); ++l) {
        Bits const q_next = product_set(*_table, q, indecomposable)
                          | product_set(*_table, p, marked);
        p = product_set(*_table, p, indecomposable);
        q = q_next;
        hit |= q;
      }
      hit &= out->decomposable;
      hit.reset(_zero);
      return hit;
    };

    Bits const dec1 = with_marked_factor(ind1);
    Bits const supr1 = ind1 | dec1;
    std::set<Bits> supr1_tat;
    for (auto b = supr1.find_first(); b != Bits::npos; b = supr1.find_next(b)) {
      supr1_tat.insert(out->tat[b]);
    }
    for (Id a = 0; a < m; ++a) {
      if (in_depths(a, 2, 2) && out->tat_nonzero[a] && !supr1_tat.count(out->tat[a])) {
        out->k[8].set(a);
      }
    }
    Bits const ind2 = indecomposable & ~ind1
                    & (out->k[6] | out->k[2] | out->k[7] | out->k[5] | out->k[8]);
    Bits const dec2 = with_marked_factor(ind2) & ~dec1;

    out->super_rank.assign(m, std::nullopt);
    for (Id a = 0; a < m; ++a) {
      if (a == _zero) {
        continue;
      }
      if (ind1.test(a) || dec1.test(a)) {
        out->super_rank[a] = 1;
      } else if (ind2.test(a) || dec2.test(a)) {
        out->super_rank[a] = 2;
      }
    }
    return out;
  }

  //! B in T of usual rank `target_rank` with CAD = CBD for all C, D in T^1
  //! not both 1 (equivalently AD = BD and CA = CB for all C, D in T); the
  //! first such B in canonical order.
  inline std::optional<Matrix> lemma20_witness(NilContext const& ctx,
                                               Matrix const&     a,
                                               int               target_rank) {
    Id const x = ctx.id_of(a);
    if (ctx.analysis().decomposable.test(x)) {
      fail(ErrorKind::PreconditionViolated, "element is decomposable");
    }
    std::size_t const m = ctx.size();
    bool              beyond = false;  // T^1 A T^1 differs from {A, 0}
    for (Id c = 0; c < m && !beyond; ++c) {
      Id const l = ctx.mul(c, x);
      Id const r = ctx.mul(x, c);
      beyond     = (l != x && l != ctx.zero()) || (r != x && r != ctx.zero());
    }
    for (auto t = ctx.analysis().tat[x].find_first(); t != Bits::npos && !beyond;
         t = ctx.analysis().tat[x].find_next(t)) {
      beyond = t != x && t != ctx.zero();
    }
    if (!beyond) {
      fail(ErrorKind::PreconditionViolated, "T^1 A T^1 = {A, 0}");
    }
    for (Id b = 0; b < m; ++b) {
      if (ctx.elements().rank_of(b) != target_rank) {
        continue;
      }
      bool same = true;
      for (Id c = 0; c < m && same; ++c) {
        same = ctx.mul(x, c) == ctx.mul(b, c) && ctx.mul(c, x) == ctx.mul(c, b);
      }
      if (same) {
        return ctx[b];
      }
    }
    return std::nullopt;
  }

  struct UStat {
    int                 s = 0;
    std::optional<int>  u;            // nullopt when no cover within the cutoff
    std::vector<Matrix> certificate;  // a cover of size u
    std::size_t         candidates = 0;  // |T(s)|
    std::size_t         targets    = 0;  // |T~(s)|
  };

  //! u(s) for 1 < s < r: the least number of elements of T(s) such that
  //! every B in T~(s) has one of them, C, with CB != 0.
  inline UStat u_statistic(NilContext const& ctx, int s) {
    int const r = ctx.r();
    if (s <= 1 || s >= r) {
      fail(ErrorKind::PreconditionViolated, "u(s) needs 1 < s < r");
    }
    auto const&       an  = ctx.analysis();
    std::size_t const m   = ctx.size();
    Id const          z   = ctx.zero();
    Bits const        rhs = ctx.power(r - s);

    std::vector<Id> cand;
    for (Id a = 0; a < m; ++a) {
      if (an.decomposable.test(a) || an.super_rank[a] != 1) {
        continue;
      }
      Bits left(m);
      if (s == 2) {
        left.set(a);
      } else {
        Bits const lp = ctx.power(s - 2);
        for (auto c = lp.find_first(); c != Bits::npos; c = lp.find_next(c)) {
          left.set(ctx.mul(static_cast<Id>(c), a));
        }
      }
      Bits prod = product_set(ctx.table(), left, rhs);
      prod.reset(z);
      if (prod.any()) {
        cand.push_back(a);
      }
    }

    Bits const      lp = ctx.power(s - 1);
    std::vector<Id> targets;
    for (auto b = rhs.find_first(); b != Bits::npos; b = rhs.find_next(b)) {
      bool hit = false;
      for (auto c = lp.find_first(); c != Bits::npos && !hit; c = lp.find_next(c)) {
        hit = ctx.mul(static_cast<Id>(c), static_cast<Id>(b)) != z;
      }
      if (hit) {
        targets.push_back(static_cast<Id>(b));
      }
    }

    UStat out;
    out.s          = s;
    out.candidates = cand.size();
    out.targets    = targets.size();

    // Cover set of each candidate over target positions; equal cover sets are
    // interchangeable, so only the first candidate of each is kept.
    std::map<Bits, Id>           first_with;
    std::vector<std::pair<Bits, Id>> covers;
    for (Id a : cand) {
      Bits cov(targets.size());
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (ctx.mul(a, targets[t]) != z) {
          cov.set(t);
        }
      }
      if (first_with.emplace(cov, a).second) {
        covers.emplace_back(cov, a);
      }
    }

    int cutoff = 0;
    for (int d : ctx.signature()) {
      cutoff = std::max(cutoff, d);
    }
    ++cutoff;
    std::vector<std::size_t> pick;
    std::function<bool(std::size_t, Bits const&, int)> search
        = [&](std::size_t from, Bits const& covered, int left) -> bool {
      if (covered.all()) {
        return true;
      }
      if (left == 0) {
        return false;
      }
      for (std::size_t i = from; i < covers.size(); ++i) {
        pick.push_back(i);
        if (search(i + 1, covered | covers[i].first, left - 1)) {
          return true;
        }
        pick.pop_back();
      }
      return false;
    };
    for (int size = 1; size <= cutoff; ++size) {
      pick.clear();
      if (search(0, Bits(targets.size()), size)) {
        out.u = size;
        for (auto i : pick) {
          out.certificate.push_back(ctx[covers[i].second]);
        }
        break;
      }
    }
    return out;
  }

  struct Fingerprint {
    std::size_t                size = 0;
    std::vector<std::size_t>   power_sizes;
    std::size_t                right_ann        = 0;  // {A : TA = 0}
    std::size_t                left_ann         = 0;  // {A : AT = 0}
    std::size_t                two_sided_ann    = 0;
    std::size_t                decomposable_count = 0;
    std::size_t                ann_decomposable = 0;  // decomposables in the two-sided annihilator
    std::array<std::size_t, 8> k_sizes{};
    std::vector<std::optional<int>> u_stats;  // s = 2 .. r-1

    static constexpr std::array<std::pair<int, int>, 8> k_order{
        {{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}, {2, 1}, {1, 2}, {2, 2}}};

    friend bool operator==(Fingerprint const&, Fingerprint const&) = default;

    nlohmann::ordered_json to_json() const {
      nlohmann::ordered_json j;
      j["size"]               = size;
      j["power_sizes"]        = power_sizes;
      j["right_ann"]          = right_ann;
      j["left_ann"]           = left_ann;
      j["two_sided_ann"]      = two_sided_ann;
      j["decomposable_count"] = decomposable_count;
      j["ann_decomposable"]   = ann_decomposable;
      nlohmann::ordered_json k;
      for (std::size_t i = 0; i < k_order.size(); ++i) {
        k["K" + std::to_string(k_order[i].first) + std::to_string(k_order[i].second)]
            = k_sizes[i];
      }
      j["K_sizes"] = k;
      nlohmann::ordered_json u = nlohmann::ordered_json::array();
      for (auto const& x : u_stats) {
        u.push_back(x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr));
      }
      j["u_stats"] = u;
      return j;
    }
  };

  inline Fingerprint fingerprint(NilContext const& ctx) {
    Fingerprint       fp;
    std::size_t const m = ctx.size();
    auto const&       an = ctx.analysis();
    fp.size              = m;
    for (int i = 1; i <= ctx.r(); ++i) {
      fp.power_sizes.push_back(ctx.power(i).count());
    }
    Bits two(m);
    for (Id a = 0; a < m; ++a) {
      bool const right = ctx.left_zeros(a).all();   // CA = 0 for all C
      bool const left  = ctx.right_zeros(a).all();  // AC = 0 for all C
      fp.right_ann += right;
      fp.left_ann += left;
      if (right && left) {
        two.set(a);
      }
    }
    fp.two_sided_ann      = two.count();
    fp.decomposable_count = an.decomposable.count();
    fp.ann_decomposable   = (two & an.decomposable).count();
    for (std::size_t i = 0; i < Fingerprint::k_order.size(); ++i) {
      auto [u, v]   = Fingerprint::k_order[i];
      fp.k_sizes[i] = an.k[3 * u + v].count();
    }
    for (int s = 2; s < ctx.r(); ++s) {
      fp.u_stats.push_back(u_statistic(ctx, s).u);
    }
    return fp;
  }

  struct FieldClass {
    bool infinite = false;
    int  q        = 0;  // for finite fields
  };

  enum class IsoAnswer { isomorphic, not_isomorphic, unsupported };

  inline std::string to_string(IsoAnswer a) {
    switch (a) {
      case IsoAnswer::isomorphic:
        return "isomorphic";
      case IsoAnswer::not_isomorphic:
        return "not-isomorphic";
      case IsoAnswer::unsupported:
        return "unsupported";
    }
    return "?";
  }

  //! Whether phi(F1) in M(n1) and phi(F2) in M(n2) are isomorphic, from the
  //! signatures alone.
  inline IsoAnswer iso_decide(FieldClass const& fc,
                              int n1, Signature const& s1,
                              int n2, Signature const& s2) {
    auto check = [](int n, Signature const& s) {
      int total = 0;
      for (int d : s) {
        if (d < 1) {
          fail(ErrorKind::BadSignature, "signature entries must be positive");
        }
        total += d;
      }
      if (s.empty() || total != n) {
        fail(ErrorKind::BadSignature,
             "signature " + text::format(s) + " does not sum to " + std::to_string(n));
      }
    };
    check(n1, s1);
    check(n2, s2);
    if (!fc.infinite && fc.q < 2) {
      fail(ErrorKind::PreconditionViolated, "finite field needs q >= 2");
    }
    auto answer = [](bool b) {
      return b ? IsoAnswer::isomorphic : IsoAnswer::not_isomorphic;
    };
    std::size_t const r = s1.size();
    if (r != s2.size()) {
      return IsoAnswer::not_isomorphic;
    }
    if (r == 1) {
      return IsoAnswer::isomorphic;
    }
    if (r == 2) {
      // zero multiplication: only the size matters
      return answer(fc.infinite || s1[0] * s1[1] == s2[0] * s2[1]);
    }
    if (r == 3) {
      if (n1 != n2) {
        return IsoAnswer::unsupported;
      }
      auto wide = [](Signature const& s) {
        return s[1] == 1 && s[0] > 1 && s[2] > 1;
      };
      if (fc.infinite && wide(s1) && wide(s2)) {
        return IsoAnswer::isomorphic;
      }
      return answer(s1 == s2);
    }
    return answer(s1 == s2);
  }

  //! A -> g A g^-1 with g transporting the first flag onto the second, as a
  //! verified id map between the two tables.
  inline std::vector<Id> iso_construct(NilContext const& c1, NilContext const& c2) {
    Matrix const    g    = flag_transporter(c1.flag(), c2.flag());
    Matrix const    ginv = inverse(g);
    std::vector<Id> f(c1.size());
    for (Id a = 0; a < c1.size(); ++a) {
      f[a] = c2.id_of(g * c1[a] * ginv);
    }
    if (!is_isomorphism(c1.table(), c2.table(), f)) {
      fail(ErrorKind::InternalError, "flag transport did not give an isomorphism");
    }
    return f;
  }

}  // namespace matsemi
