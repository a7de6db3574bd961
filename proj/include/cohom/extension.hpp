#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cohom/cochain.hpp"
#include "cohom/cohomology.hpp"
#include "cohom/error.hpp"
#include "cohom/group.hpp"
#include "cohom/module.hpp"

namespace cohom {

/// Γ = A ⋊^c G with law (a,g)(b,h) = (a + g·b + c(g,h), gh). The element
/// (a, g) has index a·|G| + g, where a is the mixed-radix index of the kernel
/// element (first coordinate most significant).
struct GroupExtension {
  GroupPtr base;
  ModulePtr kernel;
  Cochain cocycle;
  GroupPtr total;
  std::vector<GroupElement> pi;    // Γ -> G
  std::vector<GroupElement> iota;  // kernel index -> Γ

  std::uint64_t kernel_order() const { return iota.size(); }
  GroupElement element(std::uint64_t a_index, GroupElement g) const {
    return static_cast<GroupElement>(a_index * base->order() + g);
  }
  std::uint64_t kernel_index(GroupElement x) const { return x / base->order(); }
  ModuleElement kernel_part(GroupElement x) const { return kernel->element_at(kernel_index(x)); }
};

namespace detail {

inline std::string coords(const ModuleElement& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s;
}

inline std::string kernel_label(const ModuleElement& a, const std::string& g) {
  return "(" + coords(a) + ";" + g + ")";
}

}  // namespace detail

/// Builds the extension group from a normalized 2-cocycle. A non-cocycle is
/// rejected with a triple (g, h, k) at which associativity of
/// (0,g), (0,h), (0,k) fails; those elements have Γ-indices g, h, k.
inline GroupExtension build_extension(const ModulePtr& a, const Cochain& c, const Limits& limits = {},
                                      std::uint64_t seed = 0) {
  if (!a->is_torsion()) throw Error(ErrorKind::KernelNotFinite, "extension kernel must be finite");
  if (c.degree() != 2) throw Error(ErrorKind::DegreeMismatch, "extension cocycle must have degree 2");
  if (!same_module(c.module(), a)) throw Error(ErrorKind::ModuleMismatch, "cocycle must take values in the kernel");
  if (auto chk = is_cocycle(c, limits.max_cochain_entries); !chk)
    throw Error(ErrorKind::NotACocycle,
                "group law is not associative at (" + a->group()->label(chk.witness[0]) + "," +
                    a->group()->label(chk.witness[1]) + "," + a->group()->label(chk.witness[2]) + ")",
                {chk.witness.begin(), chk.witness.end()});

  const auto& g = *a->group();
  const std::uint64_t ng = g.order();
  const auto card = a->cardinality();
  std::uint64_t order = 0, entries = 0;
  if (!card || __builtin_mul_overflow(*card, ng, &order) || __builtin_mul_overflow(order, order, &entries) ||
      entries > limits.max_table_entries || order > std::numeric_limits<GroupElement>::max())
    throw Error(ErrorKind::ResourceLimit, "extension group would be too large for a multiplication table");
  const std::uint64_t na = *card;
  const std::size_t k = a->rank();

  // Kernel arithmetic on indices.
  std::vector<std::int64_t> elems(na * k);
  for (std::uint64_t i = 0; i < na; ++i) a->element_at(i, std::span(elems).subspan(i * k, k));
  std::vector<std::uint64_t> act(ng * na);
  {
    ModuleElement out(k);
    for (GroupElement x = 0; x < ng; ++x)
      for (std::uint64_t i = 0; i < na; ++i) {
        a->act_into(x, ElementView(elems).subspan(i * k, k), out);
        act[x * na + i] = a->index_of(out);
      }
  }
  std::vector<std::uint64_t> cidx(ng * ng);
  for (GroupElement x = 0; x < ng; ++x)
    for (GroupElement y = 0; y < ng; ++y) {
      const GroupElement t[2] = {x, y};
      cidx[x * ng + y] = a->index_of(c.at(t));
    }
  const bool small = na * na <= (std::uint64_t{1} << 22);
  std::vector<std::uint64_t> addt;
  ModuleElement sum(k);
  auto add_idx = [&](std::uint64_t i, std::uint64_t j) -> std::uint64_t {
    if (small) return addt[i * na + j];
    for (std::size_t r = 0; r < k; ++r) {
      const std::int64_t d = a->factors()[r];
      const std::int64_t s = elems[i * k + r] + elems[j * k + r];
      sum[r] = s >= d ? s - d : s;
    }
    return a->index_of(sum);
  };
  if (small) {
    addt.resize(na * na);
    for (std::uint64_t i = 0; i < na; ++i)
      for (std::uint64_t j = 0; j < na; ++j) {
        for (std::size_t r = 0; r < k; ++r) {
          const std::int64_t d = a->factors()[r];
          const std::int64_t s = elems[i * k + r] + elems[j * k + r];
          sum[r] = s >= d ? s - d : s;
        }
        addt[i * na + j] = a->index_of(sum);
      }
  }

  std::vector<GroupElement> table(order * order);
  for (std::uint64_t x = 0; x < order; ++x) {
    const std::uint64_t ax = x / ng;
    const GroupElement gx = static_cast<GroupElement>(x % ng);
    for (std::uint64_t y = 0; y < order; ++y) {
      const std::uint64_t ay = y / ng;
      const GroupElement gy = static_cast<GroupElement>(y % ng);
      const std::uint64_t s = add_idx(add_idx(ax, act[gx * na + ay]), cidx[gx * ng + gy]);
      table[x * order + y] = static_cast<GroupElement>(s * ng + g.mul(gx, gy));
    }
  }
  std::vector<std::string> labels(order);
  for (std::uint64_t x = 0; x < order; ++x) {
    const auto gl = g.label(static_cast<GroupElement>(x % ng));
    labels[x] = k == 0 ? gl : detail::kernel_label(a->element_at(x / ng), gl);
  }

  GroupExtension e;
  e.base = a->group();
  e.kernel = a;
  e.cocycle = c;
  e.total = make_group_unchecked(std::move(table), std::move(labels));
  // Associativity is implied by δc = 0; re-checked as a guard.
  std::uint64_t cube = 0;
  const bool exhaustive = !__builtin_mul_overflow(entries, order, &cube) && cube <= limits.exhaustive_threshold;
  if (auto w = detail::find_nonassociative(*e.total, exhaustive ? AssociativityCheck::Exhaustive
                                                                 : AssociativityCheck::Sampled,
                                           std::min<std::uint64_t>(limits.samples, 100'000), seed))
    throw Error(ErrorKind::NotAssociative, "internal: extension table is not associative", {(*w)[0], (*w)[1], (*w)[2]});
  e.pi.resize(order);
  for (std::uint64_t x = 0; x < order; ++x) e.pi[x] = static_cast<GroupElement>(x % ng);
  e.iota.resize(na);
  for (std::uint64_t i = 0; i < na; ++i) e.iota[i] = static_cast<GroupElement>(i * ng);
  return e;
}

/// M as a Γ-module on which the kernel acts trivially.
inline ModulePtr lift_module(const GroupExtension& e, const ModulePtr& m) {
  return pullback_module(m, e.total, e.pi);
}

/// π*ω = ω∘π^{×n}, with coefficients re-wrapped as a Γ-module.
inline Cochain lift_cochain(const GroupExtension& e, const Cochain& w, const ModulePtr& lifted = nullptr,
                            std::uint64_t limit = kDefaultCochainLimit) {
  if (w.group() != e.base && w.group()->table() != e.base->table())
    throw Error(ErrorKind::GroupMismatch, "cochain is not on the extension's base group");
  ModulePtr mg = lifted ? lifted : lift_module(e, w.module());
  const std::size_t n = w.degree();
  const std::uint64_t per = e.kernel_order();
  // Only tuples whose images are all non-identity can be nonzero.
  std::uint64_t count = w.stored(), entries = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (__builtin_mul_overflow(count, per, &count)) throw Error(ErrorKind::ResourceLimit, "lifted cochain too large");
  if (__builtin_mul_overflow(count, std::max<std::size_t>(w.width(), 1), &entries) || entries > limit)
    throw Error(ErrorKind::ResourceLimit, "lifted cochain too large");
  Cochain out(mg, n);
  const auto ng = e.base->order();
  w.for_each_nonzero([&](std::uint64_t key, ElementView v) {
    const Tuple t = w.decode(key);
    Tuple lt(n);
    std::vector<std::uint64_t> ai(n, 0);
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) lt[i] = static_cast<GroupElement>(ai[i] * ng + t[i]);
      out.set_key(*out.key_of(lt), v);
      std::size_t i = n;
      while (i > 0 && ++ai[i - 1] == per) ai[--i] = 0;
      if (i == 0) break;
    }
  });
  return out;
}

/// The finite abelian group underlying a finite module, with element order
/// matching GModule::index_of.
inline GroupPtr kernel_group(const ModulePtr& a, const Limits& limits = {}) {
  const auto card = a->cardinality();
  std::uint64_t entries = 0;
  if (!card || __builtin_mul_overflow(*card, *card, &entries) || entries > limits.max_table_entries)
    throw Error(ErrorKind::ResourceLimit, "kernel group too large for a multiplication table");
  const std::uint64_t na = *card;
  std::vector<GroupElement> table(na * na);
  std::vector<std::string> labels(na);
  for (std::uint64_t i = 0; i < na; ++i) {
    const auto x = a->element_at(i);
    labels[i] = "(" + detail::coords(x) + ")";
    for (std::uint64_t j = 0; j < na; ++j) table[i * na + j] = static_cast<GroupElement>(a->index_of(a->add(x, a->element_at(j))));
  }
  return make_group_unchecked(std::move(table), std::move(labels));
}

/// ι*α = α∘ι^{×n} as a cochain of the kernel group with trivial action.
inline Cochain restrict_cochain(const GroupExtension& e, const Cochain& alpha, const GroupPtr& kgroup) {
  if (alpha.group() != e.total && alpha.group()->table() != e.total->table())
    throw Error(ErrorKind::GroupMismatch, "cochain is not on the extension group");
  auto m = with_trivial_action(alpha.module(), kgroup);
  const std::size_t n = alpha.degree();
  Cochain out(m, n);
  Tuple lt(n);
  std::uint64_t key = 0;
  for (TupleOdometer it(kgroup->order(), n); !it.done(); it.next(), ++key) {
    for (std::size_t i = 0; i < n; ++i) lt[i] = e.iota[it.tuple()[i]];
    auto v = alpha.at(lt);
    if (!m->is_zero(v)) out.set_key(key, v);
  }
  return out;
}

}  // namespace cohom
