#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cohom/error.hpp"
#include "cohom/group.hpp"
#include "cohom/module.hpp"

namespace cohom {

using Tuple = std::vector<GroupElement>;
using TupleView = std::span<const GroupElement>;

/// (|G|-1)^n, the number of non-identity n-tuples. Throws ResourceLimit if it
/// does not fit in 64 bits.
inline std::uint64_t tuple_count(std::size_t order, std::size_t n) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (__builtin_mul_overflow(c, static_cast<std::uint64_t>(order - 1), &c))
      throw Error(ErrorKind::ResourceLimit, "tuple count overflows 64 bits");
  return c;
}

/// Steps through non-identity n-tuples in lexicographic order.
class TupleOdometer {
 public:
  TupleOdometer(std::size_t order, std::size_t n) : order_(order), t_(n, 1), done_(order <= 1 && n > 0) {}
  bool done() const noexcept { return done_; }
  const Tuple& tuple() const noexcept { return t_; }
  void next() {
    for (std::size_t i = t_.size(); i-- > 0;) {
      if (++t_[i] < order_) return;
      t_[i] = 1;
    }
    done_ = true;
  }

 private:
  std::size_t order_;
  Tuple t_;
  bool done_;
};

/// Normalized n-cochain with values in a G-module. Values are stored sparsely,
/// keyed by the lexicographic index of the non-identity tuple; tuples that
/// contain the identity cannot be stored and evaluate to zero.
class Cochain {
 public:
  Cochain() = default;
  Cochain(ModulePtr coeffs, std::size_t degree) : module_(std::move(coeffs)), degree_(degree) {
    base_ = module_->group()->order() - 1;
    tuple_count(module_->group()->order(), degree_);
  }

  const GroupPtr& group() const noexcept { return module_->group(); }
  const ModulePtr& module() const noexcept { return module_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t width() const noexcept { return module_->rank(); }

  /// Index of a non-identity tuple; nullopt if any entry is the identity.
  std::optional<std::uint64_t> key_of(TupleView t) const noexcept {
    std::uint64_t k = 0;
    for (auto g : t) {
      if (g == 0) return std::nullopt;
      k = k * base_ + (g - 1);
    }
    return k;
  }
  Tuple decode(std::uint64_t key) const {
    Tuple t(degree_);
    for (std::size_t i = degree_; i-- > 0;) {
      t[i] = static_cast<GroupElement>(key % base_ + 1);
      key /= base_;
    }
    return t;
  }

  /// Value at a tuple (zero view if absent or not normalized). No checks.
  ElementView at(TupleView t) const noexcept {
    auto k = key_of(t);
    if (!k) return module_->zero_view();
    return at_key(*k);
  }
  ElementView at_key(std::uint64_t key) const noexcept {
    auto it = slots_.find(key);
    if (it == slots_.end()) return module_->zero_view();
    return {data_.data() + it->second * width(), width()};
  }

  ModuleElement evaluate(TupleView t) const {
    if (t.size() != degree_)
      throw Error(ErrorKind::DegreeMismatch, "tuple of length " + std::to_string(t.size()) + " for a degree " +
                                                 std::to_string(degree_) + " cochain");
    const auto order = group()->order();
    for (auto g : t)
      if (g >= order) throw Error(ErrorKind::IndexOutOfRange, "tuple entry out of range", {g});
    auto v = at(t);
    return {v.begin(), v.end()};
  }

  void set(TupleView t, ElementView value) {
    if (t.size() != degree_) throw Error(ErrorKind::DegreeMismatch, "tuple length does not match degree");
    const auto order = group()->order();
    for (auto g : t)
      if (g >= order) throw Error(ErrorKind::IndexOutOfRange, "tuple entry out of range", {g});
    auto k = key_of(t);
    if (!k) {
      if (module_->is_zero(ModuleElement(module_->reduced({value.begin(), value.end()})))) return;
      throw Error(ErrorKind::InvalidArgument, "normalized cochains vanish on tuples containing the identity");
    }
    set_key(*k, value);
  }

  /// Stores value (reduced) at a key.
  void set_key(std::uint64_t key, ElementView value) {
    if (value.size() != width()) throw Error(ErrorKind::ModuleMismatch, "value has wrong number of coordinates");
    std::int64_t* dst = slot(key);
    for (std::size_t i = 0; i < width(); ++i) dst[i] = reduce_mod(value[i], module_->factors()[i]);
  }

  /// Mutable storage for a key (created as zero). The caller keeps it reduced.
  std::int64_t* slot(std::uint64_t key) {
    auto [it, inserted] = slots_.try_emplace(key, slots_.size());
    if (inserted) data_.resize(data_.size() + width(), 0);
    return data_.data() + it->second * width();
  }

  void reserve(std::size_t n) {
    slots_.reserve(n);
    data_.reserve(n * width());
  }

  /// Calls f(key, value) for every stored nonzero value, in key order.
  template <class F>
  void for_each_nonzero(F&& f) const {
    std::vector<std::pair<std::uint64_t, std::size_t>> order(slots_.begin(), slots_.end());
    std::sort(order.begin(), order.end());
    for (auto [key, s] : order) {
      ElementView v{data_.data() + s * width(), width()};
      if (!module_->is_zero(v)) f(key, v);
    }
  }

  std::size_t stored() const noexcept { return slots_.size(); }
  bool is_zero() const {
    for (auto v : data_)
      if (v != 0) return false;
    return true;
  }

  /// Drops zero values and compacts storage.
  void prune() {
    Cochain out(module_, degree_);
    for_each_nonzero([&](std::uint64_t k, ElementView v) { out.set_key(k, v); });
    *this = std::move(out);
  }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    if (a.degree_ != b.degree_ || !same_module(a.module_, b.module_)) return false;
    bool eq = true;
    a.for_each_nonzero([&](std::uint64_t k, ElementView v) {
      auto w = b.at_key(k);
      if (!std::equal(v.begin(), v.end(), w.begin())) eq = false;
    });
    b.for_each_nonzero([&](std::uint64_t k, ElementView v) {
      auto w = a.at_key(k);
      if (!std::equal(v.begin(), v.end(), w.begin())) eq = false;
    });
    return eq;
  }

 private:
  ModulePtr module_;
  std::size_t degree_ = 0;
  std::uint64_t base_ = 1;
  std::unordered_map<std::uint64_t, std::size_t> slots_;
  std::vector<std::int64_t> data_;
};

/// (δf)(g_1..g_{n+1}) for any evaluator `f(TupleView) -> ElementView` of a
/// normalized n-cochain, written to `out` (reduced). `scratch` must hold n
/// entries; `tmp` must hold module->rank() entries.
template <class Eval>
void coboundary_at(const FiniteGroup& g, const GModule& m, std::size_t n, Eval&& f, TupleView t,
                   std::span<std::int64_t> out, Tuple& scratch, std::span<std::int64_t> tmp) {
  std::fill(out.begin(), out.end(), 0);
  scratch.resize(n);
  // g_1 · f(g_2..g_{n+1})
  {
    std::copy(t.begin() + 1, t.end(), scratch.begin());
    auto v = f(TupleView(scratch));
    if (!m.is_zero(v)) {
      m.act_into(t[0], v, tmp);
      m.accumulate(out, tmp, 1);
    }
  }
  // (-1)^i f(.., g_i g_{i+1}, ..)
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t w = 0;
    for (std::size_t j = 0; j < i - 1; ++j) scratch[w++] = t[j];
    scratch[w++] = g.mul(t[i - 1], t[i]);
    for (std::size_t j = i + 1; j <= n; ++j) scratch[w++] = t[j];
    auto v = f(TupleView(scratch));
    m.accumulate(out, v, (i % 2) ? -1 : 1);
  }
  // (-1)^{n+1} f(g_1..g_n)
  {
    std::copy(t.begin(), t.begin() + n, scratch.begin());
    auto v = f(TupleView(scratch));
    m.accumulate(out, v, ((n + 1) % 2) ? -1 : 1);
  }
  m.reduce(out);
}

inline ModuleElement coboundary_at(const Cochain& f, TupleView t) {
  if (t.size() != f.degree() + 1) throw Error(ErrorKind::DegreeMismatch, "tuple length must be degree + 1");
  ModuleElement out(f.width()), tmp(f.width());
  Tuple scratch;
  coboundary_at(*f.group(), *f.module(), f.degree(), [&](TupleView s) { return f.at(s); }, t, out, scratch, tmp);
  return out;
}

inline void check_cochain_size(const ModulePtr& m, std::size_t n, std::uint64_t limit) {
  const std::uint64_t count = tuple_count(m->group()->order(), n);
  std::uint64_t entries = 0;
  if (__builtin_mul_overflow(count, std::max<std::uint64_t>(m->rank(), 1), &entries) || entries > limit)
    throw Error(ErrorKind::ResourceLimit, "degree " + std::to_string(n) + " cochain space has " +
                                              std::to_string(count) + " tuples, over the configured limit");
}

inline constexpr std::uint64_t kDefaultCochainLimit = 10'000'000;

inline Cochain coboundary(const Cochain& f, std::uint64_t limit = kDefaultCochainLimit) {
  const auto& m = *f.module();
  const auto& g = *f.group();
  check_cochain_size(f.module(), f.degree() + 1, limit);
  Cochain out(f.module(), f.degree() + 1);
  if (f.is_zero()) return out;
  ModuleElement v(f.width()), tmp(f.width());
  Tuple scratch;
  std::uint64_t key = 0;
  for (TupleOdometer it(g.order(), f.degree() + 1); !it.done(); it.next(), ++key) {
    coboundary_at(g, m, f.degree(), [&](TupleView s) { return f.at(s); }, it.tuple(), v, scratch, tmp);
    if (!m.is_zero(v)) out.set_key(key, v);
  }
  return out;
}

struct CocycleCheck {
  bool ok = true;
  Tuple witness;  // a tuple where δf is nonzero
  explicit operator bool() const noexcept { return ok; }
};

inline CocycleCheck is_cocycle(const Cochain& f, std::uint64_t limit = kDefaultCochainLimit) {
  const auto& m = *f.module();
  const auto& g = *f.group();
  check_cochain_size(f.module(), f.degree() + 1, limit);
  if (f.is_zero()) return {};
  ModuleElement v(f.width()), tmp(f.width());
  Tuple scratch;
  for (TupleOdometer it(g.order(), f.degree() + 1); !it.done(); it.next()) {
    coboundary_at(g, m, f.degree(), [&](TupleView s) { return f.at(s); }, it.tuple(), v, scratch, tmp);
    if (!m.is_zero(v)) return {false, it.tuple()};
  }
  return {};
}

namespace detail {
inline void require_compatible(const Cochain& a, const Cochain& b) {
  if (a.degree() != b.degree()) throw Error(ErrorKind::DegreeMismatch, "cochains of different degrees");
  if (!same_module(a.module(), b.module())) throw Error(ErrorKind::ModuleMismatch, "cochains in different modules");
}
}  // namespace detail

/// a + s*b
inline Cochain combine(const Cochain& a, const Cochain& b, std::int64_t s) {
  detail::require_compatible(a, b);
  Cochain out = a;
  const auto& m = *a.module();
  b.for_each_nonzero([&](std::uint64_t k, ElementView v) {
    std::int64_t* dst = out.slot(k);
    std::span<std::int64_t> d{dst, out.width()};
    m.accumulate(d, v, s);
    m.reduce(d);
  });
  return out;
}
inline Cochain operator+(const Cochain& a, const Cochain& b) { return combine(a, b, 1); }
inline Cochain operator-(const Cochain& a, const Cochain& b) { return combine(a, b, -1); }
inline Cochain scale(std::int64_t s, const Cochain& a) {
  Cochain out(a.module(), a.degree());
  const auto& m = *a.module();
  a.for_each_nonzero([&](std::uint64_t k, ElementView v) { out.set_key(k, m.scale(s, v)); });
  return out;
}
inline Cochain operator-(const Cochain& a) { return scale(-1, a); }

/// Applies a module map valuewise.
inline Cochain map_cochain(const ModuleMap& f, const Cochain& a) {
  if (!same_module(f.source, a.module())) throw Error(ErrorKind::ModuleMismatch, "map source differs from coefficients");
  Cochain out(f.target, a.degree());
  a.for_each_nonzero([&](std::uint64_t k, ElementView v) {
    auto w = f.apply(v);
    if (!f.target->is_zero(w)) out.set_key(k, w);
  });
  return out;
}

/// Same values, reinterpreted over an identical module object.
inline Cochain rebind(const Cochain& a, ModulePtr m) {
  if (m->factors() != a.module()->factors()) throw Error(ErrorKind::ModuleMismatch, "cannot rebind to different factors");
  Cochain out(std::move(m), a.degree());
  a.for_each_nonzero([&](std::uint64_t k, ElementView v) { out.set_key(k, v); });
  return out;
}

/// Random normalized cochain; free coordinates are drawn from [-bound, bound].
inline Cochain random_cochain(const ModulePtr& m, std::size_t n, std::mt19937_64& rng, std::int64_t bound = 3,
                              std::uint64_t limit = kDefaultCochainLimit) {
  check_cochain_size(m, n, limit);
  Cochain out(m, n);
  const auto& d = m->factors();
  const std::uint64_t count = tuple_count(m->group()->order(), n);
  ModuleElement v(m->rank());
  for (std::uint64_t key = 0; key < count; ++key) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (d[i] == 0) {
        v[i] = std::uniform_int_distribution<std::int64_t>(-bound, bound)(rng);
      } else {
        v[i] = std::uniform_int_distribution<std::int64_t>(0, d[i] - 1)(rng);
      }
    }
    if (!m->is_zero(v)) out.set_key(key, v);
  }
  return out;
}

/// Degree-0 cochain with the given value.
inline Cochain constant_cochain(const ModulePtr& m, ElementView v) {
  Cochain out(m, 0);
  out.set_key(0, v);
  return out;
}

}  // namespace cohom
