#pragma once

#include <deque>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohom/builtin_groups.hpp"
#include "cohom/certificate.hpp"
#include "cohom/trivializer.hpp"

namespace cohom {

using json = nlohmann::json;

inline constexpr const char* kCertificateFormat = "cocycle-certificate/1";

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

inline const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) parse_fail(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

inline std::int64_t as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

inline IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) parse_fail("matrix must have " + std::to_string(rows) + " rows");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) parse_fail("matrix row must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = as_int(j[i][c], "matrix entry");
  }
  return m;
}

inline json matrix_to_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    out.push_back(row);
  }
  return out;
}

inline GroupElement element_from_json(const FiniteGroup& g, const json& j) {
  if (j.is_string()) {
    auto e = g.find(j.get<std::string>());
    if (!e) parse_fail("unknown group element \"" + j.get<std::string>() + "\"");
    return *e;
  }
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    auto i = j.get<std::uint64_t>();
    if (i >= g.order()) throw Error(ErrorKind::IndexOutOfRange, "element index out of range", {i});
    return static_cast<GroupElement>(i);
  }
  parse_fail("group elements are labels or indices");
}

inline SweepReport sweep_from_json(const json& j) {
  SweepReport r;
  if (j.is_null()) return r;
  r.mode = j.value("mode", "");
  r.seed = j.value("seed", std::uint64_t{0});
  r.checked = j.value("checked", std::uint64_t{0});
  r.ok = j.value("ok", false);
  return r;
}

}  // namespace detail

// ---- groups

inline json group_to_json(const FiniteGroup& g) {
  json t = json::array();
  for (GroupElement a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (GroupElement b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    t.push_back(row);
  }
  return {{"order", g.order()}, {"elements", g.labels()}, {"table", t}};
}

/// A builtin name ("cyclic:4"), {"builtin": name}, or an explicit table.
inline GroupPtr group_from_json(const json& j) {
  if (j.is_string()) return builtin_group(j.get<std::string>());
  if (j.is_object() && j.contains("builtin")) return builtin_group(j.at("builtin").get<std::string>());
  const json& t = detail::field(j, "table");
  if (!t.is_array()) detail::parse_fail("table must be an array");
  std::vector<std::vector<std::size_t>> table;
  for (const auto& row : t) {
    if (!row.is_array()) detail::parse_fail("table rows must be arrays");
    std::vector<std::size_t> r;
    for (const auto& x : row) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0) detail::parse_fail("table entries must be non-negative integers");
      r.push_back(x.get<std::size_t>());
    }
    table.push_back(std::move(r));
  }
  if (j.contains("order") && detail::as_int(j.at("order"), "order") != static_cast<std::int64_t>(table.size()))
    detail::parse_fail("order does not match the table");
  std::vector<std::string> labels;
  if (j.contains("elements")) labels = j.at("elements").get<std::vector<std::string>>();
  return group_from_table(table, labels);
}

// ---- modules

inline json module_to_json(const GModule& m, bool with_group = true) {
  json out;
  if (with_group) out["group"] = group_to_json(*m.group());
  out["factors"] = m.factors();
  if (!m.is_trivial_action()) {
    json act = json::object();
    for (GroupElement x = 0; x < m.group()->order(); ++x)
      act[m.group()->label(x)] = detail::matrix_to_json(m.action(x));
    out["action"] = act;
  }
  return out;
}

/// Module from JSON. The action may be given on every element or only on a
/// generating set; the rest is filled in by products and then validated.
inline Presentation module_presentation_from_json(const json& j, GroupPtr implied = nullptr) {
  GroupPtr g = implied;
  if (j.contains("group")) {
    GroupPtr own = group_from_json(j.at("group"));
    if (g && g->table() != own->table()) throw Error(ErrorKind::GroupMismatch, "module group differs from context");
    if (!g) g = own;
  }
  if (!g) detail::parse_fail("module needs a group");
  std::vector<std::int64_t> factors;
  for (const auto& d : detail::field(j, "factors")) factors.push_back(detail::as_int(d, "factor"));
  const std::size_t k = factors.size();
  if (!j.contains("action")) return make_module_presented(g, factors);

  const json& act = j.at("action");
  if (!act.is_object()) detail::parse_fail("action must map element labels to matrices");
  std::vector<std::optional<IntMatrix>> rho(g->order());
  std::vector<GroupElement> gens;
  for (auto it = act.begin(); it != act.end(); ++it) {
    auto e = g->find(it.key());
    if (!e) detail::parse_fail("unknown group element \"" + it.key() + "\" in action");
    rho[*e] = detail::reduce_rows(detail::matrix_from_json(it.value(), k, k), factors);
    gens.push_back(*e);
  }
  if (!rho[0]) rho[0] = IntMatrix::identity(k);
  std::deque<GroupElement> queue;
  for (GroupElement x = 0; x < g->order(); ++x)
    if (rho[x]) queue.push_back(x);
  while (!queue.empty()) {
    const GroupElement x = queue.front();
    queue.pop_front();
    for (auto s : gens) {
      const GroupElement y = g->mul(x, s);
      if (rho[y]) continue;
      rho[y] = detail::reduce_rows(*rho[x] * *rho[s], factors);
      queue.push_back(y);
    }
  }
  std::vector<IntMatrix> full;
  for (GroupElement x = 0; x < g->order(); ++x) {
    if (!rho[x]) detail::parse_fail("action does not determine the matrix of " + g->label(x));
    full.push_back(*rho[x]);
  }
  return make_module_presented(g, factors, std::move(full));
}

inline ModulePtr module_from_json(const json& j, GroupPtr implied = nullptr) {
  return module_presentation_from_json(j, std::move(implied)).module;
}

// ---- cochains

inline json tuple_to_json(const FiniteGroup& g, const Tuple& t) {
  json out = json::array();
  for (auto x : t) out.push_back(g.label(x));
  return out;
}

inline json cochain_to_json(const Cochain& f, bool with_module = false) {
  json vals = json::array();
  f.for_each_nonzero([&](std::uint64_t k, ElementView v) {
    vals.push_back({{"tuple", tuple_to_json(*f.group(), f.decode(k))}, {"value", std::vector<std::int64_t>(v.begin(), v.end())}});
  });
  json out{{"degree", f.degree()}, {"values", vals}};
  if (with_module) out["module"] = module_to_json(*f.module(), true);
  return out;
}

namespace detail {

template <class ValueFn>
Cochain cochain_values_from_json(const json& j, const ModulePtr& m, ValueFn&& value_of) {
  const auto n = static_cast<std::size_t>(as_int(field(j, "degree"), "degree"));
  if (as_int(field(j, "degree"), "degree") < 0) parse_fail("degree must be non-negative");
  Cochain f(m, n);
  const auto& g = *m->group();
  std::vector<std::uint64_t> seen;
  for (const auto& e : field(j, "values")) {
    const json& tj = field(e, "tuple");
    if (!tj.is_array()) parse_fail("tuple must be an array");
    if (tj.size() != n)
      throw Error(ErrorKind::DegreeMismatch, "tuple of length " + std::to_string(tj.size()) + " in a degree " +
                                                 std::to_string(n) + " cochain");
    Tuple t;
    for (const auto& x : tj) t.push_back(element_from_json(g, x));
    auto key = f.key_of(t);
    if (!key) throw Error(ErrorKind::InvalidArgument, "tuple contains the identity; cochains are normalized", {t.begin(), t.end()});
    if (std::find(seen.begin(), seen.end(), *key) != seen.end()) parse_fail("duplicate tuple in cochain");
    seen.push_back(*key);
    ModuleElement v = value_of(e);
    if (v.size() != m->rank())
      throw Error(ErrorKind::ModuleMismatch, "value has " + std::to_string(v.size()) + " coordinates, module rank is " +
                                                 std::to_string(m->rank()));
    f.set_key(*key, v);
  }
  f.prune();
  return f;
}

}  // namespace detail

/// Cochain from JSON; values are in invariant-factor coordinates of the
/// module (embedded under "module", or supplied by the caller).
inline Cochain cochain_from_json(const json& j, ModulePtr m = nullptr, GroupPtr group = nullptr) {
  if (!m) {
    if (!j.contains("module")) detail::parse_fail("cochain needs a module");
    m = module_from_json(j.at("module"), group);
  }
  return detail::cochain_values_from_json(j, m, [](const json& e) {
    ModuleElement v;
    for (const auto& x : detail::field(e, "value")) v.push_back(detail::as_int(x, "value entry"));
    return v;
  });
}

/// Hom-valued cochains are written as one k_M x k_A matrix per tuple.
inline json hom_cochain_to_json(const HomModule& h, const Cochain& b, bool with_modules = false) {
  json vals = json::array();
  b.for_each_nonzero([&](std::uint64_t k, ElementView v) {
    vals.push_back({{"tuple", tuple_to_json(*b.group(), b.decode(k))}, {"matrix", detail::matrix_to_json(h.to_matrix(v))}});
  });
  json out{{"degree", b.degree()}, {"values", vals}};
  if (with_modules) {
    out["source"] = module_to_json(*h.source, true);
    out["target"] = module_to_json(*h.target, false);
  }
  return out;
}

inline Cochain hom_cochain_from_json(const json& j, const HomModule& h) {
  return detail::cochain_values_from_json(j, h.module(), [&](const json& e) {
    return h.from_matrix(detail::matrix_from_json(detail::field(e, "matrix"), h.target->rank(), h.source->rank()));
  });
}

// ---- certificates

namespace detail {

inline json sweep_to_json(const SweepReport& r) {
  if (r.mode.empty() || r.mode == "absent") return nullptr;
  return {{"mode", r.mode}, {"seed", r.seed}, {"checked", r.checked}, {"ok", r.ok}};
}

inline json torsion_body(const TorsionCertificate& c) {
  json out;
  out["N"] = c.N;
  out["kernel"] = module_to_json(*c.kernel.module, false);
  out["c"] = cochain_to_json(c.kernel.cocycle);
  out["b"] = hom_cochain_to_json(*c.hom, c.b);
  out["gamma"] = {{"order", c.gamma()->order()},
                  {"kernel_order", c.extension->kernel_order()},
                  {"index", "a*|G|+g, kernel coordinates mixed radix, first most significant"}};
  out["alpha"] = c.alpha ? cochain_to_json(*c.alpha) : json(nullptr);
  out["alpha_source"] = c.alpha_source;
  out["partial"] = c.partial;
  out["verification"] = sweep_to_json(c.verification);
  out["restriction"] = sweep_to_json(c.restriction);
  return out;
}

/// Rebuilds a torsion certificate around a given ω. The extension group is
/// recomputed from (A, c); if that fails the certificate is returned without
/// it so that verification can report the failure.
inline TorsionCertificate torsion_from_body(const json& j, const Cochain& omega, const Limits& limits) {
  TorsionCertificate c;
  c.omega = omega;
  c.N = as_int(field(j, "N"), "N");
  if (c.N < 1) parse_fail("N must be positive");
  c.kernel.N = c.N;
  c.kernel.module = module_from_json(field(j, "kernel"), omega.group());
  c.kernel.cocycle = cochain_from_json(field(j, "c"), c.kernel.module);
  c.hom = std::make_shared<const HomModule>(hom_module(c.kernel.module, omega.module()));
  c.b = hom_cochain_from_json(field(j, "b"), *c.hom);
  c.alpha_source = j.value("alpha_source", "none");
  c.partial = j.value("partial", false);
  c.verification = sweep_from_json(j.value("verification", json(nullptr)));
  c.restriction = sweep_from_json(j.value("restriction", json(nullptr)));
  try {
    c.extension = std::make_shared<const GroupExtension>(build_extension(c.kernel.module, c.kernel.cocycle, limits));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ResourceLimit) throw;
    return c;
  }
  c.lifted = lift_module(*c.extension, omega.module());
  if (j.contains("alpha") && !j.at("alpha").is_null())
    c.alpha = std::make_shared<const Cochain>(cochain_from_json(j.at("alpha"), c.lifted));
  return c;
}

inline json input_json(const Cochain& w) {
  return {{"group", group_to_json(*w.group())},
          {"module", module_to_json(*w.module(), false)},
          {"degree", w.degree()},
          {"omega", cochain_to_json(w)}};
}

inline Cochain input_from_json(const json& j) {
  const json& in = field(j, "input");
  auto g = group_from_json(field(in, "group"));
  auto m = module_from_json(field(in, "module"), g);
  auto w = cochain_from_json(field(in, "omega"), m);
  if (in.contains("degree") && as_int(in.at("degree"), "degree") != static_cast<std::int64_t>(w.degree()))
    throw Error(ErrorKind::DegreeMismatch, "input degree does not match omega");
  return w;
}

}  // namespace detail

inline json certificate_to_json(const TorsionCertificate& c, std::uint64_t seed = 0) {
  json out = detail::torsion_body(c);
  out["format"] = kCertificateFormat;
  out["mode"] = "torsion";
  out["input"] = detail::input_json(c.omega);
  out["stages"] = json::array();
  if (out["verification"].is_null()) out["verification"] = {{"mode", "absent"}, {"seed", seed}, {"checked", 0}};
  return out;
}

inline json certificate_to_json(const GeneralCertificate& c, std::uint64_t seed = 0) {
  json out;
  out["format"] = kCertificateFormat;
  out["mode"] = "general";
  out["input"] = detail::input_json(c.omega);
  out["free_reduction"] = {{"rank", c.split.quotient->rank()},
                           {"denominator", c.h.denominator},
                           {"h", cochain_to_json(c.h.numerator)},
                           {"h_bar", cochain_to_json(c.h_bar)}};
  out["first"] = detail::torsion_body(c.first);
  out["correction"] = {{"rho_lift", cochain_to_json(c.rho_lift)},
                       {"eta", cochain_to_json(c.eta)},
                       {"eta_tilde", cochain_to_json(c.eta_tilde)},
                       {"beta", cochain_to_json(c.beta)}};
  out["second"] = detail::torsion_body(c.second);
  out["gamma"] = {{"order", c.gamma()->order()}};
  out["alpha"] = c.alpha ? cochain_to_json(*c.alpha) : json(nullptr);
  out["alpha_source"] = c.alpha_source;
  out["partial"] = c.partial;
  out["stages"] = json::array({"free_reduction", "first", "correction", "second"});
  out["verification"] = detail::sweep_to_json(c.verification);
  if (out["verification"].is_null()) out["verification"] = {{"mode", "absent"}, {"seed", seed}, {"checked", 0}};
  out["restriction"] = detail::sweep_to_json(c.restriction);
  return out;
}

inline TorsionCertificate torsion_certificate_from_json(const json& j, const Limits& limits = {}) {
  if (j.value("mode", "") != "torsion") detail::parse_fail("not a torsion certificate");
  return detail::torsion_from_body(j, detail::input_from_json(j), limits);
}

inline GeneralCertificate general_certificate_from_json(const json& j, const Limits& limits = {}) {
  using detail::field;
  if (j.value("mode", "") != "general") detail::parse_fail("not a general certificate");
  GeneralCertificate c;
  c.omega = detail::input_from_json(j);
  const auto& g = c.omega.group();
  c.split = torsion_submodule(c.omega.module());
  const auto r = c.split.quotient->rank();
  const json& fr = field(j, "free_reduction");
  c.h.denominator = detail::as_int(field(fr, "denominator"), "denominator");
  c.h.numerator = cochain_from_json(field(fr, "h"), c.split.quotient);
  {
    std::vector<IntMatrix> act(c.split.quotient->actions().begin(), c.split.quotient->actions().end());
    c.hbar_module = make_module_presented(g, std::vector<std::int64_t>(r, static_cast<std::int64_t>(g->order())),
                                          std::move(act));
  }
  c.h_bar = cochain_from_json(field(fr, "h_bar"), c.hbar_module.module);
  c.first = detail::torsion_from_body(field(j, "first"), c.h_bar, limits);
  if (!c.first.extension) detail::parse_fail("first-stage extension could not be rebuilt");
  const auto& e1 = *c.first.extension;
  const auto q1 = lift_module(e1, c.split.quotient);
  const auto m1 = lift_module(e1, c.omega.module());
  const auto t1 = lift_module(e1, c.split.torsion);
  const json& cor = field(j, "correction");
  c.rho_lift = cochain_from_json(field(cor, "rho_lift"), q1);
  c.eta = cochain_from_json(field(cor, "eta"), q1);
  c.eta_tilde = cochain_from_json(field(cor, "eta_tilde"), m1);
  c.beta = cochain_from_json(field(cor, "beta"), t1);
  c.second = detail::torsion_from_body(field(j, "second"), c.beta, limits);
  if (!c.second.extension) detail::parse_fail("second-stage extension could not be rebuilt");
  const auto& e2 = *c.second.extension;
  c.composite_pi.resize(e2.total->order());
  for (GroupElement x = 0; x < e2.total->order(); ++x) {
    c.composite_pi[x] = e1.pi[e2.pi[x]];
    if (c.composite_pi[x] == 0) c.composite_kernel.push_back(x);
  }
  c.lifted = pullback_module(c.omega.module(), e2.total, c.composite_pi);
  c.alpha_source = j.value("alpha_source", "none");
  c.partial = j.value("partial", false);
  if (j.contains("alpha") && !j.at("alpha").is_null())
    c.alpha = std::make_shared<const Cochain>(cochain_from_json(j.at("alpha"), c.lifted));
  c.verification = detail::sweep_from_json(j.value("verification", json(nullptr)));
  c.restriction = detail::sweep_from_json(j.value("restriction", json(nullptr)));
  return c;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << j.dump(1) << "\n";
}

}  // namespace cohom
