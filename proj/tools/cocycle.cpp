// cocycle: command-line front end for the cohom library.
//
// Exit codes: 0 ok, 1 usage/input, 2 group validation, 3 resource limit,
// 4 not a cocycle or mismatched inputs, 5 non-torsion value, 6 degree too low,
// 7 verification failed.

#include <filesystem>
#include <map>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cohom/cohom.hpp"
#include "cohom/io.hpp"

using namespace cohom;

namespace {

enum Exit { kOk = 0, kUsage = 1, kGroup = 2, kResource = 3, kMismatch = 4, kNonTorsion = 5, kDegree = 6, kVerify = 7 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAssociative:
    case ErrorKind::NoIdentity:
    case ErrorKind::NoInverse:
    case ErrorKind::UnknownFamily:
      return kGroup;
    case ErrorKind::ResourceLimit:
      return kResource;
    case ErrorKind::NotACocycle:
    case ErrorKind::GroupMismatch:
    case ErrorKind::ModuleMismatch:
    case ErrorKind::PairingMismatch:
    case ErrorKind::DegreeMismatch:
      return kMismatch;
    case ErrorKind::NonTorsionValue:
      return kNonTorsion;
    case ErrorKind::DegreeTooLow:
      return kDegree;
    default:
      return kUsage;
  }
}

struct Common {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool json_out = false;
  std::string output;

  TrivializeOptions options() const {
    TrivializeOptions o;
    o.limits = Limits::from_env();
    o.seed = seed;
    o.threads = threads;
    return o;
  }
};

GroupPtr resolve_group(const std::string& descr) {
  if (std::filesystem::is_regular_file(descr)) return group_from_json(read_json_file(descr));
  return builtin_group(descr);
}

std::vector<std::int64_t> parse_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad integer list \"" + s + "\"");
    }
  }
  return out;
}

struct ModuleArgs {
  std::string file;
  std::string trivial;
  bool sign = false;

  bool given() const { return !file.empty() || !trivial.empty() || sign; }

  ModulePtr resolve(const GroupPtr& g) const {
    if (!file.empty()) return module_from_json(read_json_file(file), g);
    if (!trivial.empty()) return trivial_module(g, parse_list(trivial));
    if (sign) {
      auto chi = sign_character(*g);
      if (!chi) throw Error(ErrorKind::InvalidArgument, "group has no sign character");
      std::vector<IntMatrix> act;
      for (int c : *chi) act.push_back(IntMatrix{{c}});
      return make_module(g, {0}, act);
    }
    throw Error(ErrorKind::InvalidArgument, "a module is required (--module, --trivial or --sign)");
  }

  void attach(CLI::App* app) {
    app->add_option("--module", file, "module JSON file");
    app->add_option("--trivial", trivial, "trivial module with these invariant factors, e.g. 2 or 0,2");
    app->add_flag("--sign", sign, "Z with the action of a sign character");
  }
};

std::string factors_text(const std::vector<std::int64_t>& f) {
  if (f.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += " + ";
    s += f[i] == 0 ? "Z" : "Z/" + std::to_string(f[i]);
  }
  return s;
}

void emit(const Common& c, const json& j) {
  if (!c.output.empty()) write_json_file(c.output, j);
  if (c.json_out) std::cout << j.dump(1) << "\n";
}

std::string tuple_text(const FiniteGroup* g, const std::vector<std::size_t>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += g && t[i] < g->order() ? g->label(static_cast<GroupElement>(t[i])) : std::to_string(t[i]);
  }
  return s + ")";
}

int cmd_group(const Common& c, const std::string& builtin, const std::string& table) {
  if (builtin.empty() == table.empty()) throw Error(ErrorKind::InvalidArgument, "give exactly one of --builtin, --table");
  GroupPtr g = builtin.empty() ? group_from_json(read_json_file(table)) : builtin_group(builtin);
  if (!c.json_out) {
    std::cout << "order " << g->order() << "\n";
    if (auto p = g->non_commuting_pair())
      std::cout << "non-abelian: " << g->label(p->first) << "*" << g->label(p->second) << " != "
                << g->label(p->second) << "*" << g->label(p->first) << "\n";
    else
      std::cout << "abelian\n";
    std::cout << "element orders:";
    for (GroupElement x = 0; x < g->order(); ++x) std::cout << " " << g->label(x) << ":" << g->element_order(x);
    std::cout << "\n";
  }
  emit(c, group_to_json(*g));
  return kOk;
}

int cmd_cohomology(const Common& c, const std::string& group, const ModuleArgs& ma, long degree, bool reps) {
  if (degree < 0) throw Error(ErrorKind::InvalidArgument, "degree must be non-negative");
  auto g = resolve_group(group);
  auto m = ma.resolve(g);
  auto limits = Limits::from_env();
  auto h = cohomology(m, static_cast<std::size_t>(degree), limits);
  if (!c.json_out) std::cout << "H^" << degree << " = " << factors_text(h.invariants) << "\n";
  json j{{"degree", degree}, {"invariants", h.invariants}};
  if (reps) {
    json r = json::array();
    for (const auto& f : h.representatives) r.push_back(cochain_to_json(f));
    j["representatives"] = r;
    j["module"] = module_to_json(*m, true);
  }
  emit(c, j);
  return kOk;
}

int cmd_cup(const Common& c, const std::string& left, const std::string& right, const std::string& pairing) {
  Cochain a = cochain_from_json(read_json_file(left));
  Cochain b = cochain_from_json(read_json_file(right), nullptr, a.group());
  Cochain out;
  if (pairing == "tensor") {
    out = cup(a, b).value;
  } else if (pairing == "ring") {
    if (!same_module(a.module(), b.module())) throw Error(ErrorKind::PairingMismatch, "ring pairing needs equal modules");
    out = cup_with_pairing(ring_pairing(a.module()), a, b);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown pairing " + pairing);
  }
  if (!c.json_out)
    std::cout << "degree " << out.degree() << " cochain in " << factors_text(out.module()->factors()) << ", "
              << out.stored() << " nonzero values\n";
  emit(c, cochain_to_json(out, true));
  return kOk;
}

int cmd_d2(const Common& c, const std::string& bfile, const std::string& cfile) {
  json bj = read_json_file(bfile);
  auto a = module_from_json(detail::field(bj, "source"));
  auto m = module_from_json(detail::field(bj, "target"), a->group());
  auto h = std::make_shared<const HomModule>(hom_module(a, m));
  Cochain b = hom_cochain_from_json(bj, *h);
  json cj = read_json_file(cfile);
  Cochain cc = cochain_from_json(cj, cj.contains("module") ? nullptr : a, a->group());
  if (!same_module(cc.module(), a)) throw Error(ErrorKind::ModuleMismatch, "c does not take values in the Hom source");
  Cochain out = d2(h, b, cc);
  if (!c.json_out) std::cout << "degree " << out.degree() << " cochain, " << out.stored() << " nonzero values\n";
  emit(c, cochain_to_json(out, true));
  return kOk;
}

int cmd_extend(const Common& c, const std::string& file) {
  Cochain cc = cochain_from_json(read_json_file(file));
  auto e = build_extension(cc.module(), cc, Limits::from_env(), c.seed);
  const auto& t = *e.total;
  if (!c.json_out) {
    std::cout << "order " << t.order() << " (kernel " << e.kernel_order() << ", base " << e.base->order() << ")\n";
    std::cout << (t.is_abelian() ? "abelian" : "non-abelian") << "\n";
    std::map<std::size_t, std::size_t> orders;
    for (GroupElement x = 0; x < t.order(); ++x) ++orders[t.element_order(x)];
    std::cout << "element orders:";
    for (auto [o, n] : orders) std::cout << " " << o << "x" << n;
    std::cout << "\n";
  }
  emit(c, {{"base", group_to_json(*e.base)},
           {"kernel", module_to_json(*e.kernel, false)},
           {"cocycle", cochain_to_json(cc)},
           {"total", group_to_json(t)}});
  return kOk;
}

int cmd_trivialize(const Common& c, const std::string& group, const ModuleArgs& ma, const std::string& file,
                   long degree, const std::string& mode) {
  json j = read_json_file(file);
  GroupPtr g;
  if (!group.empty()) g = resolve_group(group);
  ModulePtr m;
  if (ma.given()) {
    if (!g) throw Error(ErrorKind::InvalidArgument, "--group is required with a module option");
    m = ma.resolve(g);
  }
  if (j.contains("degree") && detail::as_int(j.at("degree"), "degree") != degree)
    throw Error(ErrorKind::InvalidArgument, "--degree " + std::to_string(degree) + " does not match the cocycle file");
  Cochain w = cochain_from_json(j, m, g);
  const auto opt = c.options();
  if (mode == "torsion") {
    auto cert = trivialize_torsion(w, opt);
    if (!c.json_out)
      std::cout << "N " << cert.N << "\n|Gamma| " << cert.gamma()->order() << "\nalpha " << cert.alpha_source
                << "\nverification " << cert.verification.mode << " " << cert.verification.checked << " "
                << (cert.verification.ok ? "pass" : "FAIL") << "\n";
    emit(c, certificate_to_json(cert, c.seed));
    return cert.verification.ok ? kOk : kVerify;
  }
  if (mode == "general") {
    auto cert = trivialize_general(w, opt);
    if (!c.json_out)
      std::cout << "free rank " << cert.split.quotient->rank() << "\n|Gamma| " << cert.first.gamma()->order()
                << "\n|Gamma~| " << cert.gamma()->order() << "\nbeta " << (cert.beta.is_zero() ? "zero" : "nonzero")
                << "\nverification " << cert.verification.mode << " " << cert.verification.checked << " "
                << (cert.verification.ok ? "pass" : "FAIL") << "\n";
    emit(c, certificate_to_json(cert, c.seed));
    return cert.verification.ok ? kOk : kVerify;
  }
  throw Error(ErrorKind::InvalidArgument, "--mode must be torsion or general");
}

int cmd_verify(const Common& c, const std::string& file, bool allow_partial) {
  json j = read_json_file(file);
  if (j.value("format", "") != kCertificateFormat) throw Error(ErrorKind::ParseError, "not a certificate file");
  const auto opt = c.options();
  VerifyReport rep;
  if (j.value("mode", "") == "general") {
    rep = verify_certificate(general_certificate_from_json(j, opt.limits), opt);
  } else {
    rep = verify_certificate(torsion_certificate_from_json(j, opt.limits), opt);
  }
  json out = json::array();
  for (const auto& ch : rep.checks) {
    std::string line = ch.name + ": " + ch.status;
    if (!ch.detail.empty()) line += " (" + ch.detail + ")";
    if (!ch.witness.empty()) {
      std::vector<std::size_t> w(ch.witness.begin(), ch.witness.end());
      line += " witness " + tuple_text(ch.group.get(), w);
    }
    if (ch.name == "alpha" && ch.status == "absent" && allow_partial) line += " [allowed]";
    if (!c.json_out) std::cout << line << "\n";
    out.push_back({{"check", ch.name}, {"status", ch.status}, {"detail", ch.detail},
                   {"witness", std::vector<std::size_t>(ch.witness.begin(), ch.witness.end())}});
  }
  const bool ok = rep.ok(allow_partial);
  if (!c.json_out) std::cout << (ok ? "certificate ok" : "certificate FAILED") << "\n";
  emit(c, {{"checks", out}, {"ok", ok}});
  return ok ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group cohomology of finite groups and constructive trivialization of cocycles"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--seed", common.seed, "seed for sampled verification")->capture_default_str();
  app.add_option("--threads", common.threads, "worker threads for verification sweeps")->check(CLI::PositiveNumber);
  app.add_flag("--json", common.json_out, "print machine-readable JSON to stdout");
  app.add_option("-o,--output", common.output, "write JSON output to this file");

  std::string builtin, table, group, left, right, pairing = "tensor", bfile, cfile, cocycle, mode = "torsion", cert;
  long degree = -1;
  bool reps = false, allow_partial = false;
  ModuleArgs ma;

  auto* g = app.add_subcommand("group", "validate and describe a group");
  g->add_option("--builtin", builtin, "cyclic:m, dihedral:n, symmetric:n, quaternion, klein, trivial, prod(A,B)");
  g->add_option("--table", table, "group JSON file");

  auto* h = app.add_subcommand("cohomology", "invariant factors of H^n(G; M)");
  h->add_option("--group", group, "builtin name or group JSON file")->required();
  ma.attach(h);
  h->add_option("--degree", degree, "n")->required();
  h->add_flag("--representatives", reps, "include representative cocycles in the JSON output");

  auto* cu = app.add_subcommand("cup", "cup product of two cochain files");
  cu->add_option("--left", left)->required();
  cu->add_option("--right", right)->required();
  cu->add_option("--pairing", pairing, "tensor or ring")->capture_default_str();

  auto* dd = app.add_subcommand("d2", "d2(b) = -(b cup_ev c)");
  dd->add_option("--b", bfile, "Hom-valued cochain with source and target modules")->required();
  dd->add_option("--c", cfile, "2-cocycle with values in the Hom source")->required();

  auto* ex = app.add_subcommand("extend", "build the extension group of a 2-cocycle");
  ex->add_option("--cocycle", cocycle, "2-cocycle file with its module")->required();

  auto* tr = app.add_subcommand("trivialize", "construct a trivialization certificate");
  tr->add_option("--group", group, "builtin name or group JSON file");
  ma.attach(tr);
  tr->add_option("--cocycle", cocycle, "cocycle file")->required();
  tr->add_option("--degree", degree, "n")->required();
  tr->add_option("--mode", mode, "torsion or general")->capture_default_str();

  auto* ve = app.add_subcommand("verify", "re-check a certificate");
  ve->add_option("certificate", cert)->required();
  ve->add_flag("--allow-partial", allow_partial, "accept certificates without a primitive");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (g->parsed()) return cmd_group(common, builtin, table);
    if (h->parsed()) return cmd_cohomology(common, group, ma, degree, reps);
    if (cu->parsed()) return cmd_cup(common, left, right, pairing);
    if (dd->parsed()) return cmd_d2(common, bfile, cfile);
    if (ex->parsed()) return cmd_extend(common, cocycle);
    if (tr->parsed()) return cmd_trivialize(common, group, ma, cocycle, degree, mode);
    if (ve->parsed()) return cmd_verify(common, cert, allow_partial);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.witness().empty()) {
      std::cerr << "witness:";
      for (auto x : e.witness()) std::cerr << " " << x;
      std::cerr << "\n";
    }
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
