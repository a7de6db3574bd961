#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "cohom/builtin_groups.hpp"
#include "cohom/certificate.hpp"
#include "cohom/io.hpp"

using namespace cohom;
using nlohmann::json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Io, GroupRoundTrip) {
  auto g = builtin_group("dihedral:4");
  auto h = group_from_json(group_to_json(*g));
  EXPECT_EQ(h->table(), g->table());
  EXPECT_EQ(h->labels(), g->labels());
  EXPECT_EQ(group_from_json(json("cyclic:5"))->order(), 5u);
  EXPECT_EQ(group_from_json(json{{"builtin", "klein"}})->order(), 4u);
}

TEST(Io, BadGroupTables) {
  json nonassoc{{"table", {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}}};
  EXPECT_EQ(kind_of([&] { group_from_json(nonassoc); }), ErrorKind::NotAssociative);
  EXPECT_EQ(kind_of([&] { group_from_json(json{{"table", "x"}}); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([&] { group_from_json(json{{"order", 3}, {"table", {{0, 1}, {1, 0}}}}); }), ErrorKind::ParseError);
}

TEST(Io, ModuleActionOnGenerators) {
  json j = json::parse(R"({"group": "cyclic:4", "factors": [0], "action": {"g": [[-1]]}})");
  auto m = module_from_json(j);
  EXPECT_EQ(m->act(2, ModuleElement{1}), (ModuleElement{1}));
  EXPECT_EQ(m->act(3, ModuleElement{1}), (ModuleElement{-1}));
  auto back = module_from_json(module_to_json(*m));
  EXPECT_TRUE(m->same_as(*back));
  json bad = json::parse(R"({"group": "cyclic:3", "factors": [0], "action": {"g": [[-1]]}})");
  EXPECT_EQ(kind_of([&] { module_from_json(bad); }), ErrorKind::ActionNotHomomorphic);
  json unknown = json::parse(R"({"group": "cyclic:3", "factors": [0], "action": {"q": [[1]]}})");
  EXPECT_EQ(kind_of([&] { module_from_json(unknown); }), ErrorKind::ParseError);
}

TEST(Io, CochainRoundTripAndValidation) {
  auto m = trivial_module(builtin_group("symmetric:3"), {2, 0});
  std::mt19937_64 rng(4);
  auto f = random_cochain(m, 2, rng);
  auto j = cochain_to_json(f, true);
  EXPECT_EQ(cochain_from_json(j), f);
  EXPECT_EQ(cochain_from_json(cochain_to_json(f), m), f);

  auto g = m->group();
  json withid{{"degree", 2}, {"values", {{{"tuple", {g->label(0), g->label(1)}}, {"value", {1, 0}}}}}};
  EXPECT_EQ(kind_of([&] { cochain_from_json(withid, m); }), ErrorKind::InvalidArgument);
  json dup{{"degree", 1},
           {"values", {{{"tuple", {g->label(1)}}, {"value", {1, 0}}}, {{"tuple", {g->label(1)}}, {"value", {1, 0}}}}}};
  EXPECT_EQ(kind_of([&] { cochain_from_json(dup, m); }), ErrorKind::ParseError);
  json wrongdeg{{"degree", 2}, {"values", {{{"tuple", {g->label(1)}}, {"value", {1, 0}}}}}};
  EXPECT_EQ(kind_of([&] { cochain_from_json(wrongdeg, m); }), ErrorKind::DegreeMismatch);
  json wrongrank{{"degree", 1}, {"values", {{{"tuple", {g->label(1)}}, {"value", {1}}}}}};
  EXPECT_EQ(kind_of([&] { cochain_from_json(wrongrank, m); }), ErrorKind::ModuleMismatch);
}

TEST(Io, TorsionCertificateRoundTrip) {
  auto m = trivial_module(cyclic_group(2), {2});
  Cochain w(m, 2);
  w.set(Tuple{1, 1}, ModuleElement{1});
  auto cert = trivialize_torsion(w);
  auto j = certificate_to_json(cert);
  EXPECT_EQ(j["format"], "cocycle-certificate/1");
  EXPECT_EQ(j["gamma"]["order"], 4);
  auto back = torsion_certificate_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.omega, cert.omega);
  EXPECT_EQ(back.b, cert.b);
  ASSERT_TRUE(back.alpha);
  EXPECT_EQ(*back.alpha, *cert.alpha);
  EXPECT_TRUE(verify_certificate(back).ok());

  // Change one value of α in the file.
  auto& vals = j["alpha"]["values"];
  ASSERT_FALSE(vals.empty());
  vals[0]["value"][0] = (vals[0]["value"][0].get<int>() + 1) % 2;
  auto corrupted = torsion_certificate_from_json(j);
  auto rep = verify_certificate(corrupted);
  EXPECT_FALSE(rep.ok());
  EXPECT_EQ(rep.find("alpha")->status, "fail");
}

TEST(Io, CorruptedKernelCocycleIsReported) {
  auto m = trivial_module(cyclic_group(3), {3});
  auto cert = trivialize_torsion(cohomology(m, 2).representatives.at(0));
  auto j = certificate_to_json(cert);
  auto& vals = j["c"]["values"];
  ASSERT_FALSE(vals.empty());
  auto& v = vals[0]["value"];
  v[0] = (v[0].get<int>() + 1) % 3;
  auto back = torsion_certificate_from_json(j);
  auto rep = verify_certificate(back);
  EXPECT_FALSE(rep.ok());
  ASSERT_NE(rep.find("c_cocycle"), nullptr);
  EXPECT_EQ(rep.find("c_cocycle")->status, "fail");
}

TEST(Io, GeneralCertificateRoundTrip) {
  auto z = trivial_module(cyclic_group(2), {0});
  auto cert = trivialize_general(cohomology(z, 4).representatives.at(0));
  auto j = certificate_to_json(cert);
  EXPECT_EQ(j["mode"], "general");
  auto back = general_certificate_from_json(json::parse(j.dump()));
  EXPECT_TRUE(verify_certificate(back).ok());
  EXPECT_THROW(torsion_certificate_from_json(j), Error);
}
