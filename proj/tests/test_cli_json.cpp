#include <gtest/gtest.h>

#include <sstream>

#include "emcoh/cli.hpp"

using namespace emcoh;

namespace {

struct Run {
  int code;
  json out;
  std::string text;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  Run r{code, json(), out.str()};
  if (!r.text.empty() && r.text[0] == '{') r.out = json::parse(r.text);
  return r;
}

}  // namespace

TEST(Cli, CohomologyExample) {
  auto r = run({"cohomology", "--level", "br", "--degree", "3", "--group", "2", "--coeff", "8"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["invariants"], "4");
  EXPECT_EQ(r.out["order"], 4);
  ASSERT_EQ(r.out["representatives"].size(), 1u);
  // the representative classifies back to the generator
  auto c = cochain_from_json(r.out["representatives"][0]);
  EXPECT_TRUE(is_cocycle(c));
  auto back = run({"cohomology", "--cochain", r.out["representatives"][0].dump()});
  EXPECT_EQ(back.out["class"], json::array({1}));
}

TEST(Cli, ExsymExample) {
  auto r = run({"exsym", "--grading", "2", "--G", "2", "--t", "1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["invariants"], "2,2");
  EXPECT_EQ(r.out["agree"], true);
  EXPECT_EQ(run({"exsym", "--grading", "2", "--G", "2", "--t", "[1]"}).out["invariants"], "1");
}

TEST(Cli, ZestCheckTrivialDatum) {
  auto r = run({"zest", "check"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["ok"], true);
  auto bad = run({"zest", "check", "--datum", R"({"base":"zero","grading":"2","kappa":[[0,0],[0,1]]})"});
  ASSERT_EQ(bad.code, 0);
  EXPECT_EQ(bad.out["ok"], false);
  EXPECT_EQ(bad.out["witness"].size(), 3u);
}

TEST(Cli, DatumRoundTrip) {
  auto base = preset_form("radical");
  auto d = trivial_datum(base, FinAbGroup::parse("2"));
  d.f = grading_characters(d.grading, base.group(), 8).back();
  d.kappa[3] = 5;
  d.xi[7] = 3;
  auto back = datum_from_json(json::parse(datum_json(d).dump()));
  EXPECT_EQ(back.f, d.f);
  EXPECT_EQ(back.L, d.L);
  EXPECT_EQ(back.kappa, d.kappa);
  EXPECT_EQ(back.xi, d.xi);
  EXPECT_EQ(back.base, d.base);
  EXPECT_EQ(back.twist, d.twist);
}

TEST(Cli, EnumerateWitnessesPassCheck) {
  auto r = run({"zest", "enumerate", "--base", "semion", "--grading", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["total"], 4);
  for (const auto& orb : r.out["orbits"])
    for (const auto& l : orb["l_classes"]) {
      if (l["witness"].is_null()) continue;
      auto c = run({"zest", "check", "--datum", l["witness"].dump()});
      EXPECT_EQ(c.out["ok"], true);
    }
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"pic", "--G", "D8", "--t", "r2"};
  EXPECT_EQ(run(args).text, run(args).text);
  auto t = run({"stable", "--group", "2", "--degree", "3", "--no-reps", "--timing"});
  EXPECT_TRUE(t.out.contains("timing_ms"));
  EXPECT_FALSE(run({"stable", "--group", "2", "--degree", "3", "--no-reps"}).out.contains("timing_ms"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"zest", "check", "--datum", "{bad"}).code, 2);
  EXPECT_EQ(run({"cohomology", "--group", "2", "--coeff", "8", "--degree", "9"}).code, 2);
  EXPECT_EQ(run({"pic", "--G", "4", "--t", "[1]"}).code, 2);
  EXPECT_EQ(run({"quad", "--form", R"({"group":"2","coeff":"8","values":[[1,1]]})"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"cohomology", "--degree"}).code, 2);
  auto table = run({"groupcoh", "--G", R"({"table":[[0,1],[1,0]]})", "--coeff", "2", "--degree", "3"});
  EXPECT_EQ(table.code, 0);
  EXPECT_EQ(table.out["invariants"], "2");
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SizeGuardExitCode) {
  // degree 4 on a group of order 8 exceeds the default dense-matrix limit
  auto r = run({"cohomology", "--group", "2,4", "--coeff", "8", "--degree", "4", "--no-reps"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out["kind"], "size_guard");
}

TEST(Cli, GroupsAndElements) {
  auto g = finite_group_from_string("D8");
  EXPECT_EQ(g.order(), 8);
  EXPECT_EQ(finite_group_element(g, "r2"), 2);
  EXPECT_EQ(finite_group_element(g, "e"), g.identity());
  auto a = finite_group_from_string("2,4");
  EXPECT_EQ(finite_group_element(a, "1"), a.identity());
  EXPECT_EQ(finite_group_element(a, "[0,2]"), a.structure()->index_of({0, 2}));
  EXPECT_EQ(finite_group_element(a, "1,3"), a.structure()->index_of({1, 3}));
  EXPECT_THROW(finite_group_element(g, "x"), ValidationError);
  auto q8 = finite_group_from_string("Q8");
  EXPECT_EQ(finite_group_element(q8, "-1"), 4);
}

TEST(Cli, PicAndPairingReports) {
  auto sv = run({"pic", "--G", "2", "--t", "[1]"});
  EXPECT_EQ(sv.out["invariants"], "2");
  EXPECT_EQ(sv.out["split"], true);
  auto p = run({"pairing", "--G", "2", "--t", "[1]", "--eps", "1", "--z", "[1]"});
  EXPECT_EQ(p.out["pairing"][1], p.out["modulus"].get<Int>() / 2);
  auto nd = run({"picbr", "--form", R"({"group":"4","coeff":"16","diag":[2]})"});
  EXPECT_EQ(nd.out["invariants"], "1");
  EXPECT_EQ(run({"picbr", "--G", "2"}).out["pi0"], "2");
}
