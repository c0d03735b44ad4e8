#pragma once

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "emcoh/json_io.hpp"
#include "emcoh/selftest.hpp"

namespace emcoh {

namespace cli {

enum ExitCode { kOk = 0, kFailed = 1, kValidation = 2, kSizeGuard = 3, kConsistency = 4 };

inline json hom_json(const GroupHom& h) {
  json imgs = json::array();
  for (std::size_t j = 0; j < h.domain().rank(); ++j) imgs.push_back(value_json(h.codomain(), h.image_of_generator(j)));
  return {{"domain", h.domain().literal()}, {"codomain", h.codomain().literal()}, {"images", imgs}};
}

inline json characters_json(const Character& c) { return json(std::vector<Int>(c.begin(), c.end())); }

inline json f_json(const FinAbGroup& a, Int m, const std::vector<Int>& f) {
  json rows = json::array();
  for (Int x = 0; x < a.order(); ++x) {
    json r = json::array();
    for (Int X = 0; X < m; ++X) r.push_back(f[x * m + X]);
    rows.push_back(r);
  }
  return rows;
}

inline json l_json(const FinAbGroup& a, const FinAbGroup& a0, const std::vector<Int>& L) {
  json rows = json::array();
  const Int k = a.order();
  for (Int x = 0; x < k; ++x) {
    json r = json::array();
    for (Int y = 0; y < k; ++y) r.push_back(element_json(a0.element(L[x * k + y])));
    rows.push_back(r);
  }
  return rows;
}

inline json representatives_json(const CohomologyGroup& h) {
  json reps = json::array();
  for (const auto& r : h.representatives()) reps.push_back(cochain_json(r));
  return reps;
}

struct Options {
  bool human = false, timing = false;
  std::string level = "br", group, coeff, cochain, kind = "sym", G, t = "e", form, cls, z = "e", grading, base = "zero",
              datum;
  int degree = -1;
  Int eps = 0, base_n = 0, factor = 0;
  bool no_reps = false, stable = false, census = false;
};

inline SymmetricFusionData fusion_data(const Options& o) {
  require(!o.G.empty(), "--G is required");
  auto g = finite_group_from_string(o.G);
  return symmetric_data(g, finite_group_element(g, o.t));
}

inline json cmd_cohomology(const Options& o) {
  if (!o.cochain.empty()) {
    auto c = cochain_from_json(load_json(o.cochain));
    auto h = cohomology(c.group(), c.coeff(), c.level(), c.degree());
    json r = {{"invariants", h.invariants().literal()}, {"order", h.order()}, {"cocycle", is_cocycle(c)}};
    if (is_cocycle(c)) {
      auto cls = h.class_of(c);
      r["class"] = element_json(cls);
      r["coboundary"] = h.invariants().is_zero(cls);
    }
    return r;
  }
  require(!o.group.empty() && !o.coeff.empty() && o.degree >= 0, "cohomology needs --group, --coeff and --degree");
  auto h = cohomology(FinAbGroup::parse(o.group), FinAbGroup::parse(o.coeff), parse_level(o.level), o.degree);
  json r = {{"invariants", h.invariants().literal()}, {"order", h.order()}};
  if (!o.no_reps) r["representatives"] = representatives_json(h);
  return r;
}

inline json cmd_stable(const Options& o) {
  require(!o.group.empty() && o.degree >= 0, "stable needs --group and --degree");
  auto a = FinAbGroup::parse(o.group);
  auto h = stable_cohomology(a, parse_level(o.level), o.degree, StableModel{o.base_n, o.factor});
  json r = {{"invariants", h.invariants().literal()},
            {"order", h.order()},
            {"modulus", h.coefficients().literal()},
            {"stable", true}};
  if (!o.no_reps) r["representatives"] = representatives_json(h);
  return r;
}

inline json cmd_theta(const Options& o) {
  require(!o.cochain.empty(), "theta needs --cochain");
  auto c = cochain_from_json(load_json(o.cochain));
  if (o.kind == "sym") return {{"kind", "sym"}, {"theta", hom_json(theta_sym(c))}};
  if (o.kind == "syl") {
    auto t = theta_syl(c);
    return {{"kind", "syl"}, {"on_torsion", hom_json(t.on_torsion)}, {"on_wedge", hom_json(t.on_wedge)}};
  }
  if (o.kind == "br") {
    auto t = theta_br(c, o.factor);
    return {{"kind", "br"},
            {"ext", t.ext.literal()},
            {"class", element_json(t.cls)},
            {"modulus", t.modulus},
            {"trivial", t.ext.is_zero(t.cls)}};
  }
  throw ValidationError("--kind must be sym, syl or br");
}

inline json cmd_quad(const Options& o) {
  if (!o.form.empty()) {
    auto q = form_from_json(load_form_arg(o.form));
    auto rad = radical(q);
    return {{"form", form_json(q)},
            {"cocycle", cochain_json(to_braided_3cocycle(q))},
            {"radical", rad.group.literal()},
            {"tau", hom_json(rad.tau)},
            {"nondegenerate", rad.group.trivial()}};
  }
  require(!o.group.empty() && !o.coeff.empty(), "quad needs --group and --coeff, or --form");
  auto g = quad_group(FinAbGroup::parse(o.group), FinAbGroup::parse(o.coeff));
  return {{"invariants", g.literal()}, {"order", g.order()}};
}

inline json cmd_groupcoh(const Options& o) {
  require(!o.G.empty() && o.degree >= 0, "groupcoh needs --G and --degree");
  auto g = finite_group_from_string(o.G);
  require(o.stable || !o.coeff.empty(), "groupcoh needs --coeff or --stable");
  auto h = o.stable ? stable_group_cohomology(g, o.degree, o.base_n, o.factor)
                    : group_cohomology(g, FinAbGroup::parse(o.coeff), o.degree);
  json r = {{"invariants", h.invariants().literal()}, {"order", h.order()}, {"coeff", h.coefficients().literal()}};
  if (o.stable) r["stable"] = true;
  return r;
}

inline json pic_element_json(const PicElement& p) { return {{"class", element_json(p.cls)}, {"eps", p.eps}}; }

inline json cmd_pic(const Options& o) {
  auto pg = pic(fusion_data(o));
  json els = json::array();
  for (const auto& p : pg.elements()) {
    auto e = pic_element_json(p);
    e["Q"] = characters_json(pic_Q(pg, p));
    els.push_back(e);
  }
  return {{"invariants", pg.invariants().literal()},
          {"order", pg.order()},
          {"split", pg.split()},
          {"h2", pg.h2().invariants().literal()},
          {"twisted_invariants", pg.twisted_invariants().literal()},
          {"modulus", pg.modulus()},
          {"table", pg.table()},
          {"elements", els}};
}

inline json cmd_picbr(const Options& o) {
  if (!o.form.empty()) {
    auto r = picbr_pointed(PointedBraidedData{form_from_json(load_form_arg(o.form))});
    return {{"radical", r.perp.literal()},
            {"tau_trivial", r.tau_trivial},
            {"split", r.split},
            {"dual", r.dual.literal()},
            {"invariants", r.pipeline.literal()},
            {"order", r.pipeline.order()},
            {"closed_form", r.closed_form.literal()},
            {"closed_form_full_a", r.closed_form_full_a.literal()},
            {"agree", r.agree}};
  }
  auto pb = picbr_invariants(fusion_data(o));
  return {{"pi0", pb.pi0().literal()},
          {"pi1", pb.pi1().literal()},
          {"pi2", pb.pi2()},
          {"pic", pb.pic().invariants().literal()},
          {"modulus", pb.modulus()}};
}

inline json cmd_pairing(const Options& o) {
  auto s = fusion_data(o);
  auto pg = pic(s);
  PicElement p = pg.identity();
  if (!o.cls.empty()) {
    auto c = parse_coords(o.cls);
    const auto& inv = pg.h2().invariants();
    require(c.size() == inv.rank(), "--class needs " + std::to_string(inv.rank()) + " coordinates");
    p.cls = inv.reduce(c);
  }
  p.eps = o.eps;
  pg.check(p);
  Int z = finite_group_element(s.group, o.z);
  return {{"element", pic_element_json(p)},
          {"z", s.group.label(z)},
          {"pairing", characters_json(pairing(pg, p, z))},
          {"Q", characters_json(pic_Q(pg, p))},
          {"modulus", pg.modulus()}};
}

inline json cmd_exsym(const Options& o) {
  require(!o.grading.empty(), "exsym needs --grading");
  auto a = FinAbGroup::parse(o.grading);
  auto s = fusion_data(o);
  auto e = ex_sym_group(a, s);
  auto fs = xi_t_and_funsym(a, s);
  return {{"invariants", e.literal()},
          {"order", e.order()},
          {"h2", fs.h2.literal()},
          {"ker_xi", fs.pi0.literal()},
          {"bookkeeping", fs.bookkeeping},
          {"agree", fs.bookkeeping == e.order()}};
}

inline json datum_or_default(const Options& o) {
  if (!o.datum.empty()) return load_json(o.datum);
  return {{"base", o.base.empty() ? json("zero") : load_form_arg(o.base)}, {"grading", o.grading.empty() ? "2" : o.grading}};
}

inline json cmd_zest_enumerate(const Options& o) {
  auto base = form_from_json(load_form_arg(o.base));
  auto a = FinAbGroup::parse(o.grading.empty() ? "2" : o.grading);
  auto rep = enumerate_quasi_trivial(base, a);
  const Int m = base.group().order();
  json orbits = json::array();
  for (const auto& orb : rep.orbits) {
    json ls = json::array();
    for (const auto& lc : orb.l_classes) {
      json l = {{"L", l_json(a, base.group(), lc.L)}, {"pw2_trivial", lc.pw2_trivial}};
      l["witness"] = lc.witness ? datum_json(*lc.witness) : json(nullptr);
      ls.push_back(l);
    }
    orbits.push_back({{"f", f_json(a, m, orb.f)},
                      {"orbit_size", orb.members.size()},
                      {"fiber", orb.fiber.literal()},
                      {"classes", orb.classes},
                      {"l_classes", ls}});
  }
  json r = {{"grading", a.literal()},
            {"base", form_json(base)},
            {"radical", rep.radical_group.literal()},
            {"orbits", orbits},
            {"total", rep.total},
            {"total_constant_reading", rep.total_constant_reading}};
  if (o.census) {
    auto c = zesting_census(base, a);
    r["census"] = {{"data_checked", c.data_checked},
                   {"coherent", c.coherent},
                   {"classes", c.classes.size()},
                   {"agree", static_cast<Int>(c.classes.size()) == rep.total}};
  }
  return r;
}

inline json cmd_zest_check(const Options& o) {
  auto d = datum_from_json(datum_or_default(o));
  auto r = skeletal_oracle(d);
  if (r.ok) return {{"ok", true}};
  json w = json::array();
  for (Int p : r.witness)
    w.push_back(json::array({element_json(d.base.group().element(p % d.base_order())),
                             element_json(d.grading.element(p / d.base_order()))}));
  return {{"ok", false}, {"check", r.check}, {"witness", w}, {"defect", r.defect}};
}

}  // namespace cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace cli;
  Options o;
  CLI::App app{"Eilenberg-MacLane cohomology, Picard groups and braided extensions", "emcoh"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--human", o.human, "indented JSON");
  app.add_flag("--timing", o.timing, "add wall-clock time to the report");

  std::string which;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&which, name] { which = name; });
    return s;
  };
  auto* coh = sub("cohomology", "H^n(A, m; M) with representatives");
  coh->add_option("--level", o.level, "ord, br, syl or sym");
  coh->add_option("--degree", o.degree);
  coh->add_option("--group", o.group, "invariant factors, e.g. 2,4");
  coh->add_option("--coeff", o.coeff, "coefficient group");
  coh->add_option("--cochain", o.cochain, "classify a cochain (JSON or @file)");
  coh->add_flag("--no-reps", o.no_reps);

  auto* st = sub("stable", "cohomology with k^x coefficients");
  st->add_option("--level", o.level);
  st->add_option("--degree", o.degree);
  st->add_option("--group", o.group);
  st->add_option("--base", o.base_n, "N of the Z/N model");
  st->add_option("--factor", o.factor, "stabilization factor e");
  st->add_flag("--no-reps", o.no_reps);

  auto* th = sub("theta", "theta maps on a degree-4 cocycle");
  th->add_option("--kind", o.kind, "sym, syl or br");
  th->add_option("--cochain", o.cochain);
  th->add_option("--factor", o.factor);

  auto* qd = sub("quad", "Quad(A, M), or data of one form");
  qd->add_option("--group", o.group);
  qd->add_option("--coeff", o.coeff);
  qd->add_option("--form", o.form, "JSON, @file, or zero/semion/radical");

  auto* gc = sub("groupcoh", "cohomology of a finite group");
  gc->add_option("--G", o.G, "invariant factors, D<2m>, Q8 or table JSON");
  gc->add_option("--coeff", o.coeff);
  gc->add_option("--degree", o.degree);
  gc->add_flag("--stable", o.stable, "k^x coefficients");
  gc->add_option("--base", o.base_n);
  gc->add_option("--factor", o.factor);

  auto* pc = sub("pic", "Picard group of Rep(G, t)");
  pc->add_option("--G", o.G);
  pc->add_option("--t", o.t, "central involution; e or 1 for the identity");

  auto* pb = sub("picbr", "braided Picard invariants");
  pb->add_option("--G", o.G);
  pb->add_option("--t", o.t);
  pb->add_option("--form", o.form, "pointed braided category C(A, q)");

  auto* pr = sub("pairing", "pairing <p, z> and Q(p)");
  pr->add_option("--G", o.G);
  pr->add_option("--t", o.t);
  pr->add_option("--class", o.cls, "coordinates in H^2");
  pr->add_option("--eps", o.eps, "split factor");
  pr->add_option("--z", o.z, "central element");

  auto* ex = sub("exsym", "symmetric extensions of Rep(G, t) by A");
  ex->add_option("--grading", o.grading);
  ex->add_option("--G", o.G);
  ex->add_option("--t", o.t);

  auto* zest = app.add_subcommand("zest", "quasi-trivial braided extensions");
  zest->require_subcommand(1);
  auto* zen = zest->add_subcommand("enumerate", "classes over (A0, q) graded by A");
  zen->callback([&which] { which = "zest enumerate"; });
  zen->add_option("--base", o.base, "base form: JSON, @file, or zero/semion/radical");
  zen->add_option("--grading", o.grading);
  zen->add_flag("--census", o.census, "also count coherent skeletal data directly");
  auto* zch = zest->add_subcommand("check", "skeletal coherence of one datum");
  zch->callback([&which] { which = "zest check"; });
  zch->add_option("--datum", o.datum, "JSON or @file; default the trivial datum");
  zch->add_option("--base", o.base);
  zch->add_option("--grading", o.grading);

  sub("selftest", "run the acceptance criteria");

  auto emit = [&](const json& j) { out << (o.human ? j.dump(2) : j.dump()) << "\n"; };
  auto fail = [&](int code, const char* kind, const std::string& msg) {
    emit({{"error", msg}, {"kind", kind}});
    err << "emcoh: " << msg << "\n";
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail(kValidation, "usage", e.what());
  }

  try {
    auto t0 = std::chrono::steady_clock::now();
    json r;
    int code = kOk;
    if (which == "cohomology") r = cmd_cohomology(o);
    else if (which == "stable") r = cmd_stable(o);
    else if (which == "theta") r = cmd_theta(o);
    else if (which == "quad") r = cmd_quad(o);
    else if (which == "groupcoh") r = cmd_groupcoh(o);
    else if (which == "pic") r = cmd_pic(o);
    else if (which == "picbr") r = cmd_picbr(o);
    else if (which == "pairing") r = cmd_pairing(o);
    else if (which == "exsym") r = cmd_exsym(o);
    else if (which == "zest enumerate") r = cmd_zest_enumerate(o);
    else if (which == "zest check") r = cmd_zest_check(o);
    else if (which == "selftest") {
      json crit = json::array();
      bool all = true;
      for (const auto& c : run_selftest()) {
        json e = {{"id", c.id}, {"title", c.title}, {"pass", c.pass()}, {"detail", c.detail}};
        if (o.timing) e["seconds"] = c.seconds;
        crit.push_back(e);
        all = all && c.pass();
      }
      r = {{"criteria", crit}, {"ok", all}};
      code = all ? kOk : kFailed;
    }
    json input = json::array();
    for (int i = 1; i < argc; ++i)
      if (std::string(argv[i]) != "--timing" && std::string(argv[i]) != "--human") input.push_back(argv[i]);
    r["input"] = input;
    if (o.timing)
      r["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(r);
    return code;
  } catch (const ValidationError& e) {
    return fail(kValidation, "validation", e.what());
  } catch (const json::exception& e) {
    return fail(kValidation, "validation", std::string("bad JSON input: ") + e.what());
  } catch (const SizeGuardError& e) {
    return fail(kSizeGuard, "size_guard", e.what());
  } catch (const ConsistencyError& e) {
    return fail(kConsistency, "consistency", e.what());
  } catch (const std::exception& e) {
    return fail(kConsistency, "internal", e.what());
  }
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"emcoh"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace emcoh
