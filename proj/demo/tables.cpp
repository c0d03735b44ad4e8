#include <cstdio>

#include "emcoh/extensions.hpp"

using namespace emcoh;

int main() {
  const auto z2 = FinAbGroup::parse("2"), m = FinAbGroup::parse("8");
  std::printf("H^n(Z/2; Z/8) for n = 0..4\n");
  for (auto level : {Level::ordinary, Level::braided, Level::sylleptic, Level::symmetric}) {
    std::printf("  %-4s", level_name(level).c_str());
    for (int n = 0; n <= 4; ++n) std::printf(" %6s", cohomology(z2, m, level, n).invariants().literal().c_str());
    std::printf("\n");
  }

  std::printf("\nstable H^3_br(A, k^x) = Quad(A, Q/Z)\n");
  for (auto a : {"2", "3", "4", "2,2", "2,4"})
    std::printf("  A = %-4s %s\n", a, stable_cohomology(FinAbGroup::parse(a), Level::braided, 3).invariants().literal().c_str());

  std::printf("\nPic(Rep(G, t))\n");
  struct Row {
    const char* name;
    FiniteGroup g;
    Int t;
  };
  for (const auto& r : {Row{"Z/2, t = 1", FiniteGroup::abelian(z2), 0}, Row{"Z/2, t = (1)", FiniteGroup::abelian(z2), 1},
                        Row{"Z/2^2, t = 1", FiniteGroup::abelian(FinAbGroup::parse("2,2")), 0},
                        Row{"D8, t = r2", FiniteGroup::dihedral(4), 2}, Row{"Q8, t = -1", FiniteGroup::quaternion(), 4}})
    std::printf("  %-14s %s\n", r.name, pic(symmetric_data(r.g, r.t)).invariants().literal().c_str());

  std::printf("\nquasi-trivial Z/2-extensions\n");
  struct Base {
    const char* name;
    QuadraticForm q;
  };
  for (const auto& b : {Base{"(Z/2, 0)", QuadraticForm::from_generators(z2, m, {{0}}, {})},
                        Base{"semion", QuadraticForm::from_generators(z2, m, {{2}}, {})}}) {
    auto rep = enumerate_quasi_trivial(b.q, z2);
    std::printf("  %-9s %lld classes in %zu orbits\n", b.name, static_cast<long long>(rep.total), rep.orbits.size());
  }
}
