#include <doctest.h>

#include <orbitforge/rootsystem.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

using namespace orbitforge;

namespace {

using Combo = std::map<int, Rat>;

Combo to_combo(const BasisCombo& c) {
  Combo m;
  for (const auto& [k, v] : c) {
    m[k] += v;
    if (m[k] == 0) m.erase(k);
  }
  return m;
}

// [[x,y],z] accumulated into acc with the given sign
void bracket_into(const RootSystem& rs, int x, int y, int z, Combo& acc) {
  for (const auto& [w, c] : rs.bracket_basis(x, y))
    for (const auto& [u, d] : rs.bracket_basis(w, z)) {
      acc[u] += c * d;
      if (acc[u] == 0) acc.erase(u);
    }
}

bool jacobi_holds(const RootSystem& rs) {
  const int n = rs.n_basis();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = y + 1; z < n; ++z) {
        Combo acc;
        bracket_into(rs, x, y, z, acc);
        bracket_into(rs, y, z, x, acc);
        bracket_into(rs, z, x, y, acc);
        if (!acc.empty()) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("root counts and closure match the classical tables") {
  const std::map<std::string, int> expected = {
      {"A1", 2},  {"A2", 6},  {"A3", 12}, {"A4", 20}, {"B2", 8},
      {"B3", 18}, {"C3", 18}, {"D4", 24}, {"G2", 12}, {"F4", 48}};
  for (const auto& [name, count] : expected) {
    auto rs = build_root_system(name);
    CHECK(rs->n_roots() == count);
    // the root set is symmetric, so the total sum vanishes
    Coords sum(rs->rank(), 0);
    for (int r = 0; r < rs->n_roots(); ++r)
      for (int i = 0; i < rs->rank(); ++i) sum[i] += rs->root(r)[i];
    CHECK(sum == Coords(rs->rank(), 0));
  }
}

TEST_CASE("illegal (series, rank) pairs are rejected") {
  CHECK_THROWS_AS(build_root_system("B1"), UsageError);
  CHECK_THROWS_AS(build_root_system("C2"), UsageError);
  CHECK_THROWS_AS(build_root_system("D3"), UsageError);
  CHECK_THROWS_AS(build_root_system("E5"), UsageError);
  CHECK_THROWS_AS(build_root_system("E9"), UsageError);
  CHECK_THROWS_AS(build_root_system("F5"), UsageError);
  CHECK_THROWS_AS(build_root_system("G3"), UsageError);
  CHECK_THROWS_AS(build_root_system("A0"), UsageError);
  CHECK_THROWS_AS(build_root_system("X2"), UsageError);
  CHECK_THROWS_AS(build_root_system("A"), UsageError);
}

TEST_CASE("highest roots") {
  CHECK(build_root_system("A1")->root(build_root_system("A1")->highest_root()) ==
        Coords{1});
  CHECK(build_root_system("A2")->root(build_root_system("A2")->highest_root()) ==
        Coords{1, 1});
  auto g2 = build_root_system("G2");
  CHECK(g2->root(g2->highest_root()) == Coords{3, 2});  // alpha_1 short
  auto b2 = build_root_system("B2");
  CHECK(b2->root(b2->highest_root()) == Coords{1, 2});
  auto d4 = build_root_system("D4");
  CHECK(d4->root(d4->highest_root()) == Coords{1, 2, 1, 1});
  auto f4 = build_root_system("F4");
  CHECK(f4->root(f4->highest_root()) == Coords{2, 3, 4, 2});
}

TEST_CASE("A1: two roots, empty n-table, sl2 triple") {
  auto rs = build_root_system("A1");
  CHECK(rs->n_roots() == 2);
  CHECK(rs->n_const(0, 1) == 0);
  // [e_a, e_{-a}] = coroot h_1
  auto h = to_combo(lie_bracket(*rs, {false, 0}, {false, 1}));
  CHECK(h.size() == 1);
  CHECK(h.at(rs->n_roots() + 0) == 1);
  // [x, x] = 0
  CHECK(rs->bracket_basis(0, 0).empty());
}

TEST_CASE("A2: N_{a1,a2} = +-1 and the bracket lands on a1+a2") {
  auto rs = build_root_system("A2");
  int a1 = rs->root_index({1, 0});
  int a2 = rs->root_index({0, 1});
  int a12 = rs->root_index({1, 1});
  REQUIRE(a1 >= 0);
  REQUIRE(a12 >= 0);
  auto br = to_combo(lie_bracket(*rs, {false, a1}, {false, a2}));
  REQUIRE(br.size() == 1);
  CHECK((br.at(a12) == 1 || br.at(a12) == -1));
  CHECK(rs->n_const(a1, a2) == -rs->n_const(a2, a1));
}

TEST_CASE("structure constant table properties") {
  for (const std::string name : {"A3", "B2", "B3", "C3", "D4", "G2", "F4"}) {
    auto rs = build_root_system(name);
    const int n = rs->n_roots();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b || b == rs->negate(a)) continue;
        int s = rs->root_sum(a, b);
        int v = rs->n_const(a, b);
        if (s < 0) {
          CHECK(v == 0);
          continue;
        }
        CHECK(v != 0);
        CHECK(v == -rs->n_const(b, a));
        CHECK(v == -rs->n_const(rs->negate(a), rs->negate(b)));
        // |N_{a,b}| = p+1 with p the down-string length
        int p = 0;
        Coords c = rs->root(b);
        while (true) {
          for (int i = 0; i < rs->rank(); ++i) c[i] -= rs->root(a)[i];
          if (rs->root_index(c) < 0) break;
          ++p;
        }
        CHECK(std::abs(v) == p + 1);
      }
  }
}

TEST_CASE("Jacobi identity holds exactly on the full bracket table") {
  for (const std::string name :
       {"A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"}) {
    CAPTURE(name);
    CHECK(jacobi_holds(*build_root_system(name)));
  }
}

TEST_CASE("kappa is positive and constant on roots of equal length") {
  for (const std::string name : {"A2", "B2", "C3", "D4", "G2", "F4"}) {
    auto rs = build_root_system(name);
    std::map<Rat, Rat> by_length;
    for (int r = 0; r < rs->n_roots(); ++r) {
      CHECK(rs->kappa(r) > 0);
      auto [it, fresh] = by_length.emplace(rs->length_sq(r), rs->kappa(r));
      if (!fresh) CHECK(it->second == rs->kappa(r));
    }
    CHECK(rs->kappa(0) == rs->kappa(rs->negate(0)));
  }
}

TEST_CASE("A1 kappa equals the sl2 Killing pairing") {
  auto rs = build_root_system("A1");
  CHECK(rs->kappa(0) == 4);  // Tr(ad e . ad f) in sl2
}

TEST_CASE("cartan matrix is the Bourbaki one") {
  auto g2 = build_root_system("G2");
  CHECK(g2->cartan(0, 1) == -3);
  CHECK(g2->cartan(1, 0) == -1);
  auto b2 = build_root_system("B2");
  CHECK(b2->cartan(0, 1) == -1);
  CHECK(b2->cartan(1, 0) == -2);
  auto f4 = build_root_system("F4");
  CHECK(f4->cartan(1, 2) == -1);
  CHECK(f4->cartan(2, 1) == -2);
}
