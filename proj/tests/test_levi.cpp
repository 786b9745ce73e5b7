#include <doctest.h>

#include <orbitforge/levi.hpp>

#include <set>
#include <string>
#include <vector>

using namespace orbitforge;

namespace {

LeviPtr make(const std::string& type, const std::set<int>& gamma) {
  return make_levi(build_root_system(type), gamma);
}

// the catalog of (type, gamma) pairs the suites sweep
const std::vector<std::pair<std::string, std::set<int>>> kCatalog = {
    {"A1", {}},     {"A2", {}},  {"A2", {0}}, {"A3", {0, 2}}, {"A3", {1}},
    {"B2", {}},     {"B2", {1}}, {"D4", {1}}, {"G2", {}},
};

}  // namespace

TEST_CASE("full flag on A2: quasiroots mirror the roots") {
  auto levi = make("A2", {});
  CHECK(levi->quasiroots().size() == 6);
  CHECK(levi->n_qpositive() == 3);
  for (const auto& q : levi->quasiroots()) CHECK(levi->fiber(q).size() == 1);
  CHECK(levi->simple_quasiroots().size() == 2);
}

TEST_CASE("CP^2 datum: one quasiroot pair with a two-root fiber") {
  auto levi = make("A2", {0});
  CHECK(levi->quasiroots().size() == 2);
  auto f = levi->fiber(QCoords{1});
  REQUIRE(f.size() == 2);
  auto& rs = *levi->rs();
  std::set<Coords> roots{rs.root(f[0]), rs.root(f[1])};
  CHECK(roots == std::set<Coords>{{0, 1}, {1, 1}});
}

TEST_CASE("Gr(2,4) datum: single quasiroot pair, fiber of size 4") {
  auto levi = make("A3", {0, 2});
  CHECK(levi->quasiroots().size() == 2);
  CHECK(levi->fiber(QCoords{1}).size() == 4);
}

TEST_CASE("gamma = Pi is rejected as a degenerate orbit") {
  CHECK_THROWS_AS(make("A2", {0, 1}), DomainError);
  CHECK_THROWS_AS(make("A2", {0, 5}), UsageError);
}

TEST_CASE("subset classification on the A2 full flag") {
  auto levi = make("A2", {});
  QCoords a1{1, 0}, a2{0, 1}, a12{1, 1};

  auto lin = subset_classify(*levi, {a1, qcoords_neg(a1)});
  CHECK(lin.kind == SubsetVerdict::Kind::linear);

  auto semi = subset_classify(*levi, {a1, a2, a12});
  CHECK(semi.kind == SubsetVerdict::Kind::semilinear);

  std::set<QCoords> s{a1, a2, qcoords_neg(a12)};
  auto nei = subset_classify(*levi, s);
  CHECK(nei.kind == SubsetVerdict::Kind::neither);
  REQUIRE(nei.witness.has_value());
  // the witness is some genuinely violating pair, (a1, a2) among them
  auto [wx, wy] = *nei.witness;
  CHECK(s.count(wx));
  QCoords sum = qcoords_add(wx, wy);
  CHECK(levi->q_index(sum) >= 0);
  CHECK(!s.count(sum));

  CHECK_THROWS_AS(subset_classify(*levi, {QCoords{4, 4}}), UsageError);
}

TEST_CASE("quotients of the A2 full flag") {
  auto levi = make("A2", {});
  QCoords a1{1, 0}, a2{0, 1}, a12{1, 1};

  auto identity = quotient_by(*levi, {});
  CHECK(identity.classes.size() == 6);

  auto q = quotient_by(*levi, {a1, qcoords_neg(a1)});
  CHECK(q.classes.size() == 2);
  CHECK(q.projection.at(a2) == q.projection.at(a12));

  std::set<QCoords> all(levi->quasiroots().begin(), levi->quasiroots().end());
  auto empty = quotient_by(*levi, all);
  CHECK(empty.classes.empty());

  CHECK_THROWS_AS(quotient_by(*levi, {a1, a2, a12}), DomainError);
}

TEST_CASE("standard positive systems") {
  auto a2 = make("A2", {});
  auto ps = standard_positive(*a2);
  CHECK(ps.positive == std::vector<QCoords>{{1, 0}, {0, 1}, {1, 1}});
  CHECK(ps.simple == std::vector<QCoords>{{1, 0}, {0, 1}});

  auto cp2 = make("A2", {0});
  auto ps2 = standard_positive(*cp2);
  CHECK(ps2.positive == std::vector<QCoords>{{1}});
  CHECK(ps2.simple == std::vector<QCoords>{{1}});

  auto b2 = make("B2", {});
  auto ps3 = standard_positive(*b2);
  CHECK(ps3.positive.size() == 4);
  CHECK(ps3.simple.size() == 2);
}

TEST_CASE("Betti numbers via minimal coset representatives") {
  auto a2 = build_root_system("A2");
  CHECK(betti_numbers(*a2, {}) == std::vector<long>{1, 2, 2, 1});
  CHECK(betti_numbers(*a2, {0}) == std::vector<long>{1, 1, 1});
  auto a1 = build_root_system("A1");
  CHECK(betti_numbers(*a1, {}) == std::vector<long>{1, 1});
}

TEST_CASE("catalog invariants: fibers, simples, Betti degree two") {
  for (const auto& [type, gamma] : kCatalog) {
    CAPTURE(type);
    auto levi = make(type, gamma);
    const auto& rs = *levi->rs();

    size_t fiber_total = 0;
    for (const auto& q : levi->quasiroots()) {
      CHECK(levi->fiber(q).size() == levi->fiber(qcoords_neg(q)).size());
      fiber_total += levi->fiber(q).size();
    }
    CHECK(fiber_total == rs.roots().size() - levi->levi_roots().size());

    auto betti = betti_numbers(rs, gamma);
    CHECK(betti[0] == 1);
    CHECK(betti[1] ==
          static_cast<long>(levi->simple_quasiroots().size()));
    long total = 0;
    for (long b : betti) total += b;
    CHECK(total > 0);

    // standard positives are semilinear with unit simples
    auto ps = standard_positive(*levi);
    CHECK(ps.simple == levi->simple_quasiroots());
  }
}

TEST_CASE("bracket spans the target class for composable quasiroot pairs") {
  for (const auto& [type, gamma] : kCatalog) {
    CAPTURE(type);
    auto levi = make(type, gamma);
    const auto& rs = *levi->rs();
    for (const auto& q1 : levi->quasiroots())
      for (const auto& q2 : levi->quasiroots()) {
        QCoords s = qcoords_add(q1, q2);
        if (levi->q_index(s) < 0) continue;
        const auto& target = levi->fiber(s);
        std::map<int, int> col;  // root index -> column
        for (size_t k = 0; k < target.size(); ++k) col[target[k]] = k;
        RatMat span;
        for (int a : levi->fiber(q1))
          for (int b : levi->fiber(q2)) {
            int sum = rs.root_sum(a, b);
            if (sum < 0) continue;
            RatVec row(target.size(), Rat(0));
            row[col.at(sum)] = rs.n_const(a, b);
            span.push_back(std::move(row));
          }
        CHECK(exact_rank(span) == static_cast<int>(target.size()));
      }
  }
}
