#include <doctest.h>

#include "oracle.hpp"
#include "sawlab/codec.hpp"
#include "sawlab/two_part.hpp"

using namespace sawlab;

namespace {

Walk from_path(const oracle::Path& p) {
  std::vector<LatticePoint> v;
  for (const auto& q : p) {
    LatticePoint x(static_cast<int>(q.size()));
    for (std::size_t i = 0; i < q.size(); ++i) x[static_cast<int>(i)] = q[i];
    v.push_back(x);
  }
  return Walk::from_vertices(v);
}

}  // namespace

TEST_CASE("decompose small examples") {
  Walk w = parse_walk("d=2;origin=0,0;steps=EN");
  Decomposition dec = decompose(w);
  CHECK(dec.meeting == LatticePoint{1, 1});
  CHECK(dec.first.length() == 0);
  CHECK(dec.first.origin() == LatticePoint{1, 1});
  CHECK(dec.second == reverse_walk(w));
  CHECK(compose(dec) == w);

  Decomposition zero = decompose(Walk::trivial(LatticePoint{2, 3}));
  CHECK(zero.first.length() == 0);
  CHECK(zero.second.length() == 0);
  CHECK(compose(zero).length() == 0);

  // Parts leaving NE westwards rank first even against an empty part.
  Walk west = parse_walk("d=2;origin=0,0;steps=WS");
  CHECK(decompose(west).first == west);
}

TEST_CASE("compose rejects intersecting parts") {
  Decomposition bad{parse_walk("d=2;origin=0,0;steps=WS"), parse_walk("d=2;origin=0,0;steps=SW"),
                    LatticePoint{0, 0}, true};
  CHECK_THROWS(compose(bad));
}

TEST_CASE("compose inverts decompose on SAW_6") {
  std::size_t checked = 0;
  oracle::walks(6, 2, [&](const oracle::Path& p) {
    Walk w = from_path(p);
    Decomposition dec = decompose(w);
    REQUIRE(compose(dec) == w);
    Decomposition again = decompose(compose(dec));
    REQUIRE(again.first == dec.first);
    REQUIRE(again.second == dec.second);
    ++checked;
  });
  CHECK(checked == 780);
}

TEST_CASE("first-part bullets on SAW^0_8") {
  std::size_t failures = 0;
  EngineOptions opt;
  opt.delivery = Delivery::Serialized;
  enumerate_saw(
      8, 2, Constraint::ne_at_origin(),
      [&](const WalkView& v) {
        Decomposition dec = decompose(v.to_walk());
        const Walk& f = dec.first;
        if (f.length() == 0) return;
        bool ok = f[0] == LatticePoint{0, 0} && f[1] == LatticePoint{-1, 0};
        for (std::size_t i = 0; i <= f.length(); ++i) {
          ok = ok && f[i][1] <= 0;
          if (i >= 1) ok = ok && !(f[i][1] == 0 && f[i][0] >= 0);
        }
        failures += !ok;
      },
      opt);
  CHECK(failures == 0);
}

TEST_CASE("closing first-length histogram is flat") {
  for (std::size_t n : {3, 5, 7}) {
    auto h = closing_first_length_histogram(n, 2);
    REQUIRE(h.size() == n + 1);
    for (const auto& b : h) CHECK(b == h.front());
    BigInt sum = 0;
    for (const auto& b : h) sum += b;
    CHECK(sum == closing_probabilities(n, 2).closing_walks);
  }
}

TEST_CASE("cyclic shift") {
  Walk sq = parse_walk("d=2;origin=0,0;steps=ENW");
  Walk s1 = cyclic_shift(sq, 1);
  CHECK(s1 == Walk::from_vertices({{1, 0}, {1, 1}, {0, 1}, {0, 0}}));
  CHECK(cyclic_shift(sq, 4) == sq);
  CHECK_THROWS(cyclic_shift(parse_walk("d=2;origin=0,0;steps=EE"), 1));
  std::size_t checked = 0;
  oracle::walks(5, 2, [&](const oracle::Path& p) {
    if (!oracle::nbr(p.front(), p.back())) return;
    Walk w = from_path(p);
    Polygon base = Polygon::from_closing_walk(w);
    for (std::size_t j = 0; j <= 6; ++j) {
      Walk s = cyclic_shift(w, j);
      REQUIRE(is_closing(s));
      REQUIRE(Polygon::from_closing_walk(s) == base);
      ++checked;
    }
  });
  CHECK(checked > 0);
}

TEST_CASE("polygon path convention") {
  Polygon sq = Polygon::from_edges({Edge({0, 0}, {-1, 0}), Edge({-1, 0}, {-1, -1}), Edge({-1, -1}, {0, -1}),
                                    Edge({0, -1}, {0, 0})});
  CHECK(polygon_to_path(sq) == Walk::from_vertices({{0, 0}, {-1, 0}, {-1, -1}, {0, -1}, {0, 0}}));
  EngineOptions opt;
  opt.delivery = Delivery::Serialized;
  enumerate_polygons(
      12, 2,
      [&](const WalkView& v) {
        Walk path = v.to_walk();
        Polygon p = Polygon::from_closed_path(path);
        Walk t = polygon_to_path(p);
        CHECK(t[1] == LatticePoint{-1, 0});
        CHECK(t[t.length() - 1] == LatticePoint{0, -1});
        CHECK(Polygon::from_closed_path(t) == p);
      },
      opt);
}
