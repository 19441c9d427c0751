#include <random>

#include "doctest.h"
#include "hierdist/dynamic_forest.hpp"

using namespace hierdist;

TEST_CASE("link, cut and root") {
  DynamicForest f;
  const NodeId a = f.add_node();
  const NodeId b = f.add_node();
  CHECK(f.root(a) == a);
  CHECK(f.dist(a) == 0);
  f.link(a, b, 5);
  CHECK(f.root(a) == b);
  f.cut(a);
  CHECK(f.root(a) == a);
  CHECK(f.parent(a) == kNoNode);
  CHECK_THROWS(f.cut(a));
  f.link(a, b, 1);
  const NodeId c = f.add_node();
  CHECK_THROWS(f.link(a, c, 1));  // a is not a root
  CHECK_THROWS(f.link(b, a, 1));  // would close a cycle
}

TEST_CASE("path sums, including negative weights") {
  DynamicForest f;
  const NodeId a = f.add_node();
  const NodeId b = f.add_node();
  const NodeId c = f.add_node();
  f.link(a, b, 3);
  f.link(b, c, 4);
  CHECK(f.dist(a) == 7);
  CHECK(f.dist(b) == 4);
  CHECK(f.root(a) == c);

  DynamicForest g;
  const NodeId x = g.add_node();
  const NodeId y = g.add_node();
  g.link(x, y, -2);
  CHECK(g.dist(x) == -2);
}

TEST_CASE("nearest marked node") {
  DynamicForest f;
  const NodeId r = f.add_node();
  const NodeId l1 = f.add_node();
  const NodeId l2 = f.add_node();
  const NodeId l3 = f.add_node();
  f.link(l1, r, 5);
  f.link(l2, r, 3);
  f.link(l3, r, 3);
  CHECK_FALSE(f.find_nearest_marked(r).has_value());
  f.mark(l1);
  f.mark(l3);
  CHECK(f.find_nearest_marked(r) == MarkedHit{l3, 3});
  f.mark(l2);
  CHECK(f.find_nearest_marked(r) == MarkedHit{l2, 3});  // tie goes to the lower id
  f.unmark(l2);
  f.unmark(l3);
  CHECK(f.find_nearest_marked(r) == MarkedHit{l1, 5});
  f.cut(l1);
  CHECK_FALSE(f.find_nearest_marked(r).has_value());
  CHECK(f.find_nearest_marked(l1) == MarkedHit{l1, 0});
}

TEST_CASE("randomized operations agree with a naive forest") {
  std::mt19937_64 rng(7);
  DynamicForest f;
  std::vector<NodeId> par;
  std::vector<Weight> up;
  std::vector<bool> mark;
  const int n = 40;
  for (int i = 0; i < n; ++i) {
    f.add_node();
    par.push_back(kNoNode);
    up.push_back(0);
    mark.push_back(false);
  }
  auto root = [&](NodeId x) {
    while (par[x] != kNoNode) x = par[x];
    return x;
  };
  auto dist = [&](NodeId x) {
    Weight s = 0;
    while (par[x] != kNoNode) {
      s += up[x];
      x = par[x];
    }
    return s;
  };
  std::uniform_int_distribution<NodeId> node(0, n - 1);
  std::uniform_int_distribution<Weight> weight(-20, 50);
  for (int step = 0; step < 20000; ++step) {
    const NodeId x = node(rng);
    switch (rng() % 5) {
      case 0: {
        const NodeId y = node(rng);
        if (par[x] == kNoNode && root(y) != x) {
          const Weight w = weight(rng);
          f.link(x, y, w);
          par[x] = y;
          up[x] = w;
        }
        break;
      }
      case 1:
        if (par[x] != kNoNode) {
          f.cut(x);
          par[x] = kNoNode;
        }
        break;
      case 2:
        if (mark[x]) {
          f.unmark(x);
        } else {
          f.mark(x);
        }
        mark[x] = !mark[x];
        break;
      case 3:
        REQUIRE(f.root(x) == root(x));
        REQUIRE(f.dist(x) == dist(x));
        break;
      default: {
        std::optional<MarkedHit> expect;
        const Weight base = dist(x);
        for (NodeId y = 0; y < n; ++y) {
          NodeId z = y;
          while (z != kNoNode && z != x) z = par[z];
          if (z != x || !mark[y]) continue;
          const Weight d = dist(y) - base;
          if (!expect || d < expect->dist) expect = MarkedHit{y, d};
        }
        REQUIRE(f.find_nearest_marked(x) == expect);
      }
    }
  }
}
