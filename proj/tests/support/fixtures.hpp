#ifndef TREECOMP_TESTS_FIXTURES_HPP_
#define TREECOMP_TESTS_FIXTURES_HPP_

#include "oracles.hpp"
#include "treecomp/source_model.hpp"

namespace fixture {

using namespace treecomp;

// X, Y uniform over ordered pairs of distinct letters in {1,2,3,4}; the root
// holds Y and wants [x > y].
inline Instance point_to_point() {
  const std::vector<std::string> l{"1", "2", "3", "4"};
  Pmf pmf;
  std::map<Tuple, int> f;
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      f[{x, y}] = x > y ? 1 : 0;
      if (x != y) pmf[{x, y}] = Rational(1, 12);
    }
  }
  return Instance(RootedTree({1, 2}, {{1, 2}}, 2), SourceModel({1, 2}, {l, l}, pmf),
                  FunctionTable({"0", "1"}, f));
}

inline RootedTree reference_tree() {
  return RootedTree({1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
                    {{1, 5}, {2, 5}, {3, 7}, {4, 7}, {5, 8}, {6, 8}, {7, 9}, {8, 10}, {9, 10}},
                    10);
}

// Two independent fair bits, a root without a source, f = x1 xor x2.
inline Instance xor_star() {
  Pmf pmf;
  std::map<Tuple, int> f;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      pmf[{a, b, 0}] = Rational(1, 4);
      f[{a, b, 0}] = a ^ b;
    }
  }
  return Instance(RootedTree({1, 2, 3}, {{1, 3}, {2, 3}}, 3),
                  SourceModel({1, 2, 3}, {{"0", "1"}, {"0", "1"}, {"0"}}, pmf),
                  FunctionTable({"0", "1"}, f));
}

// Path 1 -> 2 -> 3 with a binary symmetric chain (crossover 1/4).
inline Instance symmetric_chain(std::map<Tuple, int> f = {}) {
  Pmf pmf;
  auto step = [](int a, int b) { return a == b ? Rational(3, 4) : Rational(1, 4); };
  for (const auto& x : oracle::all_tuples({2, 2, 2})) {
    pmf[x] = Rational(1, 2) * step(x[1], x[2]) * step(x[0], x[1]);
    if (!f.count(x)) f[x] = (x[0] + x[1] + x[2]) >= 2 ? 1 : 0;
  }
  return Instance(RootedTree({1, 2, 3}, {{1, 2}, {2, 3}}, 3),
                  SourceModel({1, 2, 3}, {{"0", "1"}, {"0", "1"}, {"0", "1"}}, pmf),
                  FunctionTable({"0", "1"}, f));
}

// Star with a constant root source and X1 = X2 uniform: not Markov at 3.
inline Instance copied_leaves() {
  Pmf pmf{{{0, 0, 0}, Rational(1, 2)}, {{1, 1, 0}, Rational(1, 2)}};
  std::map<Tuple, int> f;
  for (const auto& x : oracle::all_tuples({2, 2, 1})) f[x] = x[0];
  return Instance(RootedTree({1, 2, 3}, {{1, 3}, {2, 3}}, 3),
                  SourceModel({1, 2, 3}, {{"0", "1"}, {"0", "1"}, {"0"}}, pmf),
                  FunctionTable({"0", "1"}, f));
}

}  // namespace fixture

#endif  // TREECOMP_TESTS_FIXTURES_HPP_
