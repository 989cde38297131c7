#pragma once

// Hand-written DPFUZZ1 traces with their expected parse results.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace corpus {

struct Valid {
  std::string text;
  std::vector<std::uint64_t> edges;  // sorted, unique
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t cost;
};

struct Invalid {
  std::string text;
  std::size_t line;  // line the parser must blame
};

inline std::vector<Valid> valid_traces() {
  std::string many = "DPFUZZ1\n";
  std::vector<std::uint64_t> many_edges;
  for (std::uint64_t e = 100; e > 0; --e) {
    many += "EDGE " + std::to_string(e * 7) + "\n";
    many_edges.insert(many_edges.begin(), e * 7);
  }
  many += "COST 700\n";
  return {
      {"DPFUZZ1\nEDGE 3\nEDGE 7\nCOST 42\n", {3, 7}, {}, 42},
      {"DPFUZZ1\nCOST 0\n", {}, {}, 0},
      {"DPFUZZ1\nCOST 0", {}, {}, 0},
      {"DPFUZZ1\nEDGE 7\nEDGE 3\nEDGE 7\nCOST 1\n", {3, 7}, {}, 1},
      {"DPFUZZ1\nCOUNT loopA 14\nCOST 5\n", {}, {{"loopA", 14}}, 5},
      {"DPFUZZ1\nEDGE 1\nCOUNT a 1\nCOUNT b.c:d_e 2\nCOST 9\n", {1}, {{"a", 1}, {"b.c:d_e", 2}}, 9},
      {"DPFUZZ1\nEDGE 18446744073709551615\nCOST 1\n", {18446744073709551615ULL}, {}, 1},
      {"DPFUZZ1\nCOST 18446744073709551615\n", {}, {}, 18446744073709551615ULL},
      {many, many_edges, {}, 700},
      {"DPFUZZ1\nCOUNT idle 0\nCOST 3\n", {}, {{"idle", 0}}, 3},
      {"DPFUZZ1\nEDGE 0\nCOST 0\n", {0}, {}, 0},
      {"DPFUZZ1\nCOUNT 123 4\nCOST 4\n", {}, {{"123", 4}}, 4},
      {"DPFUZZ1\nEDGE 007\nCOST 010\n", {7}, {}, 10},
      {"DPFUZZ1\nCOUNT ABC 1\nCOUNT abc 2\nCOST 3\n", {}, {{"ABC", 1}, {"abc", 2}}, 3},
      {"DPFUZZ1\nCOUNT optimize.if_np.max:absgrad 15\nCOST 15\n", {}, {{"optimize.if_np.max:absgrad", 15}}, 15},
      {"DPFUZZ1\nEDGE 4294967298\nEDGE 1\nCOST 2\n", {1, 4294967298ULL}, {}, 2},
      {"DPFUZZ1\nCOUNT c0 0\nCOUNT c1 1\nCOUNT c2 2\nCOUNT c3 3\nCOUNT c4 4\nCOUNT c5 5\nCOUNT c6 6\nCOUNT c7 7\n"
       "COUNT c8 8\nCOUNT c9 9\nCOST 45\n",
       {},
       {{"c0", 0}, {"c1", 1}, {"c2", 2}, {"c3", 3}, {"c4", 4}, {"c5", 5}, {"c6", 6}, {"c7", 7}, {"c8", 8}, {"c9", 9}},
       45},
      {"DPFUZZ1\nEDGE 5\nEDGE 6\nEDGE 5\nEDGE 6\nCOST 11\n", {5, 6}, {}, 11},
      {"DPFUZZ1\nCOUNT z 1\nCOUNT a 2\nCOST 0\n", {}, {{"a", 2}, {"z", 1}}, 0},
      {"DPFUZZ1\nEDGE 2\nEDGE 9\nCOUNT _ 1\nCOST 1", {2, 9}, {{"_", 1}}, 1},
  };
}

inline std::vector<Invalid> invalid_traces() {
  return {
      {"", 1},
      {"EDGE 3\nCOST 1\n", 1},
      {"DPFUZZ2\nCOST 1\n", 1},
      {"DPFUZZ1\nEDGE 3\n", 3},
      {"DPFUZZ1\n", 2},
      {"DPFUZZ1\nCOUNT a 1\nEDGE 3\nCOST 1\n", 3},
      {"DPFUZZ1\nEDGE x\nCOST 1\n", 2},
      {"DPFUZZ1\r\nCOST 1\r\n", 1},
      {"DPFUZZ1\nEDGE 18446744073709551616\nCOST 1\n", 2},
      {"DPFUZZ1\nCOUNT a-b 1\nCOST 1\n", 2},
      {"DPFUZZ1\nCOUNT a\nCOST 1\n", 2},
      {"DPFUZZ1\nCOST 1\nEDGE 2\n", 3},
      {"DPFUZZ1\nCOST 1\nCOST 2\n", 3},
      {"DPFUZZ1\nFOO 1\nCOST 1\n", 2},
      {"DPFUZZ1\n\nCOST 1\n", 2},
      {"DPFUZZ1\nEDGE  3\nCOST 1\n", 2},
      {"DPFUZZ1\nEDGE 1\nCOST\n", 3},
      {"DPFUZZ1\nCOUNT a 1\nCOUNT a 2\nCOST 1\n", 3},
      {"DPFUZZ1\nEDGE 3 4\nCOST 1\n", 2},
      {"DPFUZZ1\nCOST 1\n\n", 3},
  };
}

}  // namespace corpus
