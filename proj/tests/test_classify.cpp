#include <doctest.h>

#include <algorithm>
#include <set>

#include "k3cover/classify.hpp"
#include "k3cover/errors.hpp"

using namespace k3cover;

namespace {
BranchDatum datum(std::vector<BranchPair> pairs) { return BranchDatum{std::move(pairs)}; }
}  // namespace

TEST_CASE("enumeration: exactly the eight solutions, in report order") {
  auto data = enumerate_branch_data();
  REQUIRE(data.size() == 8);
  CHECK(data[0].str() == "(6,2)");
  CHECK(data[1].str() == "(4,4)");
  CHECK(data[2].str() == "(4,2|2,2)");
  CHECK(data[3].str() == "(3,2|3,2)");
  CHECK(data[4].str() == "(3,3|2,2)");
  CHECK(data[5].str() == "(3,2|2,4)");
  CHECK(data[6].str() == "(2,4|2,4)");
  CHECK(data[7].str() == "(2,2|2,2|2,2)");
  for (const BranchDatum& bd : data) {
    CHECK(bd.satisfies_branch_identity());
    CHECK(bd.components() <= 6);
  }
}

TEST_CASE("enumeration is complete: independent loop with interchanged nesting") {
  // Re-derive the list by iterating orders first and degrees innermost,
  // assembling unordered multisets.
  std::set<std::multiset<std::pair<int, int>>> independent;
  // Up to 6 components, each weight d*(12 - 12/n) with total 36.
  std::function<void(std::multiset<std::pair<int, int>>&, int)> rec =
      [&](std::multiset<std::pair<int, int>>& acc, int left) {
        if (left == 0) {
          if (!acc.empty()) independent.insert(acc);
          return;
        }
        if (acc.size() == 6) return;
        for (int n : {2, 3, 4})
          for (int d = 2; d <= 8; ++d) {
            int w = d * (12 - 12 / n);
            if (w > left) continue;
            auto it = acc.insert({n, d});
            rec(acc, left - w);
            acc.erase(it);
          }
      };
  std::multiset<std::pair<int, int>> acc;
  rec(acc, 36);

  std::set<std::multiset<std::pair<int, int>>> from_library;
  for (const BranchDatum& bd : enumerate_branch_data()) {
    std::multiset<std::pair<int, int>> m;
    for (const BranchPair& p : bd.pairs) m.insert({p.order, p.degree});
    from_library.insert(m);
  }
  CHECK(independent == from_library);
}

TEST_CASE("fixed-order sublists match the case analysis") {
  // All orders 2, three components: only the triple of conics.
  int count = 0;
  for (const BranchDatum& bd : enumerate_branch_data()) {
    if (bd.components() == 3 &&
        std::all_of(bd.pairs.begin(), bd.pairs.end(),
                    [](const BranchPair& p) { return p.order == 2; })) {
      ++count;
      CHECK(bd.str() == "(2,2|2,2|2,2)");
    }
  }
  CHECK(count == 1);
  // One component of order 4: degree 4 only.
  for (const BranchDatum& bd : enumerate_branch_data())
    if (bd.components() == 1 && bd.pairs[0].order == 4) CHECK(bd.pairs[0].degree == 4);
}

TEST_CASE("quotient Euler solutions") {
  CHECK(quotient_euler_solutions(4) == std::vector<std::pair<int, int>>{{3, 3}});
  CHECK(quotient_euler_solutions(5).empty());
  CHECK(quotient_euler_solutions(3) == std::vector<std::pair<int, int>>{{4, 4}});
  auto n2 = quotient_euler_solutions(2);
  CHECK(n2.size() == 9);  // chi + g = 13, chi in 3..11
  for (auto [chi, g] : n2) CHECK(chi + g == 13);
  CHECK_THROWS_AS(quotient_euler_solutions(1), InputError);
}

TEST_CASE("stratified Euler characteristics: the frozen values") {
  CHECK(stratified_euler_char(datum({{4, 4}})) == 24);
  CHECK(stratified_euler_char(datum({{2, 4}, {2, 4}})) == 36);
  CHECK(stratified_euler_char(datum({{2, 2}, {2, 2}, {2, 2}})) == 24);
  CHECK(stratified_euler_char(datum({{3, 3}, {2, 2}})) == 24);
  CHECK(stratified_euler_char(datum({{6, 2}})) == 24);   // the double-sextic cover
  CHECK(stratified_euler_char(datum({{4, 2}, {2, 2}})) == 24);
  CHECK(stratified_euler_char(datum({{3, 2}, {3, 2}})) == 21);
  CHECK(stratified_euler_char(datum({{3, 2}, {2, 4}})) == 30);
  CHECK_THROWS_AS(stratified_euler_char(datum({{0, 2}})), InputError);
  CHECK_THROWS_AS(stratified_euler_char(datum({{2, 1}})), InputError);
}

TEST_CASE("parity rule") {
  CHECK(parity_failure(datum({{3, 2}, {2, 4}})) == 0);   // cubic under an even factor
  CHECK_FALSE(parity_failure(datum({{3, 3}, {2, 2}})));  // branch degree 2: pass
  CHECK_FALSE(parity_failure(datum({{2, 2}, {2, 2}, {2, 2}})));
}

TEST_CASE("classify_all: eight rows, three admissible, unique reasons") {
  auto rows = classify_all();
  REQUIRE(rows.size() == 8);
  int admissible = 0;
  for (const auto& v : rows) admissible += v.admissible ? 1 : 0;
  CHECK(admissible == 3);

  auto find = [&](const std::string& s) -> const ExclusionVerdict& {
    for (const auto& v : rows)
      if (v.datum.str() == s) return v;
    throw std::runtime_error("row missing: " + s);
  };
  CHECK(find("(6,2)").reason == ExclusionReason::DegreeTooSmall);
  CHECK(find("(4,4)").admissible);
  CHECK(find("(4,4)").group_label == "Z4");
  CHECK(find("(4,4)").surface_label == "S(4)");
  CHECK(find("(4,2|2,2)").reason == ExclusionReason::HypersurfaceCyclic);
  CHECK(find("(3,2|3,2)").reason == ExclusionReason::EulerChar);
  CHECK(find("(3,3|2,2)").admissible);
  CHECK(find("(3,3|2,2)").group_label == "Z6");
  CHECK(find("(3,3|2,2)").surface_label == "S(23)");
  CHECK(find("(3,2|2,4)").reason == ExclusionReason::EulerChar);
  CHECK(find("(2,4|2,4)").reason == ExclusionReason::EulerChar);
  CHECK(find("(2,2|2,2|2,2)").admissible);
  CHECK(find("(2,2|2,2|2,2)").group_label == "Z2^3");
  CHECK(find("(2,2|2,2|2,2)").surface_label == "S(222)");

  // Deterministic and idempotent.
  auto again = classify_all();
  REQUIRE(again.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(again[i].datum == rows[i].datum);
    CHECK(again[i].reason == rows[i].reason);
    CHECK(again[i].derivation == rows[i].derivation);
  }
}

TEST_CASE("diagnostic mode keeps the line-branch rows, each excluded") {
  auto rows = classify_all(true);
  CHECK(rows.size() > 8);
  int admissible = 0, line_rows = 0;
  for (const auto& v : rows) {
    admissible += v.admissible ? 1 : 0;
    bool has_line = std::any_of(v.datum.pairs.begin(), v.datum.pairs.end(),
                                [](const BranchPair& p) { return p.degree == 1; });
    if (has_line) {
      ++line_rows;
      CHECK(v.reason == ExclusionReason::LineBranch);
    }
  }
  CHECK(admissible == 3);  // the extra rows change nothing
  CHECK(line_rows > 0);
}
