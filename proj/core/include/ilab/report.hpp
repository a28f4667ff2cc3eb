#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ilab {

enum class CaseStatus { pass, fail, inconclusive };
std::string_view to_string(CaseStatus s);
CaseStatus parse_case_status(std::string_view s);

/// One check. `statement` is a short stable anchor for the result being
/// checked ("aug-containment", "index-bounds", ...); `basis` says where the
/// expected value comes from: "statement" (a claim under test), "oracle"
/// (a committed fixture from the brute-force oracle) or "axiom".
struct CaseResult {
  std::string id;
  std::string statement;
  std::string basis;
  std::string expected;
  std::string computed;
  CaseStatus status = CaseStatus::pass;
  std::string detail;
  double runtime_ms = 0;
};

/// A row of the index table.
struct IndexRow {
  std::string group;
  std::string p;
  std::string derived_order;
  std::string t;
  std::string t_upper;
  std::string t_nil;
  std::string cl;
  std::string verdict;
};

struct Report {
  std::string suite;
  std::string group;
  std::string kernel;
  std::string field;
  unsigned long long seed = 0;
  std::vector<CaseResult> cases;
  std::vector<IndexRow> rows;

  std::size_t count(CaseStatus s) const;
  /// 0 all pass, 1 any failure, 2 inconclusive cases (and no failures) unless allowed.
  int exit_code(bool allow_inconclusive) const;
  /// Cases ordered by id; rows ordered by group name.
  void normalize();
};

/// Runtimes are written only when `timings` is set, so the default output is byte-stable.
std::string to_json(const Report& r, bool timings = false);
Report report_from_json(std::string_view text);
std::string to_markdown(const Report& r, bool timings = false);

}  // namespace ilab
