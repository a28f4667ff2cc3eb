#include "ilab/report.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace ilab {

using json = nlohmann::ordered_json;

std::string_view to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::pass: return "pass";
    case CaseStatus::fail: return "fail";
    case CaseStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

CaseStatus parse_case_status(std::string_view s) {
  if (s == "pass") return CaseStatus::pass;
  if (s == "fail") return CaseStatus::fail;
  if (s == "inconclusive") return CaseStatus::inconclusive;
  throw std::invalid_argument(fmt::format("unknown case status '{}'", s));
}

std::size_t Report::count(CaseStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [&](const CaseResult& c) { return c.status == s; }));
}

int Report::exit_code(bool allow_inconclusive) const {
  if (count(CaseStatus::fail) > 0) return 1;
  if (!allow_inconclusive && count(CaseStatus::inconclusive) > 0) return 2;
  return 0;
}

void Report::normalize() {
  std::stable_sort(cases.begin(), cases.end(), [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });
  std::stable_sort(rows.begin(), rows.end(), [](const IndexRow& a, const IndexRow& b) { return a.group < b.group; });
}

std::string to_json(const Report& r, bool timings) {
  json j;
  j["suite"] = r.suite;
  j["group"] = r.group;
  j["kernel"] = r.kernel;
  j["field"] = r.field;
  j["seed"] = r.seed;
  j["summary"] = {{"pass", r.count(CaseStatus::pass)},
                  {"fail", r.count(CaseStatus::fail)},
                  {"inconclusive", r.count(CaseStatus::inconclusive)}};
  json cases = json::array();
  for (const auto& c : r.cases) {
    json e;
    e["id"] = c.id;
    e["statement"] = c.statement;
    e["basis"] = c.basis;
    e["expected"] = c.expected;
    e["computed"] = c.computed;
    e["status"] = std::string(to_string(c.status));
    e["detail"] = c.detail;
    if (timings) e["runtime_ms"] = c.runtime_ms;
    cases.push_back(std::move(e));
  }
  j["cases"] = std::move(cases);
  json rows = json::array();
  for (const auto& w : r.rows)
    rows.push_back({{"group", w.group}, {"p", w.p}, {"derived_order", w.derived_order}, {"t", w.t},
                    {"t_upper", w.t_upper}, {"t_nil", w.t_nil}, {"cl", w.cl}, {"verdict", w.verdict}});
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

Report report_from_json(std::string_view text) {
  const json j = json::parse(text);
  Report r;
  r.suite = j.at("suite").get<std::string>();
  r.group = j.at("group").get<std::string>();
  r.kernel = j.at("kernel").get<std::string>();
  r.field = j.at("field").get<std::string>();
  r.seed = j.at("seed").get<unsigned long long>();
  for (const auto& e : j.at("cases")) {
    CaseResult c;
    c.id = e.at("id").get<std::string>();
    c.statement = e.at("statement").get<std::string>();
    c.basis = e.at("basis").get<std::string>();
    c.expected = e.at("expected").get<std::string>();
    c.computed = e.at("computed").get<std::string>();
    c.status = parse_case_status(e.at("status").get<std::string>());
    c.detail = e.at("detail").get<std::string>();
    if (e.contains("runtime_ms")) c.runtime_ms = e.at("runtime_ms").get<double>();
    r.cases.push_back(std::move(c));
  }
  for (const auto& e : j.at("rows")) {
    IndexRow w;
    w.group = e.at("group").get<std::string>();
    w.p = e.at("p").get<std::string>();
    w.derived_order = e.at("derived_order").get<std::string>();
    w.t = e.at("t").get<std::string>();
    w.t_upper = e.at("t_upper").get<std::string>();
    w.t_nil = e.at("t_nil").get<std::string>();
    w.cl = e.at("cl").get<std::string>();
    w.verdict = e.at("verdict").get<std::string>();
    r.rows.push_back(std::move(w));
  }
  return r;
}

namespace {

std::string cell(std::string s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out += "\\|";
    else if (ch == '\n') out += ' ';
    else out += ch;
  }
  return out;
}

}  // namespace

std::string to_markdown(const Report& r, bool timings) {
  std::string out = fmt::format("# {}\n\n", r.suite);
  out += fmt::format("group `{}`, kernel `{}`, field {}, seed {}\n\n", r.group.empty() ? "(catalog)" : r.group,
                     r.kernel.empty() ? "(default)" : r.kernel, r.field.empty() ? "(default)" : r.field, r.seed);
  out += fmt::format("pass {}, fail {}, inconclusive {}\n\n", r.count(CaseStatus::pass), r.count(CaseStatus::fail),
                     r.count(CaseStatus::inconclusive));
  if (!r.rows.empty()) {
    out += "| group | p | \\|G'\\| | t | tL | t_nil | cl | verdict |\n";
    out += "|---|---|---|---|---|---|---|---|\n";
    for (const auto& w : r.rows)
      out += fmt::format("| {} | {} | {} | {} | {} | {} | {} | {} |\n", cell(w.group), cell(w.p),
                         cell(w.derived_order), cell(w.t), cell(w.t_upper), cell(w.t_nil), cell(w.cl), cell(w.verdict));
    out += "\n";
  }
  out += timings ? "| case | status | expected | computed | detail | ms |\n|---|---|---|---|---|---|\n"
                 : "| case | status | expected | computed | detail |\n|---|---|---|---|---|\n";
  for (const auto& c : r.cases) {
    out += fmt::format("| {} | {} | {} | {} | {}", cell(c.id), to_string(c.status), cell(c.expected),
                       cell(c.computed), cell(c.detail));
    out += timings ? fmt::format(" | {:.1f} |\n", c.runtime_ms) : std::string(" |\n");
  }
  return out;
}

}  // namespace ilab
