#include "ilab/suites.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ilab/catalog.hpp"
#include "suite_env.hpp"

namespace ilab {

namespace suite {

std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace suite

namespace {

using suite::ContextSpec;
using suite::Env;
using suite::Fixtures;
using suite::Recorder;

struct SuiteEntry {
  std::string name;
  std::vector<std::string> defaults;
  suite::SuiteFn<PrimeField> prime;
  suite::SuiteFn<RationalField> rational;
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries = [] {
    std::vector<std::string> all;
    for (const auto& e : catalog()) all.push_back(e.name);
    return std::vector<SuiteEntry>{
        {"involution-axioms", all, suite::involution_axioms<PrimeField>, suite::involution_axioms<RationalField>},
        {"span-equalities", all, suite::span_equalities<PrimeField>, suite::span_equalities<RationalField>},
        {"thm-q8-strong",
         {"q8ext", "q8ext-c2", "q8ext-c3", "q8ext-c2-c3", "q8ext-c9", "q8ext-c3c3", "q8ext-f5", "q8ext-c2-f5",
          "q8ext-c5", "q8ext-c2-c5", "q8ext-c2-q", "q8ext-c3-q", "q8-c4", "q8-c2"},
         suite::thm_q8_strong<PrimeField>, suite::thm_q8_strong<RationalField>},
        {"thm-index-cyclic",
         {"c3", "c9", "heis3", "heis3-c2", "ex9-c2", "wr3-c2"},
         suite::thm_index_cyclic<PrimeField>, suite::thm_index_cyclic<RationalField>},
        {"bounds-q8",
         {"q8ext-c3", "q8ext-c2-c3", "q8ext-c9", "q8ext-c3c3", "q8ext-c5", "q8ext-c2-c5"},
         suite::bounds_q8<PrimeField>, suite::bounds_q8<RationalField>},
        {"lemma-suite",
         {"q8ext-c3", "q8ext-c9", "q8ext-c3c3", "q8ext-c5", "ex9-c2"},
         suite::lemma_suite<PrimeField>, suite::lemma_suite<RationalField>},
        {"unit-class",
         {"q8", "q8ext", "c3", "q8ext-c2-q", "q8ext-c3", "q8ext-c9", "q8ext-c3c3", "q8ext-c5"},
         suite::unit_class<PrimeField>, suite::unit_class<RationalField>},
    };
  }();
  return entries;
}

const SuiteEntry& find_suite(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  std::string known;
  for (const auto& e : registry()) known += (known.empty() ? "" : ", ") + e.name;
  throw SuiteError(fmt::format("unknown suite '{}' (known: {})", name, known));
}

ContextSpec from_catalog(const CatalogEntry& e, const SuiteConfig& cfg) {
  ContextSpec c;
  c.name = e.name;
  c.spec = e.spec;
  c.kernel = cfg.kernel.empty() ? e.kernel : cfg.kernel;
  c.characteristic = cfg.characteristic.value_or(e.characteristic);
  c.label = fmt::format("{}@{}", c.name, FieldSpec{c.characteristic}.to_string());
  return c;
}

std::vector<ContextSpec> resolve(const SuiteConfig& cfg, const SuiteEntry& entry) {
  std::vector<ContextSpec> out;
  if (cfg.group.empty()) {
    for (const auto& name : entry.defaults) out.push_back(from_catalog(catalog_entry(name), cfg));
    return out;
  }
  for (const auto& e : catalog())
    if (e.name == cfg.group) return {from_catalog(e, cfg)};
  ContextSpec c;
  c.name = cfg.group;
  c.spec = cfg.group;
  c.kernel = cfg.kernel.empty() ? "full" : cfg.kernel;
  c.characteristic = cfg.characteristic.value_or(3);
  c.label = fmt::format("{}@{}", c.name, FieldSpec{c.characteristic}.to_string());
  return {c};
}

Fixtures load_fixtures(const std::string& path) {
  Fixtures out;
  if (path.empty()) return out;
  std::ifstream in(path);
  if (!in) throw SuiteError(fmt::format("cannot read fixtures '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  const auto j = nlohmann::json::parse(ss.str());
  for (const auto& [label, v] : j.at("contexts").items()) {
    suite::FixtureValues f;
    auto get = [&](const char* key, std::optional<std::size_t>& slot) {
      if (v.contains(key) && !v.at(key).is_null()) slot = v.at(key).get<std::size_t>();
    };
    get("t", f.t);
    get("t_upper", f.t_upper);
    get("t_nil", f.t_nil);
    get("t_upper_fg", f.t_upper_fg);
    out.emplace(label, f);
  }
  return out;
}

void run_context(const SuiteEntry& entry, const SuiteConfig& cfg, const Fixtures& fixtures, const ContextSpec& spec,
                 std::vector<CaseResult>& cases, std::vector<IndexRow>& rows) {
  Recorder rec(spec.label, cases);
  try {
    BuildOptions opts;
    opts.order_cap = cfg.cap_order;
    GroupPtr g = build_group_ptr(GroupSpec::parse(expand_spec(spec.spec)), opts);
    Orientation sigma(g, parse_kernel(*g, spec.kernel));
    with_field(FieldSpec{spec.characteristic}, [&](auto field) {
      using F = decltype(field);
      Env<F> env(spec, cfg, fixtures, field, sigma);
      if constexpr (std::is_same_v<F, PrimeField>) entry.prime(env, rec, rows);
      else entry.rational(env, rec, rows);
    });
  } catch (const CapExceeded& e) {
    rec.run("setup", "setup", "axiom", [&] { return suite::unresolved("context within caps", "cap exceeded", e.what()); });
  } catch (const std::exception& e) {
    const std::string what = e.what();
    rec.run("setup", "setup", "axiom", [&] { return suite::judge(false, "context builds", "error", what); });
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.name);
    return out;
  }();
  return names;
}

const std::vector<std::string>& default_contexts(const std::string& name) { return find_suite(name).defaults; }

Report run_suite(const SuiteConfig& cfg) {
  const SuiteEntry& entry = find_suite(cfg.suite);
  if (cfg.characteristic && *cfg.characteristic != 0 && !is_odd_prime(*cfg.characteristic))
    throw SuiteError(fmt::format("characteristic {} is neither 0 nor an odd prime", *cfg.characteristic));
  const auto contexts = resolve(cfg, entry);
  const Fixtures fixtures = load_fixtures(cfg.fixtures);

  std::vector<std::vector<CaseResult>> cases(contexts.size());
  std::vector<std::vector<IndexRow>> rows(contexts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < contexts.size(); i = next++)
      run_context(entry, cfg, fixtures, contexts[i], cases[i], rows[i]);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(contexts.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Report r;
  r.suite = cfg.suite;
  r.group = cfg.group;
  r.kernel = cfg.kernel;
  r.field = cfg.characteristic ? FieldSpec{*cfg.characteristic}.to_string() : std::string();
  r.seed = cfg.seed;
  for (auto& v : cases) std::move(v.begin(), v.end(), std::back_inserter(r.cases));
  for (auto& v : rows) std::move(v.begin(), v.end(), std::back_inserter(r.rows));
  r.normalize();
  return r;
}

}  // namespace ilab
