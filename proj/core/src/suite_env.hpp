#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ilab/lie.hpp"
#include "ilab/report.hpp"
#include "ilab/suites.hpp"
#include "ilab/units.hpp"

namespace ilab::suite {

struct ContextSpec {
  std::string label;  // name@field, unique within a run
  std::string name;
  std::string spec;
  std::string kernel;
  unsigned characteristic = 3;
};

/// Oracle values for one context, all optional.
struct FixtureValues {
  std::optional<std::size_t> t;
  std::optional<std::size_t> t_upper;
  std::optional<std::size_t> t_nil;
  std::optional<std::size_t> t_upper_fg;
};
using Fixtures = std::map<std::string, FixtureValues>;

struct Outcome {
  std::string expected;
  std::string computed;
  CaseStatus status = CaseStatus::pass;
  std::string detail;
};

inline Outcome judge(bool ok, std::string expected, std::string computed, std::string detail = {}) {
  return {std::move(expected), std::move(computed), ok ? CaseStatus::pass : CaseStatus::fail, std::move(detail)};
}

inline Outcome unresolved(std::string expected, std::string computed, std::string detail) {
  return {std::move(expected), std::move(computed), CaseStatus::inconclusive, std::move(detail)};
}

class Recorder {
 public:
  Recorder(std::string prefix, std::vector<CaseResult>& out) : prefix_(std::move(prefix)), out_(out) {}

  /// Runs one check. CapExceeded makes it inconclusive, any other exception a failure.
  template <class Fn>
  void run(const std::string& check, const std::string& statement, const std::string& basis, Fn&& fn) {
    CaseResult c;
    c.id = prefix_ + "/" + check;
    c.statement = statement;
    c.basis = basis;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = fn();
      c.expected = std::move(o.expected);
      c.computed = std::move(o.computed);
      c.status = o.status;
      c.detail = std::move(o.detail);
    } catch (const CapExceeded& e) {
      c.status = CaseStatus::inconclusive;
      c.detail = e.what();
    } catch (const std::exception& e) {
      c.status = CaseStatus::fail;
      c.detail = std::string("error: ") + e.what();
    }
    c.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out_.push_back(std::move(c));
  }

  const std::string& prefix() const noexcept { return prefix_; }

 private:
  std::string prefix_;
  std::vector<CaseResult>& out_;
};

std::uint64_t stable_hash(const std::string& s);

inline std::string join(const std::vector<std::size_t>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? sep : "") + std::to_string(v[k]);
  return out;
}

inline std::string describe(const SeriesReport& r) {
  switch (r.verdict) {
    case Verdict::vanished: return fmt::format("vanished at {} (dims {})", r.index, join(r.dims));
    case Verdict::stabilized_nonzero:
      return fmt::format("stabilized nonzero: term {} repeats term {} (dims {})", r.index + 1, r.repeat_of, join(r.dims));
    case Verdict::cap_reached: return fmt::format("cap reached after {} terms (dims {})", r.index, join(r.dims));
  }
  return "?";
}

/// A series stopped by its cap decides nothing: the reading check becomes inconclusive.
template <class... R>
void settled(const R&... rs) {
  for (const SeriesReport* r : {&rs...})
    if (r->verdict == Verdict::cap_reached)
      throw CapExceeded(fmt::format("series cap reached: {}", describe(*r)));
}

/// Everything a check may need about one context, computed on first use.
template <Field F>
class Env {
 public:
  Env(const ContextSpec& spec, const SuiteConfig& cfg, const Fixtures& fixtures, F field, Orientation sigma)
      : spec_(spec), cfg_(cfg), fixtures_(fixtures),
        ctx_(std::move(field), std::move(sigma), ContextLimits{cfg.cap_rational}),
        gens_(symmetric_generators(ctx_)),
        dec_(decompose_q8_structure(ctx_.orientation(), ctx_.field().characteristic())),
        rng_(cfg.seed ^ stable_hash(spec.label)) {}

  const ContextSpec& spec() const { return spec_; }
  const SuiteConfig& config() const { return cfg_; }
  const AlgebraContext<F>& ctx() const { return ctx_; }
  const FiniteGroup& group() const { return ctx_.group(); }
  const F& field() const { return ctx_.field(); }
  unsigned p() const { return ctx_.field().characteristic(); }
  const SymmetricGenerators<F>& gens() const { return gens_; }
  std::span<const Vector<F>> s() const { return gens_.plus_part; }
  const DecompositionResult& dec() const { return dec_; }
  std::mt19937_64& rng() { return rng_; }

  const FixtureValues* fixture() const {
    auto it = fixtures_.find(spec_.label);
    return it == fixtures_.end() ? nullptr : &it->second;
  }

  const LieSeries<F>& lower() {
    if (!lower_) lower_ = lower_lie_series(ctx_, s(), cfg_.cap_series);
    return *lower_;
  }
  const LieSeries<F>& strong() {
    if (!strong_) strong_ = strong_lie_series(ctx_, s(), cfg_.cap_series);
    return *strong_;
  }
  const LieSeries<F>& seeded() {
    if (!seeded_) seeded_ = seeded_strong_series(ctx_, s(), cfg_.cap_series);
    return *seeded_;
  }
  const Subspace<F>& symmetric_space() {
    if (!sym_) sym_ = Subspace<F>::span(ctx_.field(), ctx_.dim(), s());
    return *sym_;
  }

  /// The Sylow p-subgroup from the decomposition as a group of its own.
  const GroupPtr& p_group() {
    if (!p_group_) {
      auto emb = subgroup_as_group(group(), dec_.value->p_part);
      p_group_ = std::make_shared<const FiniteGroup>(std::move(emb.group));
    }
    return p_group_;
  }
  std::size_t tnil() {
    if (!tnil_) tnil_ = t_nil(ctx_.field(), p_group());
    return *tnil_;
  }
  /// (FG Delta(P))^n, zero past the end.
  Subspace<F> aug_p(std::size_t n) {
    if (aug_p_.empty()) aug_p_ = augmentation_powers(ctx_, dec_.value->p_part, group().order() + 1);
    if (n == 0) return Subspace<F>::full(ctx_.field(), ctx_.dim());
    return n <= aug_p_.size() ? aug_p_[n - 1] : Subspace<F>::zero(ctx_.field(), ctx_.dim());
  }

  /// A uniformly random element of V.
  Vector<F> random_in(const Subspace<F>& v) {
    auto x = ctx_.zero();
    for (const auto& b : v.basis())
      field().axpy(std::span<typename F::value_type>(x), random_scalar(), std::span<const typename F::value_type>(b));
    return x;
  }
  Vector<F> random_element() {
    auto x = ctx_.zero();
    for (auto& c : x) c = random_scalar();
    return x;
  }
  typename F::value_type random_scalar() {
    if (p() != 0) return field().from_int(static_cast<long long>(rng_() % p()));
    const long long num = static_cast<long long>(rng_() % 7) - 3;
    const long long den = static_cast<long long>(rng_() % 3) + 1;
    return field().mul(field().from_int(num), field().inv(field().from_int(den)));
  }

  /// Up to `count` random symmetric units (fewer if too many draws are singular).
  std::vector<Unit<F>> sample_symmetric_units(std::size_t count) {
    std::vector<Unit<F>> out;
    const Subspace<F>& v = symmetric_space();
    for (std::size_t tries = 0; out.size() < count && tries < 20 * count; ++tries)
      if (auto u = make_unit(ctx_, random_in(v))) out.push_back(std::move(*u));
    return out;
  }

 private:
  const ContextSpec& spec_;
  const SuiteConfig& cfg_;
  const Fixtures& fixtures_;
  AlgebraContext<F> ctx_;
  SymmetricGenerators<F> gens_;
  DecompositionResult dec_;
  std::mt19937_64 rng_;
  std::optional<LieSeries<F>> lower_, strong_, seeded_;
  std::optional<Subspace<F>> sym_;
  GroupPtr p_group_;
  std::optional<std::size_t> tnil_;
  std::vector<Subspace<F>> aug_p_;
};

/// Per-suite entry points, one instantiation per field type.
template <Field F>
using SuiteFn = void (*)(Env<F>&, Recorder&, std::vector<IndexRow>&);

template <Field F> void involution_axioms(Env<F>&, Recorder&, std::vector<IndexRow>&);
template <Field F> void span_equalities(Env<F>&, Recorder&, std::vector<IndexRow>&);
template <Field F> void thm_q8_strong(Env<F>&, Recorder&, std::vector<IndexRow>&);
template <Field F> void thm_index_cyclic(Env<F>&, Recorder&, std::vector<IndexRow>&);
template <Field F> void bounds_q8(Env<F>&, Recorder&, std::vector<IndexRow>&);
template <Field F> void lemma_suite(Env<F>&, Recorder&, std::vector<IndexRow>&);
template <Field F> void unit_class(Env<F>&, Recorder&, std::vector<IndexRow>&);

}  // namespace ilab::suite
