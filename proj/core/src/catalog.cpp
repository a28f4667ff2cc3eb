#include "ilab/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include <fmt/format.h>

#include "ilab/field.hpp"

#ifndef ILAB_DEFAULT_DATA_DIR
#define ILAB_DEFAULT_DATA_DIR "data"
#endif

namespace ilab {

std::string data_dir() {
  if (const char* env = std::getenv("INVOLUTION_LAB_DATA"); env && *env) return env;
  return ILAB_DEFAULT_DATA_DIR;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"q8", "q8", "full", 3, "classical involution"},
      {"q8ext", "q8ext", "x,y", 3, "<Q8,g>, g central, g^2 = x^2"},
      {"q8ext-c2", "product(q8ext, elem2:1)", "x,y,e1", 3, "E = C2, P = 1"},
      {"q8ext-c3", "product(q8ext, cyclic:3)", "x,y,h1", 3, "P = C3"},
      {"q8ext-c2-c3", "product(q8ext, elem2:1, cyclic:3)", "x,y,e1,h1", 3, "E = C2, P = C3"},
      {"q8ext-c9", "product(q8ext, cyclic:9)", "x,y,h1", 3, "P = C9"},
      {"q8ext-c2-c9", "product(q8ext, elem2:1, cyclic:9)", "x,y,e1,h1", 3, "E = C2, P = C9"},
      {"q8ext-c3c3", "product(q8ext, cyclic:3, cyclic:3)", "x,y,h1,h2", 3, "P = C3 x C3"},
      {"q8ext-c2-c3c3", "product(q8ext, elem2:1, cyclic:3, cyclic:3)", "x,y,e1,h1,h2", 3, "E = C2, P = C3 x C3"},
      {"q8ext-f5", "q8ext", "x,y", 5, "P = 1 in characteristic 5"},
      {"q8ext-c2-f5", "product(q8ext, elem2:1)", "x,y,e1", 5, "E = C2, P = 1 in characteristic 5"},
      {"q8ext-c5", "product(q8ext, cyclic:5)", "x,y,h1", 5, "P = C5"},
      {"q8ext-c2-c5", "product(q8ext, elem2:1, cyclic:5)", "x,y,e1,h1", 5, "E = C2, P = C5"},
      {"q8ext-c3-q", "product(q8ext, cyclic:3)", "x,y,h1", 0, "odd-order factor over Q"},
      {"q8ext-c2-q", "product(q8ext, elem2:1)", "x,y,e1", 0, "E = C2 over Q"},
      {"q8-c4", "product(q8, cyclic:4)", "x,y,h1^2", 3, "sign -1 on the C4 generator; no g with g^2 = x^2"},
      {"q8-c2", "product(q8, elem2:1)", "x,y", 3, "sign -1 on the C2 generator"},
      {"c3", "cyclic:3", "full", 3, "odd order"},
      {"c9", "cyclic:9", "full", 3, "odd order"},
      {"heis3", "extraspecial:3", "full", 3, "exponent 3, classical involution"},
      {"heis3-c2", "product(extraspecial:3, elem2:1)", "a,b", 3, "G' cyclic of order 3"},
      {"ex9-c2", "product(extraspecial:3:9, elem2:1)", "a,b", 3, "powerful extraspecial factor"},
      {"wr3-c2", "product(table:@data/c3wrc3.tbl, elem2:1)", "t2,t28", 3, "C3 wr C3: G' = C3 x C3"},
  };
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw std::invalid_argument(fmt::format("unknown catalog entry '{}'", name));
}

std::string expand_spec(const std::string& spec) {
  std::string out = spec;
  const std::string token = "@data/";
  for (std::size_t pos = out.find(token); pos != std::string::npos; pos = out.find(token, pos)) {
    const std::string dir = data_dir() + "/";
    out.replace(pos, token.size(), dir);
    pos += dir.size();
  }
  return out;
}

namespace {

std::string describe_subset(const FiniteGroup& g, const ElementSet& s) {
  if (s.size() == g.order()) return "full";
  std::string out;
  for (Elem x : generating_set(g, s)) {
    if (!out.empty()) out += ",";
    out += g.label(x);
  }
  return out.empty() ? "1" : out;
}

}  // namespace

std::string list_catalog(const BuildOptions& options) {
  std::string out;
  for (const auto& e : catalog()) {
    out += fmt::format("{}\n  spec: {}\n", e.name, e.spec);
    try {
      BuildOptions opts = options;
      opts.order_cap = std::max<std::size_t>(opts.order_cap, 512);
      const FiniteGroup g = build_group(GroupSpec::parse(expand_spec(e.spec)), opts);
      const auto d = derived_subgroup(g);
      out += fmt::format("  order: {}  |G'|: {} ({})\n", g.order(), d.order, d.cyclic ? "cyclic" : "noncyclic");
      out += fmt::format("  kernel: {}  field: {}\n", e.kernel, FieldSpec{e.characteristic}.to_string());
      out += "  admissible kernels:";
      for (const auto& k : admissible_kernels(g)) out += " [" + describe_subset(g, k) + "]";
      out += "\n";
    } catch (const std::exception& ex) {
      out += fmt::format("  unavailable: {}\n", ex.what());
    }
    if (!e.note.empty()) out += "  note: " + e.note + "\n";
  }
  return out;
}

}  // namespace ilab
