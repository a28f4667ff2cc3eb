#pragma once

#include <string>
#include <vector>

#include "ilab/group_spec.hpp"

namespace ilab {

/// A named group with a suggested orientation and field.
struct CatalogEntry {
  std::string name;
  std::string spec;
  std::string kernel;  // generator words, or "full"
  unsigned characteristic = 3;
  std::string note;
};

/// Directory holding table files; INVOLUTION_LAB_DATA overrides the built-in path.
std::string data_dir();

/// The built-in entries. "@data/" in a spec expands to data_dir().
const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);
std::string expand_spec(const std::string& spec);

/// One block per entry: spec, order, |G'|, chosen kernel and every admissible kernel.
std::string list_catalog(const BuildOptions& options = {});

}  // namespace ilab
