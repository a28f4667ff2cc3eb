#include "ilab/units.hpp"

namespace ilab {

std::string_view to_string(ClassMethod m) {
  switch (m) {
    case ClassMethod::witness: return "witness";
    case ClassMethod::exhaustive: return "exhaustive";
  }
  return "unknown";
}

}  // namespace ilab
