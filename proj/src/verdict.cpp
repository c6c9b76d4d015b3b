#include "ekrlab/verdict.hpp"

namespace ekrlab {

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::holds: return "HOLDS";
    case VerdictKind::fails: return "FAILS";
    case VerdictKind::indeterminate: return "INDETERMINATE";
  }
  return "?";
}

}  // namespace ekrlab
