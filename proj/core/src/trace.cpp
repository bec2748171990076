#include "heatwell/trace.hpp"

namespace heatwell {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Global:
      return "Global";
    case Verdict::BlowUp:
      return "BlowUp";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

}  // namespace heatwell
