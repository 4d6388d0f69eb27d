#include "twophase/types.hpp"

#include "twophase/errors.hpp"

#include <cmath>

namespace twophase {

void ProbeSpec::validate() const {
  if (!std::isfinite(nbar) || nbar < 0.0) throw InputError("probe nbar must be finite and >= 0");
  if (!std::isfinite(probe_phase)) throw InputError("probe phase must be finite");
}

void CaseId::validate() const {
  if (m != 2 && m != 3) throw InputError("scrambling order m must be 2 or 3, got " + std::to_string(m));
}

InfoMatrices InfoMatrices::from_entries(double q11, double q12, double q22, double d12) {
  InfoMatrices info;
  info.Q << q11, q12, q12, q22;
  info.D << 0.0, d12, -d12, 0.0;
  return info;
}

std::string_view to_string(ProbeKind kind) {
  return kind == ProbeKind::coherent ? "coherent" : "squeezed_vacuum";
}

ProbeKind probe_kind_from_string(std::string_view name) {
  if (name == "coherent") return ProbeKind::coherent;
  if (name == "squeezed_vacuum" || name == "squeezed") return ProbeKind::squeezed_vacuum;
  throw InputError("unknown probe kind '" + std::string(name) + "' (expected coherent or squeezed_vacuum)");
}

std::string to_string(const CaseId& id) {
  return std::string(to_string(id.probe)) + "_m" + std::to_string(id.m);
}

}  // namespace twophase
