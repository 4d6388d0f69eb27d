#include "twophase/model.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <utility>

namespace twophase {

namespace {

using cd = std::complex<double>;
using CVec = ComplexVector<double>;
constexpr cd I{0.0, 1.0};

constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();
constexpr double kStructureTolerance = 1e-8;

CVec pad(const CVec& v, Eigen::Index n) {
  CVec out = CVec::Zero(n);
  out.head(std::min(n, v.size())) = v.head(std::min(n, v.size()));
  return out;
}

// x^k |v> for k = 1, 2, exact (grows by k entries).
CVec apply_quadrature_power(const CVec& v, int k) {
  CVec out = v;
  for (int j = 0; j < k; ++j) out = apply_quadrature(out);
  return out;
}

// (U^dag n U)|v> with U^dag a U = a - i m gamma x^{m-1}, applied as
// A^dag (A v). Result has v.size() + 2(m-1) entries.
CVec apply_conjugated_number(const CVec& v, int m, double gamma) {
  const CVec low = apply_lowering(v);
  CVec av = -I * (double(m) * gamma) * apply_quadrature_power(v, m - 1);
  av.head(low.size()) += low;
  CVec out = I * (double(m) * gamma) * apply_quadrature_power(av, m - 1);
  const CVec up = apply_raising(av);
  out.head(up.size()) += up;
  return out;
}

struct Converged {
  bool ok = true;
  std::string scalar;
};

Converged compare(const InfoMatrices& a, const InfoMatrices& b, double rtol) {
  const double scale = std::max({std::abs(b.q11()), std::abs(b.q12()), std::abs(b.q22())});
  auto close = [rtol](double x, double y, double floor) {
    return std::abs(x - y) <= rtol * std::max(std::abs(x), std::abs(y)) + floor;
  };
  const double det_floor = kRoundoff * (std::abs(b.q11() * b.q22()) + b.q12() * b.q12());
  if (!close(a.det_q(), b.det_q(), det_floor)) return {false, "det_Q"};
  if (!close(a.q22(), b.q22(), kRoundoff * scale)) return {false, "Q22"};
  if (!close(a.d12(), b.d12(), kRoundoff * scale)) return {false, "D12"};
  return {};
}

// Runs `eval(dim)` at growing dimensions until consecutive results agree.
template <class Eval>
auto converge(const TruncationPolicy& policy, std::size_t start, Eval&& eval) {
  policy.validate();
  std::size_t dim = std::max(start, policy.initial_dim);
  if (dim > policy.max_dim) {
    throw TruncationError("probe needs dim " + std::to_string(dim) + " which exceeds max_dim " +
                              std::to_string(policy.max_dim),
                          dim, "tail_mass");
  }
  auto prev = eval(dim);
  Converged status{false, "det_Q"};
  while (dim * policy.growth_factor <= policy.max_dim) {
    dim *= policy.growth_factor;
    auto next = eval(dim);
    status = compare(prev.second, next.second, policy.convergence_rtol);
    prev = std::move(next);
    if (status.ok) return prev;
  }
  throw TruncationError("no convergence of " + status.scalar + " below max_dim " + std::to_string(policy.max_dim),
                        0, status.scalar);
}

InfoMatrices symmetrized(const Eigen::Matrix2cd& g) {
  InfoMatrices info;
  const Eigen::Matrix2d q = 4.0 * g.real();
  const Eigen::Matrix2d d = 4.0 * g.imag();
  info.Q = 0.5 * (q + q.transpose());
  info.D = 0.5 * (d - d.transpose());
  info.q_asymmetry = std::abs(q(0, 1) - q(1, 0));
  info.d_asymmetry = std::max({std::abs(d(0, 1) + d(1, 0)), std::abs(d(0, 0)), std::abs(d(1, 1))});
  return info;
}

}  // namespace

void ScramblerConfig::validate() const {
  if (m != 2 && m != 3) throw InputError("scrambling order m must be 2 or 3, got " + std::to_string(m));
  if (!std::isfinite(gamma) || gamma < 0.0) throw InputError("scrambling strength gamma must be finite and >= 0");
}

ModelState evolve_at_dim(const ProbeSpec& probe, const PhasePair& phases, const ScramblerConfig& scr,
                         std::size_t dim, Propagation propagation, double tail_tolerance) {
  probe.validate();
  scr.validate();
  if (!std::isfinite(phases.phi1) || !std::isfinite(phases.phi2)) throw InputError("phases must be finite");

  const auto d = Eigen::Index(dim);
  const FockVector<double> psi1 = apply_phase_shift(probe_state<double>(probe, d, tail_tolerance), phases.phi1);
  const CVec n_psi1 = apply_number(psi1.amplitudes);

  ModelState state;
  state.provenance = {probe, scr, phases, dim, propagation, Frame::input};

  if (propagation == Propagation::heisenberg) {
    const CVec ntilde = apply_conjugated_number(psi1.amplitudes, scr.m, scr.gamma);
    const Eigen::Index n = ntilde.size();
    state.psi = FockVector<double>(pad(psi1.amplitudes, n));
    state.dpsi1 = FockVector<double>(pad(-I * n_psi1, n));
    state.dpsi2 = FockVector<double>(-I * ntilde);
    state.provenance.dim = std::size_t(n);
    return state;
  }

  CVec u_psi = psi1.amplitudes;
  CVec u_dpsi = -I * n_psi1;
  if (scr.gamma != 0.0) {
    if (d < scr.m + 1) throw InputError("eigen propagation needs dim >= m + 1");
    const Scrambler<double> u(scr.m, d);
    u_psi = u.apply(scr.gamma, u_psi);
    u_dpsi = u.apply(scr.gamma, u_dpsi);
  }
  state.psi = apply_phase_shift(FockVector<double>(std::move(u_psi)), phases.phi2);
  state.dpsi1 = apply_phase_shift(FockVector<double>(std::move(u_dpsi)), phases.phi2);
  state.dpsi2 = FockVector<double>(-I * apply_number(state.psi.amplitudes));
  state.provenance.frame = Frame::output;
  return state;
}

InfoMatrices info_matrices(const ModelState& state) {
  const CVec& psi = state.psi.amplitudes;
  const std::array<const CVec*, 2> d{&state.dpsi1.amplitudes, &state.dpsi2.amplitudes};
  Eigen::Matrix2cd g;
  for (int mu = 0; mu < 2; ++mu) {
    for (int nu = 0; nu < 2; ++nu) {
      g(mu, nu) = d[mu]->dot(*d[nu]) - d[mu]->dot(psi) * psi.dot(*d[nu]);
    }
  }
  return symmetrized(g);
}

ModelState evolve(const ProbeSpec& probe, const PhasePair& phases, const ScramblerConfig& scr,
                  const TruncationPolicy& policy, Propagation propagation) {
  probe.validate();
  const std::size_t start = required_probe_dim<double>(probe, policy.tail_tolerance);
  auto result = converge(policy, start, [&](std::size_t dim) {
    ModelState s = evolve_at_dim(probe, phases, scr, dim, propagation, policy.tail_tolerance);
    InfoMatrices info = info_matrices(s);
    return std::make_pair(std::move(s), info);
  });
  return std::move(result.first);
}

InfoMatrices info_matrices_via_generators(const ProbeSpec& probe, const PhasePair& phases,
                                          const ScramblerConfig& scr, const TruncationPolicy& policy) {
  probe.validate();
  scr.validate();
  using Sparse = Eigen::SparseMatrix<cd>;

  auto at_dim = [&](std::size_t dim) {
    const auto d = Eigen::Index(dim);
    // Working size leaves room for two applications of the conjugated
    // number operator (band 2(m-1) each) before the truncation edge.
    const Eigen::Index w = d + 4 * scr.m + 2;

    std::vector<Eigen::Triplet<cd>> ta, tn;
    for (Eigen::Index k = 1; k < w; ++k) ta.emplace_back(k - 1, k, std::sqrt(double(k)));
    for (Eigen::Index k = 0; k < w; ++k) tn.emplace_back(k, k, double(k));
    Sparse a(w, w), number(w, w);
    a.setFromTriplets(ta.begin(), ta.end());
    number.setFromTriplets(tn.begin(), tn.end());
    const Sparse adag = a.adjoint();
    const Sparse x = a + adag;
    Sparse x_pow = x;
    for (int k = 2; k < scr.m; ++k) x_pow = Sparse(x_pow * x);
    const Sparse big_a = a - (I * (double(scr.m) * scr.gamma)) * x_pow;
    const Sparse ntilde = Sparse(big_a.adjoint() * big_a);

    const CVec psi1 = pad(apply_phase_shift(probe_state<double>(probe, d, policy.tail_tolerance), phases.phi1)
                              .amplitudes,
                          w);
    const CVec n_psi = number * psi1;
    const CVec nt_psi = ntilde * psi1;
    const double mean_n = psi1.dot(n_psi).real();
    const double mean_nt = psi1.dot(nt_psi).real();
    const cd n2 = psi1.dot(number * n_psi);
    const cd nt2 = psi1.dot(ntilde * nt_psi);
    const cd n_nt = psi1.dot(number * nt_psi);
    const cd nt_n = psi1.dot(ntilde * n_psi);

    Eigen::Matrix2cd g;
    g(0, 0) = n2 - mean_n * mean_n;
    g(0, 1) = n_nt - mean_n * mean_nt;
    g(1, 0) = nt_n - mean_n * mean_nt;
    g(1, 1) = nt2 - mean_nt * mean_nt;
    InfoMatrices info = symmetrized(g);
    return std::make_pair(dim, info);
  };

  const std::size_t start = required_probe_dim<double>(probe, policy.tail_tolerance);
  return converge(policy, start, at_dim).second;
}

Phi2Report phi2_independence_check(const ProbeSpec& probe, const ScramblerConfig& scr, double phi1,
                                   const TruncationPolicy& policy, Propagation propagation) {
  Phi2Report report;
  std::array<InfoMatrices, 3> info;
  for (std::size_t k = 0; k < info.size(); ++k) {
    info[k] = info_matrices(evolve(probe, {phi1, report.phi2_values[k]}, scr, policy, propagation));
  }
  for (std::size_t k = 1; k < info.size(); ++k)
    report.max_deviation = std::max(report.max_deviation, max_relative_deviation(info[0], info[k]));
  if (report.max_deviation > kStructureTolerance) {
    throw ModelStructureError("information matrices depend on phi2: max relative deviation " +
                              std::to_string(report.max_deviation));
  }
  return report;
}

double relative_phase(ProbeKind kind, double phi1, double probe_phase) {
  return kind == ProbeKind::coherent ? probe_phase - phi1 : probe_phase - 2.0 * phi1;
}

double encoder_phase(ProbeKind kind, double theta) {
  return kind == ProbeKind::coherent ? -theta : -0.5 * theta;
}

InfoMatrices numeric_info(const CaseId& id, double nbar, double gamma, double theta,
                          const TruncationPolicy& policy, Propagation propagation, std::size_t* dim_used) {
  id.validate();
  const ProbeSpec probe{id.probe, nbar, 0.0};
  const ModelState state = evolve(probe, {encoder_phase(id.probe, theta), 0.0}, {id.m, gamma}, policy, propagation);
  if (dim_used != nullptr) *dim_used = state.provenance.dim;
  return info_matrices(state);
}

double max_relative_deviation(const InfoMatrices& a, const InfoMatrices& b) {
  const double scale = std::max({std::abs(a.q11()), std::abs(a.q12()), std::abs(a.q22()), std::abs(b.q11()),
                                 std::abs(b.q12()), std::abs(b.q22())});
  const double floor = 1e-12 * scale;
  const std::array<std::pair<double, double>, 4> entries{{{a.q11(), b.q11()},
                                                          {a.q12(), b.q12()},
                                                          {a.q22(), b.q22()},
                                                          {a.d12(), b.d12()}}};
  double worst = 0.0;
  for (const auto& [x, y] : entries) {
    const double denom = std::max({std::abs(x), std::abs(y), floor});
    if (denom == 0.0) continue;
    worst = std::max(worst, std::abs(x - y) / denom);
  }
  return worst;
}

}  // namespace twophase
