#pragma once

// Truncated single-mode Fock-space algebra. Everything here is templated on
// the real scalar type; the rest of the library uses `double`.

#include "twophase/errors.hpp"
#include "twophase/types.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace twophase {

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Controls the dimension-doubling loops that certify truncation convergence.
struct TruncationPolicy {
  std::size_t initial_dim = 32;
  std::size_t growth_factor = 2;
  double tail_tolerance = 1e-12;
  double convergence_rtol = 1e-8;
  std::size_t max_dim = 16384;

  void validate() const {
    if (initial_dim < 8) throw InputError("truncation.initial_dim must be >= 8");
    if (growth_factor < 2) throw InputError("truncation.growth_factor must be >= 2");
    if (!(tail_tolerance > 0.0)) throw InputError("truncation.tail_tolerance must be > 0");
    if (!(convergence_rtol > 0.0)) throw InputError("truncation.convergence_rtol must be > 0");
    if (max_dim < initial_dim) throw InputError("truncation.max_dim must be >= initial_dim");
  }
};

/// Amplitudes c_0..c_{N-1} in the number basis.
template <typename Real = double>
struct FockVector {
  ComplexVector<Real> amplitudes;

  FockVector() = default;
  explicit FockVector(ComplexVector<Real> a) : amplitudes(std::move(a)) {}

  Eigen::Index dim() const { return amplitudes.size(); }
  Real norm() const { return amplitudes.norm(); }

  /// Zero-extends (or truncates) to `n` amplitudes.
  FockVector resized(Eigen::Index n) const {
    ComplexVector<Real> out = ComplexVector<Real>::Zero(n);
    const Eigen::Index keep = std::min(n, dim());
    out.head(keep) = amplitudes.head(keep);
    return FockVector(std::move(out));
  }
};

/// Dense N x N operator together with its number-basis band width
/// (0 for diagonal operators).
template <typename Real = double>
struct FockOperator {
  ComplexMatrix<Real> entries;
  int band_width = 0;

  Eigen::Index dim() const { return entries.rows(); }
};

template <typename Real = double>
FockOperator<Real> build_number_operator(Eigen::Index dim) {
  if (dim < 1) throw InputError("number operator needs dim >= 1");
  FockOperator<Real> op;
  op.entries = ComplexMatrix<Real>::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) op.entries(k, k) = Real(k);
  op.band_width = 0;
  return op;
}

/// Annihilation operator a with <k-1|a|k> = sqrt(k). This truncation is
/// exact: a never maps a retained state outside the retained space.
template <typename Real = double>
RealMatrix<Real> annihilation_matrix(Eigen::Index dim) {
  RealMatrix<Real> a = RealMatrix<Real>::Zero(dim, dim);
  for (Eigen::Index k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(Real(k));
  return a;
}

/// Real matrix of x^m, x = a + a^dagger, restricted to the top-left dim x dim
/// block. The power is taken at dimension dim + m so that every retained
/// entry is exact.
template <typename Real = double>
RealMatrix<Real> quadrature_power_matrix(int m, Eigen::Index dim) {
  if (m < 1 || m > 3) throw InputError("quadrature power must be 1, 2 or 3, got " + std::to_string(m));
  if (dim < m + 1) throw InputError("quadrature power x^" + std::to_string(m) + " needs dim >= " + std::to_string(m + 1));
  const Eigen::Index padded = dim + m;
  const RealMatrix<Real> a = annihilation_matrix<Real>(padded);
  const RealMatrix<Real> x = a + a.transpose();
  RealMatrix<Real> p = x;
  for (int k = 1; k < m; ++k) p = (p * x).eval();
  return p.topLeftCorner(dim, dim);
}

template <typename Real = double>
FockOperator<Real> build_quadrature_power(int m, Eigen::Index dim) {
  FockOperator<Real> op;
  op.entries = quadrature_power_matrix<Real>(m, dim).template cast<std::complex<Real>>();
  op.band_width = m;
  return op;
}

namespace detail {

// Populations |c_n|^2 of the untruncated probe, generated until they are
// negligible against `tail_tolerance`. Index n is the photon number.
template <typename Real>
std::vector<Real> probe_populations(const ProbeSpec& probe, Real tail_tolerance) {
  std::vector<Real> pop;
  const Real nbar = Real(probe.nbar);
  const Real cutoff = tail_tolerance * Real(1e-6);
  if (nbar == Real(0)) return {Real(1)};
  if (probe.kind == ProbeKind::coherent) {
    // log p_n = -nbar + n log nbar - log n!
    Real logp = -nbar;
    const Real lognbar = std::log(nbar);
    for (std::size_t n = 0;; ++n) {
      if (n > 0) logp += lognbar - std::log(Real(n));
      const Real p = std::exp(logp);
      pop.push_back(p);
      if (Real(n) > nbar && (p < cutoff || p == Real(0))) break;
    }
  } else {
    const Real r = std::asinh(std::sqrt(nbar));
    const Real t2 = std::tanh(r) * std::tanh(r);
    Real p = Real(1) / std::cosh(r);
    for (std::size_t k = 0;; ++k) {
      if (k > 0) p *= t2 * Real(2 * k - 1) / Real(2 * k);
      pop.push_back(p);
      pop.push_back(Real(0));
      // p_{2k} decays geometrically once k exceeds the mean.
      if (Real(2 * k) > nbar && (p < cutoff * (Real(1) - t2) || p == Real(0))) break;
    }
  }
  return pop;
}

template <typename Real>
Real suffix_mass(const std::vector<Real>& pop, std::size_t k) {
  Real s = 0;
  for (std::size_t n = pop.size(); n-- > k;) s += pop[n];
  return s;
}

}  // namespace detail

/// Smallest dimension whose discarded probe tail mass is below `tail_tolerance`.
template <typename Real = double>
std::size_t required_probe_dim(const ProbeSpec& probe, Real tail_tolerance) {
  const auto pop = detail::probe_populations<Real>(probe, tail_tolerance);
  Real tail = 0;
  std::size_t k = pop.size();
  while (k > 0 && tail + pop[k - 1] < tail_tolerance) tail += pop[--k];
  return std::max<std::size_t>(k, 1);
}

namespace detail {

template <typename Real>
void check_probe_dim(const ProbeSpec& probe, Eigen::Index dim, Real tail_tolerance) {
  if (dim < 1) throw InputError("probe state needs dim >= 1");
  const auto pop = probe_populations<Real>(probe, tail_tolerance);
  const Real tail = suffix_mass(pop, std::size_t(dim));
  if (tail >= tail_tolerance) {
    throw TruncationError("probe tail mass " + std::to_string(double(tail)) + " beyond dim " +
                              std::to_string(dim) + " exceeds tolerance",
                          required_probe_dim<Real>(probe, tail_tolerance), "tail_mass");
  }
}

}  // namespace detail

/// |alpha> with alpha = sqrt(nbar) e^{i phase}, truncated to `dim` and
/// renormalized.
template <typename Real = double>
FockVector<Real> coherent_state(Real nbar, Real phase, Eigen::Index dim, Real tail_tolerance = Real(1e-12)) {
  const ProbeSpec spec{ProbeKind::coherent, double(nbar), double(phase)};
  spec.validate();
  detail::check_probe_dim<Real>(spec, dim, tail_tolerance);
  ComplexVector<Real> c = ComplexVector<Real>::Zero(dim);
  if (nbar == Real(0)) {
    c(0) = 1;
    return FockVector<Real>(std::move(c));
  }
  const Real logabs = Real(0.5) * std::log(nbar);
  Real logc = -nbar / 2;
  for (Eigen::Index n = 0; n < dim; ++n) {
    if (n > 0) logc += logabs - Real(0.5) * std::log(Real(n));
    c(n) = std::polar(std::exp(logc), Real(n) * phase);
  }
  c /= c.norm();
  return FockVector<Real>(std::move(c));
}

/// S(xi)|0> with xi = r e^{i phase}, r = asinh(sqrt(nbar)). Odd amplitudes
/// are exactly zero.
template <typename Real = double>
FockVector<Real> squeezed_vacuum_state(Real nbar, Real phase, Eigen::Index dim,
                                       Real tail_tolerance = Real(1e-12)) {
  const ProbeSpec spec{ProbeKind::squeezed_vacuum, double(nbar), double(phase)};
  spec.validate();
  detail::check_probe_dim<Real>(spec, dim, tail_tolerance);
  ComplexVector<Real> c = ComplexVector<Real>::Zero(dim);
  const Real r = std::asinh(std::sqrt(nbar));
  const std::complex<Real> ratio = -std::polar(std::tanh(r), phase);
  std::complex<Real> amp = Real(1) / std::sqrt(std::cosh(r));
  for (Eigen::Index k = 0; 2 * k < dim; ++k) {
    if (k > 0) amp *= ratio * std::sqrt(Real(2 * k - 1) / Real(2 * k));
    c(2 * k) = amp;
  }
  c /= c.norm();
  return FockVector<Real>(std::move(c));
}

template <typename Real = double>
FockVector<Real> probe_state(const ProbeSpec& probe, Eigen::Index dim, Real tail_tolerance = Real(1e-12)) {
  if (probe.kind == ProbeKind::coherent)
    return coherent_state<Real>(Real(probe.nbar), Real(probe.probe_phase), dim, tail_tolerance);
  return squeezed_vacuum_state<Real>(Real(probe.nbar), Real(probe.probe_phase), dim, tail_tolerance);
}

/// e^{-i phi n} applied diagonally.
template <typename Real>
FockVector<Real> apply_phase_shift(const FockVector<Real>& state, Real phi) {
  ComplexVector<Real> out(state.dim());
  for (Eigen::Index n = 0; n < state.dim(); ++n)
    out(n) = state.amplitudes(n) * std::polar(Real(1), -phi * Real(n));
  return FockVector<Real>(std::move(out));
}

/// n |v>, diagonal.
template <typename Real>
ComplexVector<Real> apply_number(const ComplexVector<Real>& v) {
  ComplexVector<Real> out(v.size());
  for (Eigen::Index n = 0; n < v.size(); ++n) out(n) = Real(n) * v(n);
  return out;
}

/// a |v>; the result has one fewer entry (exact).
template <typename Real>
ComplexVector<Real> apply_lowering(const ComplexVector<Real>& v) {
  const Eigen::Index n = std::max<Eigen::Index>(v.size() - 1, 1);
  ComplexVector<Real> out = ComplexVector<Real>::Zero(n);
  for (Eigen::Index k = 1; k < v.size(); ++k) out(k - 1) = std::sqrt(Real(k)) * v(k);
  return out;
}

/// a^dagger |v>; the result has one more entry (exact).
template <typename Real>
ComplexVector<Real> apply_raising(const ComplexVector<Real>& v) {
  ComplexVector<Real> out = ComplexVector<Real>::Zero(v.size() + 1);
  for (Eigen::Index k = 0; k < v.size(); ++k) out(k + 1) = std::sqrt(Real(k + 1)) * v(k);
  return out;
}

/// x |v> = (a + a^dagger)|v>, exact, grows by one entry.
template <typename Real>
ComplexVector<Real> apply_quadrature(const ComplexVector<Real>& v) {
  ComplexVector<Real> out = apply_raising(v);
  const ComplexVector<Real> low = apply_lowering(v);
  out.head(low.size()) += low;
  return out;
}

/// Sum_{n >= k} |c_n|^2.
template <typename Real>
Real tail_mass(const FockVector<Real>& state, Eigen::Index k) {
  if (k < 0 || k > state.dim()) throw InputError("tail_mass index out of range");
  return state.amplitudes.tail(state.dim() - k).squaredNorm();
}

template <typename Real>
Real mean_photon_number(const FockVector<Real>& state) {
  Real s = 0;
  for (Eigen::Index n = 0; n < state.dim(); ++n) s += Real(n) * std::norm(state.amplitudes(n));
  return s;
}

/// Spectral form of x^m at a fixed truncation, reusable for any gamma:
/// exp(-i gamma X) = V exp(-i gamma Lambda) V^T.
template <typename Real = double>
class Scrambler {
public:
  Scrambler(int m, Eigen::Index dim) : m_(m) {
    if (m != 2 && m != 3) throw InputError("scrambler order must be 2 or 3, got " + std::to_string(m));
    const RealMatrix<Real> x = quadrature_power_matrix<Real>(m, dim);
    Eigen::SelfAdjointEigenSolver<RealMatrix<Real>> solver(x);
    if (solver.info() != Eigen::Success)
      throw NumericalError("eigendecomposition of x^" + std::to_string(m) + " failed at dim " + std::to_string(dim));
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
  }

  int order() const { return m_; }
  Eigen::Index dim() const { return eigenvalues_.size(); }
  const RealVector<Real>& eigenvalues() const { return eigenvalues_; }
  const RealMatrix<Real>& eigenvectors() const { return eigenvectors_; }

  ComplexMatrix<Real> unitary(Real gamma) const {
    const ComplexMatrix<Real> v = eigenvectors_.template cast<std::complex<Real>>();
    return v * phases(gamma).asDiagonal() * v.adjoint();
  }

  /// exp(-i gamma X) |v> without forming the matrix.
  ComplexVector<Real> apply(Real gamma, const ComplexVector<Real>& v) const {
    if (v.size() != dim()) throw InputError("scrambler/state dimension mismatch");
    const RealVector<Real> re = eigenvectors_.transpose() * v.real();
    const RealVector<Real> im = eigenvectors_.transpose() * v.imag();
    ComplexVector<Real> coeff(dim());
    const ComplexVector<Real> ph = phases(gamma);
    for (Eigen::Index k = 0; k < dim(); ++k) coeff(k) = ph(k) * std::complex<Real>(re(k), im(k));
    const RealVector<Real> out_re = eigenvectors_ * coeff.real();
    const RealVector<Real> out_im = eigenvectors_ * coeff.imag();
    ComplexVector<Real> out(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) out(k) = std::complex<Real>(out_re(k), out_im(k));
    return out;
  }

private:
  ComplexVector<Real> phases(Real gamma) const {
    ComplexVector<Real> ph(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) ph(k) = std::polar(Real(1), -gamma * eigenvalues_(k));
    return ph;
  }

  int m_;
  RealVector<Real> eigenvalues_;
  RealMatrix<Real> eigenvectors_;
};

/// U = exp(-i gamma x^m) at truncation `dim`.
template <typename Real = double>
FockOperator<Real> build_scrambler(Real gamma, int m, Eigen::Index dim) {
  if (!std::isfinite(double(gamma))) throw InputError("scrambler strength must be finite");
  FockOperator<Real> op;
  try {
    op.entries = Scrambler<Real>(m, dim).unitary(gamma);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " (gamma=" + std::to_string(double(gamma)) + ")");
  }
  op.band_width = int(dim) - 1;
  return op;
}

}  // namespace twophase
