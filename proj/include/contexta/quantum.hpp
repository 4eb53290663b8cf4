#pragma once

// States, context projectors, and the discrete Wigner transform.
//
// P_s = (1/|I|) sum_{u in I} w^{-s(u)} eta(u)        rank d/|I| projector
// A_v = (1/d)   sum_{u in V} w^{form(v,u)} eta(u)    phase-point operator
// W_rho(v) = (1/d) Tr(rho A_v), computed through the Pauli coefficients
// c_u = Tr(rho eta(u)) so the transform costs O(|V|^2) scalar work.
//
// The only eigensolver use in the library is the PSD check in make_density.

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "contexta/presheaf.hpp"

namespace contexta {

struct DensityMatrix {
  PrimeConfig cfg;
  CMat mat;
};

inline DensityMatrix make_density(const PrimeConfig& cfg, CMat m) {
  const int d = cfg.d();
  if (m.rows() != d || m.cols() != d)
    throw input_error("density matrix must be " + std::to_string(d) + "x" +
                      std::to_string(d) + " for p=" + std::to_string(cfg.p) +
                      ", n=" + std::to_string(cfg.n));
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kMatTol)
    throw input_error("density matrix is not Hermitian within 1e-10");
  if (std::abs(m.trace() - std::complex<double>(1.0, 0.0)) > kProbTol)
    throw input_error("density matrix trace differs from 1 beyond 1e-9");
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kProbTol)
    throw input_error("density matrix has an eigenvalue below -1e-9");
  return DensityMatrix{cfg, std::move(m)};
}

inline DensityMatrix pure_state(const PrimeConfig& cfg, const Eigen::VectorXcd& psi) {
  const double nrm = psi.norm();
  if (nrm < kProbTol) throw input_error("cannot normalize the zero vector");
  Eigen::VectorXcd u = psi / nrm;
  return make_density(cfg, u * u.adjoint());
}

// Deterministic standard Gaussians: fixed mt19937_64 stream + Box-Muller,
// so results depend only on the seed (std::normal_distribution does not
// pin its algorithm).
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_) { have_ = false; return spare_; }
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_ = true;
    return r * std::cos(a);
  }

 private:
  double uniform() { return double(rng_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_ = false;
};

inline DensityMatrix random_state(const PrimeConfig& cfg, std::uint64_t seed,
                                  double mix = 0.0) {
  if (mix < 0.0 || mix > 1.0) throw input_error("mix must lie in [0, 1]");
  const int d = cfg.d();
  GaussianStream g(seed);
  Eigen::VectorXcd psi(d);
  for (int i = 0; i < d; ++i) {
    const double re = g.next();
    const double im = g.next();
    psi(i) = std::complex<double>(re, im);
  }
  CMat rho = pure_state(cfg, psi).mat;
  if (mix > 0.0)
    rho = (1.0 - mix) * rho + (mix / d) * CMat::Identity(d, d);
  return make_density(cfg, std::move(rho));
}

// Named states: "ghz" (p=2, n=3), "bell" (p=2, n=2), "basis(k)",
// "maximally_mixed", "random(seed)" or "random(seed,mix)".
inline DensityMatrix named_state(const std::string& name, const PrimeConfig& cfg) {
  std::string head = name;
  std::vector<std::string> args;
  const std::size_t open = name.find('(');
  if (open != std::string::npos) {
    if (name.back() != ')') throw input_error("unbalanced parentheses in state name: " + name);
    head = name.substr(0, open);
    std::string body = name.substr(open + 1, name.size() - open - 2);
    std::size_t pos = 0;
    while (pos <= body.size() && !body.empty()) {
      const std::size_t comma = body.find(',', pos);
      args.push_back(body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                 : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  const int d = cfg.d();
  // ghz and bell avoid the 1/sqrt(2) normalization so every entry is an
  // exact dyadic and Born values on stabilizer events come out exact.
  if (head == "ghz") {
    if (cfg.p != 2 || cfg.n != 3) throw input_error("ghz requires p=2, n=3");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
    psi(0) = psi(d - 1) = 1.0;
    return make_density(cfg, 0.5 * (psi * psi.adjoint()));
  }
  if (head == "bell") {
    if (cfg.p != 2 || cfg.n != 2) throw input_error("bell requires p=2, n=2");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
    psi(0) = psi(d - 1) = 1.0;
    return make_density(cfg, 0.5 * (psi * psi.adjoint()));
  }
  if (head == "basis") {
    if (args.size() != 1) throw input_error("basis state needs one index: basis(k)");
    const long long k = detail::parse_int_arg(args[0], "basis index");
    if (k < 0 || k >= d) throw input_error("basis index out of range [0, " +
                                           std::to_string(d) + ")");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
    psi(k) = 1.0;
    return pure_state(cfg, psi);
  }
  if (head == "maximally_mixed") {
    return DensityMatrix{cfg, CMat::Identity(d, d) / double(d)};
  }
  if (head == "random") {
    if (args.empty() || args.size() > 2)
      throw input_error("random state takes random(seed) or random(seed,mix)");
    const long long seed = detail::parse_int_arg(args[0], "random seed");
    if (seed < 0) throw input_error("random seed must be nonnegative");
    const double mix = args.size() == 2 ? detail::parse_real_arg(args[1], "mix weight") : 0.0;
    return random_state(cfg, std::uint64_t(seed), mix);
  }
  throw input_error("unknown state name: " + name);
}

// Projector onto the joint eigenspace selected by the event s.
inline CMat projector(const PrimeConfig& cfg, const OutcomeFunction& s) {
  if (!outcome_valid(cfg, s))
    throw input_error("outcome function violates ds = beta on its context");
  const int d = cfg.d();
  const int m = phase_modulus(cfg);
  const int wstep = cfg.p == 2 ? 2 : 1;  // w as a power of mu
  CMat acc = CMat::Zero(d, d);
  const std::vector<Vec> el = elements(cfg, s.context);
  for (const Vec& u : el)
    acc += unit_phase(mod_p(-s.values.at(u) * wstep, m), m) * eta_matrix(cfg, u);
  return acc / double(el.size());
}

inline CMat point_operator(const PrimeConfig& cfg, const Vec& v) {
  const int d = cfg.d();
  const int m = phase_modulus(cfg);
  const int wstep = cfg.p == 2 ? 2 : 1;
  CMat acc = CMat::Zero(d, d);
  for (const Vec& u : all_vectors(cfg)) {
    const int f = symplectic_form(cfg, v, u);
    acc += unit_phase(mod_p(f * wstep, m), m) * eta_matrix(cfg, u);
  }
  return acc / double(d);
}

inline std::complex<double> pauli_expectation(const DensityMatrix& rho, const Vec& v) {
  return (rho.mat * eta_matrix(rho.cfg, v)).trace();
}

// Discrete Wigner function, indexed by vec_index.  rho = sum_v W(v) A_v.
inline std::vector<double> wigner(const DensityMatrix& rho) {
  const PrimeConfig& cfg = rho.cfg;
  const int m = phase_modulus(cfg);
  const int wstep = cfg.p == 2 ? 2 : 1;
  const std::vector<Vec> vs = all_vectors(cfg);
  std::vector<std::complex<double>> coeff(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    coeff[i] = pauli_expectation(rho, vs[i]);
  std::vector<double> w(vs.size(), 0.0);
  const double scale = 1.0 / double(vs.size());  // 1/d^2
  double worst_imag = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < vs.size(); ++j) {
      const int f = symplectic_form(cfg, vs[i], vs[j]);
      acc += unit_phase(mod_p(f * wstep, m), m) * coeff[j];
    }
    acc *= scale;
    worst_imag = std::max(worst_imag, std::abs(acc.imag()));
    w[i] = acc.real();
  }
  if (worst_imag > kMatTol)
    throw numeric_error("Wigner value has imaginary part " + std::to_string(worst_imag));
  return w;
}

// Born probability Tr(rho P_s), clamped to [0,1] after the tolerance check.
inline double born(const DensityMatrix& rho, const OutcomeFunction& s) {
  const std::complex<double> t = (rho.mat * projector(rho.cfg, s)).trace();
  if (std::abs(t.imag()) > kMatTol)
    throw numeric_error("Born value has imaginary part " + std::to_string(t.imag()));
  double v = t.real();
  if (v < -kProbTol || v > 1.0 + kProbTol)
    throw numeric_error("Born value " + std::to_string(v) + " outside [0,1]");
  return std::min(1.0, std::max(0.0, v));
}

}  // namespace contexta
