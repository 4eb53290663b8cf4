#pragma once

// Phase bookkeeping for generalized Pauli operators eta(v), v in F_p^{2n}.
//
// eta(v) = mu^{qbar(v)} Z(v_z) X(v_x) with mu = i for p = 2 and mu = omega
// for p > 2.  Z(a)|c> = omega^{a.c}|c>;  X(b)|c> = |c - b>.  The shift acts
// downward so that the multiplication phase comes out as
//   eta(v) eta(w) = mu^{beta(v,w)} eta(v+w),
//   beta(v,w) = v_x.w_z + qbar(v) + qbar(w) - qbar(v+w)   (mod m),
// with m = 4 for p = 2 and m = p otherwise.  All identities here are exact
// integer statements; matrices enter only as a test oracle.
//
// Tensor factor 1 is the leftmost (most significant) slot: basis index
// a = (a_1..a_n) maps to sum a_i p^{n-i}.

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "contexta/gf.hpp"

namespace contexta {

// Modulus m of the phase group Z_mu: 4 when p = 2, p otherwise.
inline int phase_modulus(const PrimeConfig& cfg) { return cfg.p == 2 ? 4 : cfg.p; }

// qbar(v) = v_z.v_x mod 2 as an element of {0,1} in Z/4 when p = 2,
// and (v_z.v_x)/2 mod p when p > 2.
inline int qbar(const PrimeConfig& cfg, const Vec& v) {
  std::int64_t s = 0;
  for (int i = 0; i < cfg.n; ++i)
    s += std::int64_t(v[std::size_t(i)]) * v[std::size_t(cfg.n + i)];
  if (cfg.p == 2) return int(s % 2);
  return mod_p(s * inv_mod(2, cfg.p), cfg.p);
}

// The canonical extension cocycle beta = beta0 + d(qbar), valued mod m.
inline int beta(const PrimeConfig& cfg, const Vec& v, const Vec& w) {
  const int m = phase_modulus(cfg);
  std::int64_t b0 = 0;  // v_x . w_z
  for (int i = 0; i < cfg.n; ++i)
    b0 += std::int64_t(v[std::size_t(cfg.n + i)]) * w[std::size_t(i)];
  if (cfg.p == 2) b0 *= 2;  // omega = mu^2 when p = 2
  const std::int64_t d = qbar(cfg, v) + qbar(cfg, w) - qbar(cfg, vec_add(cfg.p, v, w));
  return mod_p(b0 + d, m);
}

// beta restricted to an isotropic context, reduced mod p: for p = 2 the
// mod-4 values on commuting pairs lie in {0,2} and are halved into Z/2; for
// p > 2 the restriction vanishes identically.
struct RestrictedCocycle {
  Subspace context;
  std::map<std::pair<Vec, Vec>, int> table;  // all pairs of the context

  int operator()(const Vec& v, const Vec& w) const { return table.at({v, w}); }
};

// Value of the restricted cocycle on one commuting pair.
inline int beta_restricted_pair(const PrimeConfig& cfg, const Vec& v, const Vec& w) {
  if (symplectic_form(cfg, v, w) != 0)
    throw input_error("restricted cocycle needs a commuting pair; form(" +
                      vec_str(cfg, v) + ", " + vec_str(cfg, w) + ") = " +
                      std::to_string(symplectic_form(cfg, v, w)));
  if (cfg.p > 2) return 0;
  const int b = beta(cfg, v, w);
  // b in {0,2} on commuting pairs (2*beta = 0 there); halve into Z/2
  return b / 2;
}

inline RestrictedCocycle restricted_beta(const PrimeConfig& cfg, const Subspace& I) {
  if (!is_isotropic(cfg, I))
    throw input_error("restricted cocycle requires an isotropic subspace");
  RestrictedCocycle rc;
  rc.context = I;
  for (const Vec& v : elements(cfg, I))
    for (const Vec& w : elements(cfg, I))
      rc.table[{v, w}] = beta_restricted_pair(cfg, v, w);
  return rc;
}

// --- Matrix oracle --------------------------------------------------------

using CMat = Eigen::MatrixXcd;

inline std::complex<double> unit_phase(int numerator, int denominator) {
  const double t = 2.0 * M_PI * double(numerator) / double(denominator);
  return {std::cos(t), std::sin(t)};
}

// eta(v) as an explicit d x d unitary, d = p^n <= 128.
inline CMat eta_matrix(const PrimeConfig& cfg, const Vec& v) {
  if (cfg.d() > 128)
    throw capacity_error("matrix representation needs d = p^n <= 128, got " +
                         std::to_string(cfg.d()));
  const std::int64_t d = cfg.d();
  CMat m = CMat::Zero(d, d);
  const std::complex<double> pre =
      cfg.p == 2 ? std::pow(std::complex<double>(0.0, 1.0), qbar(cfg, v))
                 : unit_phase(qbar(cfg, v), cfg.p);
  for (std::int64_t c = 0; c < d; ++c) {
    // digits of the basis index, factor 1 first
    std::int64_t phase = 0, r = 0, t = c;
    std::vector<int> digits(std::size_t(cfg.n), 0);
    for (int k = cfg.n - 1; k >= 0; --k) { digits[std::size_t(k)] = int(t % cfg.p); t /= cfg.p; }
    for (int k = 0; k < cfg.n; ++k) {
      const int shifted = mod_p(digits[std::size_t(k)] - v[std::size_t(cfg.n + k)], cfg.p);
      phase += std::int64_t(v[std::size_t(k)]) * shifted;
      r = r * cfg.p + shifted;
    }
    m(r, c) = pre * unit_phase(mod_p(phase, cfg.p), cfg.p);
  }
  return m;
}

// --- The central extension pi = V x_form Z/p ------------------------------

// Element (v, t); multiplication (v,t)(v',t') = (v+v', t+t'+form(v,v')).
// Abelian for p = 2 (the form is alternating mod 2), Heisenberg for p > 2.
struct PiGroup {
  PrimeConfig cfg;
  std::int64_t order = 0;  // p^{2n+1}

  std::int64_t id(const Vec& v, int t) const {
    return vec_index(cfg, v) * cfg.p + t;
  }
  std::pair<Vec, int> unpack(std::int64_t g) const {
    return {vec_from_index(cfg, g / cfg.p), int(g % cfg.p)};
  }
  std::int64_t mul(std::int64_t g, std::int64_t h) const {
    auto [v, t] = unpack(g);
    auto [w, u] = unpack(h);
    return id(vec_add(cfg.p, v, w), mod_p(t + u + symplectic_form(cfg, v, w), cfg.p));
  }
  std::int64_t identity() const { return 0; }
  std::int64_t inverse(std::int64_t g) const {
    auto [v, t] = unpack(g);
    // (v,t)(-v, -t + form(v,v)=0 ... ) : solve (v,t)(w,u) = (0,0)
    return id(vec_neg(cfg.p, v), mod_p(-t - symplectic_form(cfg, v, vec_neg(cfg.p, v)), cfg.p));
  }

  // Standard lift {(v, 0) : v in I}; a subgroup because form|_I = 0.
  std::vector<std::int64_t> standard_lift(const Subspace& I) const {
    std::vector<std::int64_t> out;
    for (const Vec& v : elements(cfg, I)) out.push_back(id(v, 0));
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline PiGroup build_pi(const PrimeConfig& cfg) {
  const std::int64_t order = cfg.vspace_size() * cfg.p;
  if (order > 8192)
    throw capacity_error("pi group needs p^(2n+1) <= 8192, got " + std::to_string(order));
  return PiGroup{cfg, order};
}

// Q(v, t) = t + qbar(v) mod 2 (p = 2 only).  Composing the standard lift
// with q(v,t) = (v, t + qbar(v)) lands every isotropic subspace in the zero
// set of Q.
inline int quadratic_form_Q(const PrimeConfig& cfg, const Vec& v, int t) {
  if (cfg.p != 2) throw input_error("quadratic form Q is defined for p = 2 only");
  return mod_p(t + qbar(cfg, v), 2);
}

}  // namespace contexta
