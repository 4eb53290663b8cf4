#include <catch2/catch_amalgamated.hpp>

#include "contexta/pauli.hpp"

using namespace contexta;
using Catch::Approx;

namespace {

constexpr double kTol = 1e-12;

// Independent clock/shift reference: Z|c> = w^c|c>, X|c> = |c-1>.
CMat z_ref(int p) {
  CMat m = CMat::Zero(p, p);
  for (int c = 0; c < p; ++c) m(c, c) = unit_phase(c, p);
  return m;
}

CMat x_ref(int p) {
  CMat m = CMat::Zero(p, p);
  for (int c = 0; c < p; ++c) m((c - 1 + p) % p, c) = 1.0;
  return m;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return m;
}

CMat mat_pow(CMat m, int e) {
  CMat r = CMat::Identity(m.rows(), m.cols());
  for (int i = 0; i < e; ++i) r = r * m;
  return r;
}

double mat_dist(const CMat& a, const CMat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

std::complex<double> mu_pow(const PrimeConfig& cfg, int e) {
  return cfg.p == 2 ? std::pow(std::complex<double>(0, 1), mod_p(e, 4))
                    : unit_phase(mod_p(e, cfg.p), cfg.p);
}

}  // namespace

TEST_CASE("qbar values") {
  PrimeConfig c2 = make_config(2, 1);
  REQUIRE(qbar(c2, Vec{1, 0}) == 0);  // z1
  REQUIRE(qbar(c2, Vec{0, 1}) == 0);  // x1
  REQUIRE(qbar(c2, Vec{1, 1}) == 1);  // y1
  PrimeConfig c3 = make_config(3, 1);
  REQUIRE(qbar(c3, Vec{1, 1}) == 2);  // (1*1)/2 = inv2 = 2 mod 3
  REQUIRE(qbar(c3, Vec{2, 1}) == 1);  // 2*inv2 = 1
}

TEST_CASE("beta on symplectic pairs") {
  PrimeConfig c2 = make_config(2, 1);
  Vec z1{1, 0}, x1{0, 1};
  REQUIRE(beta(c2, x1, z1) == 1);
  REQUIRE(beta(c2, z1, x1) == 3);
  REQUIRE(beta(c2, z1, vec_zero(2)) == 0);
  REQUIRE(beta(c2, vec_zero(2), x1) == 0);

  // p=3: 2*beta = form, so beta = 2*form; form(z1,x1) = 2 gives beta = 1.
  PrimeConfig c3 = make_config(3, 1);
  REQUIRE(beta(c3, Vec{1, 0}, Vec{0, 1}) == 1);
  REQUIRE(beta(c3, Vec{0, 1}, Vec{1, 0}) == 2);
}

TEST_CASE("beta cocycle identity, exhaustive") {
  for (auto [p, n] : {std::pair{2, 2}, {3, 1}, {5, 1}}) {
    PrimeConfig cfg = make_config(p, n);
    const int m = phase_modulus(cfg);
    std::vector<Vec> vs = all_vectors(cfg);
    for (const Vec& v : vs)
      for (const Vec& w : vs)
        for (const Vec& u : vs) {
          const int lhs = beta(cfg, v, w) + beta(cfg, vec_add(p, v, w), u);
          const int rhs = beta(cfg, w, u) + beta(cfg, v, vec_add(p, w, u));
          REQUIRE(mod_p(lhs - rhs, m) == 0);
        }
  }
}

TEST_CASE("two-times-beta law") {
  // p=2: 2*beta = 0 mod 4 on commuting pairs; p>2: 2*beta = form everywhere.
  for (auto [p, n] : {std::pair{2, 2}, {3, 2}, {5, 1}, {7, 1}}) {
    PrimeConfig cfg = make_config(p, n);
    const int m = phase_modulus(cfg);
    for (const Vec& v : all_vectors(cfg))
      for (const Vec& w : all_vectors(cfg)) {
        if (p == 2) {
          if (symplectic_form(cfg, v, w) == 0)
            REQUIRE(mod_p(2 * beta(cfg, v, w), m) == 0);
        } else {
          REQUIRE(mod_p(2 * beta(cfg, v, w), m) == symplectic_form(cfg, v, w));
        }
      }
  }
}

TEST_CASE("eta matrices: named small cases") {
  PrimeConfig c2 = make_config(2, 1);
  CMat z = eta_matrix(c2, Vec{1, 0});
  REQUIRE(mat_dist(z, z_ref(2)) < kTol);  // diag(1, -1)
  CMat x = eta_matrix(c2, Vec{0, 1});
  REQUIRE(mat_dist(x, x_ref(2)) < kTol);
  CMat y = eta_matrix(c2, Vec{1, 1});
  REQUIRE(mat_dist(y, std::complex<double>(0, 1) * z_ref(2) * x_ref(2)) < kTol);
  REQUIRE(mat_dist(y, y.adjoint()) < kTol);                 // Hermitian
  REQUIRE(mat_dist(y * y, CMat::Identity(2, 2)) < kTol);    // eigenvalues +-1
  REQUIRE(std::abs(y.trace()) < kTol);
  REQUIRE(mat_dist(eta_matrix(c2, vec_zero(2)), CMat::Identity(2, 2)) < kTol);

  PrimeConfig c3 = make_config(3, 1);
  REQUIRE(mat_dist(eta_matrix(c3, Vec{1, 0}), z_ref(3)) < kTol);
  REQUIRE(mat_dist(eta_matrix(c3, Vec{0, 1}), x_ref(3)) < kTol);
}

TEST_CASE("eta matches the tensor-product construction, factor 1 leftmost") {
  for (auto [p, n] : {std::pair{2, 2}, {3, 2}}) {
    PrimeConfig cfg = make_config(p, n);
    const CMat z1f = z_ref(p), x1f = x_ref(p);
    for (const Vec& v : all_vectors(cfg)) {
      CMat expect = CMat::Identity(1, 1);
      for (int k = 0; k < n; ++k) {
        CMat factor = mat_pow(z1f, v[std::size_t(k)]) * mat_pow(x1f, v[std::size_t(n + k)]);
        expect = kron(expect, factor);
      }
      expect *= mu_pow(cfg, qbar(cfg, v));
      REQUIRE(mat_dist(eta_matrix(cfg, v), expect) < kTol);
    }
  }
}

TEST_CASE("eta multiplication law, exhaustive") {
  for (auto [p, n] : {std::pair{2, 1}, {2, 2}, {3, 1}, {5, 1}}) {
    PrimeConfig cfg = make_config(p, n);
    for (const Vec& v : all_vectors(cfg))
      for (const Vec& w : all_vectors(cfg)) {
        CMat lhs = eta_matrix(cfg, v) * eta_matrix(cfg, w);
        CMat rhs = mu_pow(cfg, beta(cfg, v, w)) * eta_matrix(cfg, vec_add(p, v, w));
        REQUIRE(mat_dist(lhs, rhs) < kTol);
      }
  }
}

TEST_CASE("eta commutation law") {
  for (auto [p, n] : {std::pair{2, 2}, {3, 1}}) {
    PrimeConfig cfg = make_config(p, n);
    for (const Vec& v : all_vectors(cfg))
      for (const Vec& w : all_vectors(cfg)) {
        CMat lhs = eta_matrix(cfg, v) * eta_matrix(cfg, w);
        CMat rhs = unit_phase(symplectic_form(cfg, v, w), p) *
                   (eta_matrix(cfg, w) * eta_matrix(cfg, v));
        REQUIRE(mat_dist(lhs, rhs) < kTol);
      }
  }
}

TEST_CASE("eta unitarity, order p, adjoint") {
  for (auto [p, n] : {std::pair{2, 2}, {3, 1}, {7, 1}}) {
    PrimeConfig cfg = make_config(p, n);
    const CMat id = CMat::Identity(cfg.d(), cfg.d());
    for (const Vec& v : all_vectors(cfg)) {
      CMat e = eta_matrix(cfg, v);
      REQUIRE(mat_dist(e * e.adjoint(), id) < kTol);
      REQUIRE(mat_dist(mat_pow(e, p), id) < kTol);
      REQUIRE(mat_dist(e.adjoint(), eta_matrix(cfg, vec_neg(p, v))) < kTol);
    }
  }
}

TEST_CASE("eta capacity guard") {
  REQUIRE_THROWS_AS(eta_matrix(make_config(2, 8), vec_zero(16)), capacity_error);
}

TEST_CASE("restricted cocycle tables") {
  {
    PrimeConfig cfg = make_config(3, 1);
    for (int k = 0; k < 4; ++k) {
      Subspace I = span(cfg, {k < 3 ? Vec{k % 3, 1} : Vec{1, 0}});
      RestrictedCocycle rc = restricted_beta(cfg, I);
      for (const auto& [key, val] : rc.table) REQUIRE(val == 0);
    }
  }
  {
    PrimeConfig cfg = make_config(2, 2);
    Subspace xx = span(cfg, {Vec{0, 0, 1, 0}, Vec{0, 0, 0, 1}});
    RestrictedCocycle rc = restricted_beta(cfg, xx);
    for (const auto& [key, val] : rc.table) REQUIRE(val == 0);

    Vec y1{1, 0, 1, 0}, y2{0, 1, 0, 1};
    Subspace yy = span(cfg, {y1, y2});
    RestrictedCocycle ryy = restricted_beta(cfg, yy);
    REQUIRE(ryy(y1, y2) == 1);
    // nonzero off-diagonal pairs all carry 1; diagonal pairs carry 0
    for (const Vec& a : elements(cfg, yy))
      for (const Vec& b : elements(cfg, yy)) {
        if (is_zero(a) || is_zero(b)) {
          REQUIRE(ryy(a, b) == 0);
        } else if (a == b) {
          REQUIRE(ryy(a, b) == 0);
        } else {
          REQUIRE(ryy(a, b) == 1);
        }
      }
  }
  {
    // cross pair of the lone square context built from two-qubit mixtures
    PrimeConfig cfg = make_config(2, 2);
    Vec a{0, 1, 1, 0}, b{1, 0, 0, 1};  // x1+z2, z1+x2
    RestrictedCocycle rc = restricted_beta(cfg, span(cfg, {a, b}));
    REQUIRE(rc(a, b) == 1);
  }
  {
    PrimeConfig cfg = make_config(2, 3);
    Vec y1{1, 0, 0, 1, 0, 0}, y2{0, 1, 0, 0, 1, 0}, x3{0, 0, 0, 0, 0, 1};
    RestrictedCocycle rc = restricted_beta(cfg, span(cfg, {y1, y2, x3}));
    REQUIRE(rc(y1, y2) == 1);
    REQUIRE(rc(vec_add(2, y1, y2), x3) == 0);
  }
  {
    PrimeConfig cfg = make_config(2, 1);
    REQUIRE_THROWS_AS(restricted_beta(cfg, span(cfg, {Vec{1, 0}, Vec{0, 1}})),
                      input_error);
  }
}

TEST_CASE("cup identity on commuting pairs, p=2") {
  for (int n : {1, 2, 3}) {
    PrimeConfig cfg = make_config(2, n);
    for (const Vec& v : all_vectors(cfg))
      for (const Vec& w : all_vectors(cfg)) {
        if (symplectic_form(cfg, v, w) != 0) continue;
        std::int64_t xz = 0;
        for (int i = 0; i < n; ++i)
          xz += std::int64_t(v[std::size_t(n + i)]) * w[std::size_t(i)];
        const int expect = mod_p(qbar(cfg, v) * qbar(cfg, w) + xz, 2);
        REQUIRE(beta_restricted_pair(cfg, v, w) == expect);
      }
  }
}

TEST_CASE("pi group structure") {
  {
    PrimeConfig cfg = make_config(2, 2);
    PiGroup pi = build_pi(cfg);
    REQUIRE(pi.order == 32);
  }
  {
    PrimeConfig cfg = make_config(2, 1);
    PiGroup pi = build_pi(cfg);
    // abelian at p = 2: the central-coordinate corrections agree both ways
    Vec x1{0, 1}, z1{1, 0};
    REQUIRE(pi.mul(pi.id(x1, 0), pi.id(z1, 0)) == pi.mul(pi.id(z1, 0), pi.id(x1, 0)));
    REQUIRE(pi.mul(pi.id(x1, 0), pi.id(z1, 0)) == pi.id(Vec{1, 1}, 1));
    for (std::int64_t g = 0; g < pi.order; ++g)
      for (std::int64_t h = 0; h < pi.order; ++h) {
        REQUIRE(pi.mul(g, h) == pi.mul(h, g));
        for (std::int64_t k = 0; k < pi.order; ++k)
          REQUIRE(pi.mul(pi.mul(g, h), k) == pi.mul(g, pi.mul(h, k)));
      }
  }
  {
    PrimeConfig cfg = make_config(3, 1);
    PiGroup pi = build_pi(cfg);
    REQUIRE(pi.order == 27);
    Vec x1{0, 1}, z1{1, 0};
    REQUIRE(pi.mul(pi.id(x1, 0), pi.id(z1, 0)) != pi.mul(pi.id(z1, 0), pi.id(x1, 0)));
    for (std::int64_t g = 0; g < pi.order; ++g) {
      REQUIRE(pi.mul(g, pi.identity()) == g);
      REQUIRE(pi.mul(pi.identity(), g) == g);
      REQUIRE(pi.mul(g, pi.inverse(g)) == pi.identity());
      // (0, t) central
      for (int t = 0; t < 3; ++t)
        REQUIRE(pi.mul(g, pi.id(vec_zero(2), t)) == pi.mul(pi.id(vec_zero(2), t), g));
    }
    for (std::int64_t g = 0; g < pi.order; ++g)
      for (std::int64_t h = 0; h < pi.order; ++h)
        for (std::int64_t k = 0; k < pi.order; ++k)
          REQUIRE(pi.mul(pi.mul(g, h), k) == pi.mul(g, pi.mul(h, k)));
  }
}

TEST_CASE("standard lifts of isotropic subspaces are subgroups") {
  for (auto [p, n] : {std::pair{2, 2}, {3, 1}}) {
    PrimeConfig cfg = make_config(p, n);
    PiGroup pi = build_pi(cfg);
    for (const Subspace& I : enumerate_isotropic(cfg)) {
      std::vector<std::int64_t> lift = pi.standard_lift(I);
      REQUIRE(lift.size() == std::size_t(elements(cfg, I).size()));
      for (std::int64_t g : lift)
        for (std::int64_t h : lift)
          REQUIRE(std::binary_search(lift.begin(), lift.end(), pi.mul(g, h)));
    }
  }
}

TEST_CASE("pi group capacity guard") {
  REQUIRE_THROWS_AS(build_pi(make_config(3, 4)), capacity_error);
  REQUIRE(build_pi(make_config(2, 6)).order == 8192);  // boundary admitted
}

TEST_CASE("quadratic form Q") {
  PrimeConfig cfg = make_config(2, 1);
  REQUIRE(quadratic_form_Q(cfg, vec_zero(2), 0) == 0);
  Vec y1{1, 1}, x1{0, 1};
  REQUIRE(quadratic_form_Q(cfg, y1, qbar(cfg, y1)) == 0);  // q-image of <y1>
  REQUIRE(quadratic_form_Q(cfg, x1, 1) == 1);
  REQUIRE_THROWS_AS(quadratic_form_Q(make_config(3, 1), vec_zero(2), 0), input_error);

  // Q is additive on pi at p = 2
  PiGroup pi = build_pi(cfg);
  for (std::int64_t g = 0; g < pi.order; ++g)
    for (std::int64_t h = 0; h < pi.order; ++h) {
      auto [v, t] = pi.unpack(g);
      auto [w, u] = pi.unpack(h);
      auto [vw, tu] = pi.unpack(pi.mul(g, h));
      REQUIRE(quadratic_form_Q(cfg, vw, tu) ==
              mod_p(quadratic_form_Q(cfg, v, t) + quadratic_form_Q(cfg, w, u), 2));
    }
}
