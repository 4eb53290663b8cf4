#include "catch2/catch_amalgamated.hpp"

#include "contexta/covers.hpp"
#include "contexta/topology.hpp"

using namespace contexta;

namespace {

ContextCover star_minus_anchor() {
  auto gens = mermin_star_generators();
  gens.erase(gens.begin() + 4);
  return make_cover(make_config(2, 3), gens);
}

ContextCover square_minus_diagonal() {
  auto gens = mermin_square_generators();
  gens.erase(gens.begin() + 1);
  return make_cover(make_config(2, 2), gens);
}

ContextCover full_cover_of(int p, int n) { return full_cover(make_config(p, n)); }

long long coset_count_of_size(const CosetPoset& poset, std::size_t size) {
  long long c = 0;
  for (const auto& coset : poset.cosets)
    if (coset.size() == size) ++c;
  return c;
}

}  // namespace

TEST_CASE("chain complex cell counts and homology dimensions") {
  SECTION("single qubit, full cover") {
    const ChainComplex cx = build_chain_complex(full_cover_of(2, 1));
    CHECK(cx.c1.size() == 3);
    CHECK(cx.c2.size() == 3);  // only the diagonal pairs (v, v)
    CHECK(cx.c3.size() == 3);
    const HomologyDims h = homology_dims(cx);
    CHECK(h.h1 == 3);  // both boundaries vanish: v + v = 0
    CHECK(h.h2_cochain == 3);
  }
  SECTION("single qutrit, full cover") {
    const ChainComplex cx = build_chain_complex(full_cover_of(3, 1));
    CHECK(cx.c1.size() == 8);
    CHECK(cx.c2.size() == 16);  // 4 ordered pairs per line
    CHECK(cx.c3.size() == 32);
    const HomologyDims h = homology_dims(cx);
    CHECK(h.h1 == 4);
    CHECK(h.h2_cochain == 4);
  }
  SECTION("two qubits, full cover") {
    const ChainComplex cx = build_chain_complex(full_cover_of(2, 2));
    CHECK(cx.c1.size() == 15);
    CHECK(cx.c2.size() == 105);
    CHECK(homology_dims(cx).h1 == 5);
  }
  SECTION("square cover") {
    const ChainComplex cx = build_chain_complex(mermin_square_cover());
    CHECK(cx.c1.size() == 9);
    CHECK(cx.c2.size() == 45);
    CHECK(cx.c3.size() == 153);
    CHECK(homology_dims(cx).h1 == 4);
  }
}

TEST_CASE("composite boundary vanishes") {
  for (const ContextCover& cover :
       {mermin_square_cover(), full_cover_of(3, 1), full_cover_of(2, 2)}) {
    const ChainComplex cx = build_chain_complex(cover);
    const int p = cx.cfg.p;
    // d2 . d3 = 0: push each 3-cell through both boundaries
    for (const auto& cell : cx.c3) {
      const Vec d3 = detail::boundary3_row(cx, cell);
      Vec acc(cx.c1.size(), 0);
      for (std::size_t j = 0; j < cx.c2.size(); ++j) {
        if (d3[j] == 0) continue;
        const Vec d2 = detail::boundary2_row(cx, cx.c2[j]);
        for (std::size_t k = 0; k < acc.size(); ++k)
          acc[k] = mod_p(acc[k] + d3[j] * d2[k], p);
      }
      REQUIRE(is_zero(acc));
    }
  }
}

TEST_CASE("cocycle closedness holds on every cover we build") {
  // build_chain_complex re-checks d(beta) = 0 on all 3-cells
  CHECK_NOTHROW(build_chain_complex(mermin_square_cover()));
  CHECK_NOTHROW(build_chain_complex(mermin_star_cover()));
  CHECK_NOTHROW(build_chain_complex(full_cover_of(2, 2)));
  CHECK_NOTHROW(build_chain_complex(full_cover_of(3, 1)));
  CHECK_NOTHROW(build_chain_complex(star_minus_anchor()));
}

TEST_CASE("cocycle is a coboundary exactly when global sections exist") {
  const std::vector<std::pair<ContextCover, bool>> cases = {
      {full_cover_of(2, 1), true},     {full_cover_of(3, 1), true},
      {full_cover_of(2, 2), false},    {mermin_square_cover(), false},
      {mermin_star_cover(), false},    {star_minus_anchor(), true},
      {square_minus_diagonal(), true},
  };
  for (const auto& [cover, expected] : cases) {
    const ChainComplex cx = build_chain_complex(cover);
    CHECK(beta_is_coboundary(cx) == expected);
    const bool has_sections = global_sections(cover).count(cover.cfg.p) != 0;
    CHECK(has_sections == expected);
  }
}

TEST_CASE("abelian coset poset of the square cover") {
  const CosetPoset poset = coset_poset_abelian(mermin_square_cover());
  CHECK(poset.group_order == 16);
  CHECK(poset.cosets.size() == 112);
  CHECK(coset_count_of_size(poset, 1) == 16);
  CHECK(coset_count_of_size(poset, 2) == 72);  // 9 lines, 8 cosets each
  CHECK(coset_count_of_size(poset, 4) == 24);  // 6 planes, 4 cosets each
  CHECK(poset.max_chain == 2);
  CHECK(euler_characteristic(poset) == 16);
  CHECK(sphere_count(poset, 2) == 15);
}

TEST_CASE("abelian coset poset of the star cover") {
  const CosetPoset poset = coset_poset_abelian(mermin_star_cover());
  CHECK(poset.group_order == 64);
  CHECK(poset.cosets.size() == 424);
  CHECK(coset_count_of_size(poset, 1) == 64);
  CHECK(coset_count_of_size(poset, 2) == 320);
  CHECK(coset_count_of_size(poset, 8) == 40);
  CHECK(poset.max_chain == 2);
  CHECK(euler_characteristic(poset) == 104);
  CHECK(sphere_count(poset, 2) == 103);
}

TEST_CASE("extension coset posets over full covers") {
  SECTION("one qubit") {
    const CosetPoset poset = coset_poset_extension(full_cover_of(2, 1));
    CHECK(poset.group_order == 8);
    CHECK(poset.cosets.size() == 20);  // 8 singletons + 3 lifts * 4 cosets
    CHECK(poset.max_chain == 1);
    CHECK(euler_characteristic(poset) == -4);
    CHECK(sphere_count(poset, 1) == 5);
  }
  SECTION("one qutrit") {
    const CosetPoset poset = coset_poset_extension(full_cover_of(3, 1));
    CHECK(poset.group_order == 27);
    CHECK(poset.cosets.size() == 63);
    CHECK(poset.max_chain == 1);
    CHECK(euler_characteristic(poset) == -45);
    CHECK(sphere_count(poset, 1) == 46);
  }
  SECTION("two qubits") {
    const CosetPoset poset = coset_poset_extension(full_cover_of(2, 2));
    CHECK(poset.group_order == 32);
    CHECK(poset.cosets.size() == 392);
    CHECK(coset_count_of_size(poset, 1) == 32);
    CHECK(coset_count_of_size(poset, 2) == 240);
    CHECK(coset_count_of_size(poset, 4) == 120);
    CHECK(poset.max_chain == 2);
    CHECK(euler_characteristic(poset) == 152);
    CHECK(sphere_count(poset, 2) == 151);
  }
  SECTION("two qutrits") {
    const CosetPoset poset = coset_poset_extension(full_cover_of(3, 2));
    CHECK(poset.group_order == 243);
    CHECK(poset.cosets.size() == 4563);
    CHECK(coset_count_of_size(poset, 1) == 243);
    CHECK(coset_count_of_size(poset, 3) == 3240);
    CHECK(coset_count_of_size(poset, 9) == 1080);
    CHECK(poset.max_chain == 2);
    CHECK(euler_characteristic(poset) == 11043);
    CHECK(sphere_count(poset, 2) == 11042);
  }
}

TEST_CASE("sphere count validates the chain length") {
  const CosetPoset square = coset_poset_abelian(mermin_square_cover());
  CHECK_THROWS_MATCHES(sphere_count(square, 1), input_error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("chain-length mismatch")));
  const CosetPoset qubit = coset_poset_extension(full_cover_of(2, 1));
  CHECK_THROWS_AS(sphere_count(qubit, 2), input_error);
}

TEST_CASE("wedge-size formula") {
  CHECK(d_formula(2, 1) == 5);
  CHECK(d_formula(3, 1) == 46);
  CHECK(d_formula(2, 2) == 151);
  CHECK(d_formula(3, 2) == 11042);
  CHECK(d_formula(5, 1) == 476);
  CHECK(d_formula(7, 1) == 2010);

  SECTION("agrees with the extension coset posets") {
    for (const auto& [p, n] : std::vector<std::pair<int, int>>{
             {2, 1}, {3, 1}, {2, 2}, {3, 2}, {5, 1}, {7, 1}}) {
      const CosetPoset poset = coset_poset_extension(full_cover_of(p, n));
      CHECK(BigInt(sphere_count(poset, n)) == d_formula(p, n));
    }
  }
  SECTION("always positive in range") {
    for (int p : {2, 3, 5, 7})
      for (int r = 1; r <= 3; ++r) CHECK(d_formula(p, r) > 0);
  }
  SECTION("input validation") {
    CHECK_THROWS_AS(d_formula(4, 1), input_error);
    CHECK_THROWS_AS(d_formula(2, 0), input_error);
  }
}

TEST_CASE("chain complex capacity guard") {
  CHECK_THROWS_AS(build_chain_complex(full_cover_of(3, 2)), capacity_error);
}
