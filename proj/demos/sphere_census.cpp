// The topological census: coset posets, Euler characteristics, and wedge
// sizes, first for the two classic covers, then for full covers where the
// closed-form count is cross-checked against the poset.

#include <cstdio>
#include <iostream>

#include "contexta/contexta.hpp"

using namespace contexta;

int main() {
  std::cout << "classic covers (translation-group cosets):\n"
            << "  cover           poset  chi   spheres(S^2)\n";
  for (const auto& [name, cover] : {std::pair<std::string, ContextCover>
           {"mermin-square", mermin_square_cover()},
           {"mermin-star  ", mermin_star_cover()}}) {
    const CosetPoset poset = coset_poset_abelian(cover);
    const long long chi = euler_characteristic(poset);
    std::printf("  %s   %5zu  %4lld  %lld\n", name.c_str(), poset.cosets.size(), chi,
                sphere_count(poset, poset.max_chain));
  }

  std::cout << "\nfull covers (extension-group cosets) vs the closed form:\n"
            << "  p  n  poset   chi     spheres(S^n)  formula  agree\n";
  for (const auto& [p, n] : std::vector<std::pair<int, int>>{
           {2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}}) {
    const CosetPoset poset = coset_poset_extension(full_cover(make_config(p, n)));
    const long long chi = euler_characteristic(poset);
    const long long spheres = sphere_count(poset, n);
    const BigInt formula = d_formula(p, n);
    std::printf("  %d  %d  %5zu  %6lld  %12lld  %7s  %s\n", p, n, poset.cosets.size(),
                chi, spheres, bigint_str(formula).c_str(),
                BigInt(spheres) == formula ? "yes" : "NO");
  }

  std::cout << "\nclosed-form growth, r = n:\n  r\\p";
  for (int p : {2, 3, 5, 7}) std::printf("  %12d", p);
  std::printf("\n");
  for (int r = 1; r <= 3; ++r) {
    std::printf("  %d  ", r);
    for (int p : {2, 3, 5, 7})
      std::printf("  %12s", bigint_str(d_formula(p, r)).c_str());
    std::printf("\n");
  }
  return 0;
}
