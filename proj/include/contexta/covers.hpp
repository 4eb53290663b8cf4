#pragma once

// Named context covers.  Coordinates are (z|x): a length-2n vector holds
// the Z part in its first n entries and the X part in the last n.

#include "contexta/presheaf.hpp"

namespace contexta {

inline Vec xgen(const PrimeConfig& cfg, int i) {  // X on factor i (1-based)
  Vec v = vec_zero(cfg.dim());
  v[std::size_t(cfg.n + i - 1)] = 1;
  return v;
}

inline Vec zgen(const PrimeConfig& cfg, int i) {
  Vec v = vec_zero(cfg.dim());
  v[std::size_t(i - 1)] = 1;
  return v;
}

inline Vec ygen(const PrimeConfig& cfg, int i) { return vec_add(cfg.p, xgen(cfg, i), zgen(cfg, i)); }

// Six two-qubit contexts arranged as the rows and columns of the magic
// square; row/column order: XX-row, diagonal row, ZZ-row, then columns.
inline std::vector<std::vector<Vec>> mermin_square_generators() {
  const PrimeConfig cfg = make_config(2, 2);
  const Vec x1 = xgen(cfg, 1), x2 = xgen(cfg, 2), z1 = zgen(cfg, 1), z2 = zgen(cfg, 2);
  return {
      {x1, x2},
      {vec_add(2, x1, x2), vec_add(2, z1, z2)},
      {z1, z2},
      {x1, z2},
      {vec_add(2, x1, z2), vec_add(2, z1, x2)},
      {z1, x2},
  };
}

// Five three-qubit contexts of the magic star: four XYY-type lines and the
// anchor context spanned by the three composite observables.
inline std::vector<std::vector<Vec>> mermin_star_generators() {
  const PrimeConfig cfg = make_config(2, 3);
  const Vec x1 = xgen(cfg, 1), x2 = xgen(cfg, 2), x3 = xgen(cfg, 3);
  const Vec y1 = ygen(cfg, 1), y2 = ygen(cfg, 2), y3 = ygen(cfg, 3);
  const Vec a = vec_add(2, vec_add(2, x1, x2), x3);
  const Vec b = vec_add(2, vec_add(2, y1, y2), x3);
  const Vec c = vec_add(2, vec_add(2, x1, y2), y3);
  return {
      {x1, x2, x3},
      {x1, y2, y3},
      {y1, x2, y3},
      {y1, y2, x3},
      {a, b, c},
  };
}

inline ContextCover mermin_square_cover() {
  return make_cover(make_config(2, 2), mermin_square_generators());
}

inline ContextCover mermin_star_cover() {
  return make_cover(make_config(2, 3), mermin_star_generators());
}

// "mermin-square", "mermin-star", or "full:p,n".
inline ContextCover named_cover(const std::string& name) {
  if (name == "mermin-square") return mermin_square_cover();
  if (name == "mermin-star") return mermin_star_cover();
  if (name.rfind("full:", 0) == 0) {
    const std::string body = name.substr(5);
    const std::size_t comma = body.find(',');
    if (comma == std::string::npos)
      throw input_error("full cover spec must look like full:p,n");
    const long long p = detail::parse_int_arg(body.substr(0, comma), "prime p");
    const long long n = detail::parse_int_arg(body.substr(comma + 1), "system count n");
    const PrimeConfig cfg = make_config(int(p), int(n));
    if (cfg.vspace_size() > 4096)
      throw capacity_error("full cover enumeration is limited to p^{2n} <= 4096");
    return full_cover(cfg);
  }
  throw input_error("unknown cover name: " + name +
                    " (expected mermin-square, mermin-star, or full:p,n)");
}

}  // namespace contexta
