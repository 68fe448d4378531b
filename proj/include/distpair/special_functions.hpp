#pragma once

#include <cstdint>

namespace distpair {

// Number of retained pair terms k = 1..terms in the partial-fraction sums.
struct SeriesTruncation {
  std::int64_t terms = 1000000;
  bool tail_correction = true;
};

// coth y, accurate for small and large |y|. Throws std::domain_error at y = 0.
double coth_direct(double y);

// 1/sinh^2 y. Throws std::domain_error at y = 0.
double csch2_direct(double y);

// Partial-fraction series 1/y + sum_k 2y/(y^2 + k^2 pi^2); conjugate +-k terms
// are combined so the sum is real. The optional tail adds 2y/(pi^2 K).
double coth_series(double y, const SeriesTruncation& trunc);

// sum_{|k|<=K} 1/(y + i k pi)^2, i.e. 1/y^2 + sum_k 2(y^2 - k^2 pi^2)/(y^2 + k^2 pi^2)^2;
// the optional tail adds -2/(pi^2 K).
double csch2_series(double y, const SeriesTruncation& trunc);

// Langevin function L(y) = coth y - 1/y, total (L(0) = 0).
double langevin(double y);

// csch^2 y - 1/y^2, total (value -1/3 at y = 0). Smooth part of the standard csch^2 distribution.
double csch2_regular_part(double y);

// y coth y, total (value 1 at y = 0).
double y_coth_y(double y);

// Components of coth(y + i eps):
//   Re = sinh 2y / (cosh 2y - cos 2eps),  Im = -sin 2eps / (cosh 2y - cos 2eps),
// with the denominator evaluated as 2(sinh^2 y + sin^2 eps). Throws std::domain_error if eps <= 0.
double coth_eps_real(double y, double eps);
double coth_eps_imag(double y, double eps);

// sign(y) * (1 + 2/(e^{2|y|} - 1)); identical to coth y for y != 0.
double decompose_sign(double y);

}  // namespace distpair
