#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace distpair {

using Rational = boost::multiprecision::cpp_rational;

// Exact Bernoulli number B_n with the B_1 = -1/2 convention.
// Values are cached process-wide; concurrent callers are safe.
Rational bernoulli_number(int n);

// B_n rounded to the nearest double.
double bernoulli_number_double(int n);

// Bernoulli polynomial B_n(a) = sum_k C(n,k) B_k a^(n-k), evaluated in double.
double bernoulli_polynomial(int n, double a);

}  // namespace distpair
