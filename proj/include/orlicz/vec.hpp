/// @file vec.hpp
/// Small dense vectors for argument space (dimension m <= 4 in practice) and
/// spatial points.  Plain std::vector<double> keeps interop with the python
/// layer and the table formats trivial; the helpers below cover the handful of
/// linear-algebra operations the library needs.
#pragma once

#include <string>
#include <vector>

namespace orlicz {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);            // euclidean
double norm_p(const Vec& a, double p); // (sum |a_i|^p)^(1/p), p > 0 (quasinorm for p < 1)
double norm_inf(const Vec& a);

Vec zero_vec(int m);
Vec basis_vec(int m, int k);
Vec scaled(double c, const Vec& a);
Vec vsum(const Vec& a, const Vec& b);
Vec vdiff(const Vec& a, const Vec& b);
/// a*x + b*y
Vec lin(double a, const Vec& x, double b, const Vec& y);

bool vec_close(const Vec& a, const Vec& b, double tol);

}  // namespace orlicz
