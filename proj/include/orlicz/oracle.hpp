/// @file oracle.hpp
/// Slow, transparent reference computations used to validate the fast paths.
///
/// These deliberately share no code with the envelope/norm modules: the
/// Caratheodory enumeration evaluates the convex minorant straight from its
/// definition (best convex combination of at most m+1 support points), and
/// the dense scans replace bisection with exhaustive sweeps.  Hard caps keep
/// the combinatorics honest; exceeding them is a configuration error.
#pragma once

#include "orlicz/errors.hpp"
#include "orlicz/ext_real.hpp"
#include "orlicz/phi_function.hpp"
#include "orlicz/spatial.hpp"
#include "orlicz/field.hpp"

namespace orlicz {

struct CaratheodoryResult {
  ExtReal value;             // inf over admissible combinations
  bool outside_hull = false; // no combination represents xi
  std::vector<int> support_ids;  // points of the best combination
  std::vector<double> coeffs;
};

/// Greatest convex minorant at xi from first principles: minimize the convex
/// combination of values over all subsets of at most m+1 support points whose
/// hull contains xi.  Support caps: 400 points for m == 2, 120 for m == 3.
/// Points with infinite value are skipped.  Linear solves treat pivots below
/// 1e-12 (after coordinate normalization) as singular.
CaratheodoryResult caratheodory_envelope(const std::vector<Vec>& support,
                                         const std::vector<ExtReal>& values, const Vec& xi,
                                         double tol = 1e-9);

/// Same minimization but over subsets of exactly m+2 points, walking the
/// one-parameter family of representations to its endpoints.  Exists to
/// confirm numerically that allowing one extra point never improves the
/// minimum.  Tight caps (60 points, m <= 2).
CaratheodoryResult caratheodory_envelope_ext(const std::vector<Vec>& support,
                                             const std::vector<ExtReal>& values, const Vec& xi,
                                             double tol = 1e-9);

struct BruteWitness {
  Vec xi, xi2;
  double alpha = 0;
  double lhs = 0, rhs = 0;
  double violation = 0;  // (lhs - rhs) / (1 + rhs)
};

struct BruteResult {
  bool pass = true;
  BruteWitness worst;  // meaningful when !pass
};

/// Exhaustive almost-convexity scan: phi(beta (a x + a' y)) <= a phi(x) +
/// a' phi(y) + tol over all point pairs and mixing weights.
BruteResult almost_convex_bruteforce(const PhiFunction& phi, const std::vector<Vec>& points,
                                     const std::vector<double>& alphas, double beta, double tol);

struct ScanResult {
  bool found = false;    // some lambda in the list had modular <= 1
  double lambda = 0;     // smallest such lambda
  double modular_at = 0; // modular there
};

/// Dense sweep for the Luxemburg norm: smallest lambda in the given list with
/// rho(v / lambda) <= 1.
ScanResult norm_dense_scan(const SpatialPhiFunction& phi, const VectorField& v,
                           const std::vector<double>& lambdas);

}  // namespace orlicz
