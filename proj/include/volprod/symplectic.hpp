#pragma once

#include "volprod/body.hpp"

#include <string>
#include <vector>

namespace volprod {

/// Capacity data of the Lagrangian product K x T in R^{2n}.
struct CapacityReport {
  int n = 0;
  double inradius = 0.0;  // inrad_{T°}(K)
  double c_hz = 0.0;      // 4 inradius
  double k_volume = 0.0;
  double t_volume = 0.0;
  double volume = 0.0;  // |K| |T|
  double viterbo_lhs = 0.0;  // c_hz^n
  double viterbo_rhs = 0.0;  // n! |K| |T|
  bool pass = false;
  double tolerance = 0.0;
};

/// sup{r : r T° in K}. Exact for two polytopes; with a star body the minimum
/// of rho_K(u) h_T(u) (or b_F rho_T(a_F) for polytope K) is used.
double inradius(const Body& k, const Body& t);

/// c_HZ(K x T) = 4 inrad_{T°}(K); NotCentrallySymmetric unless K = -K and T = -T.
CapacityReport chz_lagrangian(const Body& k, const Body& t);
/// Adds (4 inrad)^n <= n! |K||T|.
CapacityReport viterbo_check(const Body& k, const Body& t);

struct ChainLink {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // signed so that slack >= 0 means the link holds
  bool pass = false;
};

struct ViterboChain {
  std::string mahler_class;
  std::vector<ChainLink> links;
  CapacityReport capacity;
  double polar_volume = 0.0;  // |K°|
  bool pass = false;
};

/// Classes of K for which the symmetric Mahler bound is available:
/// n <= 3, 1-unconditional, O(◊ⁿ)-invariant, or SO(◊ⁿ)-invariant with n even.
/// Returns an empty string otherwise.
std::string mahler_class(const Body& k);

/// Links: inrad^{-n}|T| >= |K°|; 4^n/n! <= |K||K°|; (4 inrad)^n <= n!|K||T|.
/// HypothesisNotCovered when mahler_class(K) is empty.
ViterboChain mahler_implies_viterbo_chain(const Body& k, const Body& t);

}  // namespace volprod
