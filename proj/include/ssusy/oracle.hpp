#pragma once

// Independent scalar oracle for decoupled components: s psi + c psi' = 0 at
// both ends of [0, l], solved by sign-change bisection on the closed-form
// characteristic function. Used by the tests to cross-check the matrix solver.

#include <cstddef>
#include <vector>

namespace ssusy {

struct RobinEnd {
  double s = 1.0;
  double c = 0.0;

  static RobinEnd dirichlet() { return {1.0, 0.0}; }
  static RobinEnd neumann() { return {0.0, 1.0}; }
  /// psi + L psi' = 0; L = 0 is Dirichlet and an infinite L is Neumann.
  static RobinEnd from_length(double L);
  /// Component condition of a diagonal entry e^{i theta}:
  /// sin(theta/2) psi + L0 cos(theta/2) psi' = 0.
  static RobinEnd from_phase(double theta, double L0);
};

struct OracleRoots {
  std::vector<double> k;      // first n positive roots, ascending
  std::vector<double> kappa;  // negative-energy roots, descending energy order not implied
  bool zero = false;          // E = 0 is an eigenvalue
};

OracleRoots oracle_decoupled_roots(const RobinEnd& left, const RobinEnd& right, double l, std::size_t n);

}  // namespace ssusy
