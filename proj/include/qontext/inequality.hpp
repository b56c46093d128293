#pragma once

// Valuation tables for three dichotomic +/-1 observables measured in the
// pairwise contexts {X,Y}, {X,Z}, {Y,Z}:
//  * the classical table (one value per observable across all contexts) and
//    the bound -1 <= XY+XZ+YZ <= 3 it induces,
//  * the quasi table reached when each context carries its own
//    indistinguishable copy of an observable (built through qset assignment,
//    not hard-coded), whose extra rows break the classical lower bound,
//  * an exact convex-hull membership test for expectation-value behaviors.

#include <array>
#include <utility>
#include <vector>

namespace qontext::inequality {

struct SignTriple {
  int x = 1, y = 1, z = 1;

  friend bool operator==(const SignTriple&, const SignTriple&) = default;
};

enum class Origin { classical, quasi };

struct ProductTriple {
  int xy = 1, xz = 1, yz = 1;
  Origin origin = Origin::classical;

  int sum() const { return xy + xz + yz; }
  int product() const { return xy * xz * yz; }

  friend bool operator==(const ProductTriple&, const ProductTriple&) = default;
};

struct Behavior {
  double exy = 0.0, exz = 0.0, eyz = 0.0;
};

// All 8 sign assignments with their pair products, lexicographic with +1
// before -1. Every row's products multiply to +1 (same value of X enters XY
// and XZ, so signs cancel in the triple product).
std::vector<std::pair<SignTriple, ProductTriple>> classical_table();

// (min, max) of XY+XZ+YZ over the classical table: (-1, 3).
std::pair<int, int> classical_bounds();

// All product triples reachable when the value of X in context {X,Y} and the
// value of X in context {X,Z} come from distinct indistinguishable singletons
// (and likewise for Y, Z): every triple in {-1,+1}^3, enumerated through
// qset extraction/assignment and canonicalized to lexicographic order.
std::vector<ProductTriple> quasi_table();

// The quasi rows with product -1: classically unreachable.
std::vector<ProductTriple> forbidden_rows();

// (min, max) of XY+XZ+YZ over the quasi table: (-3, 3).
std::pair<int, int> quasi_bounds();

// The 4 classical product rows (product +1), the vertices of the behavior
// polytope, lexicographic order.
std::array<ProductTriple, 4> classical_product_vertices();

struct RealizabilityResult {
  bool realizable = false;
  // Barycentric weights on classical_product_vertices(), in order; only
  // meaningful when realizable.
  std::array<double, 4> weights{};
};

// Exact solve of the 4-vertex barycentric system (three expectation
// constraints plus weights summing to 1); realizable iff all weights
// >= -tol.
RealizabilityResult is_classically_realizable(const Behavior& b, double tol);

}  // namespace qontext::inequality
