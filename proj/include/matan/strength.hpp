#pragma once

#include <variant>
#include <vector>

#include "matan/matroid.hpp"
#include "matan/rational.hpp"
#include "matan/sfm.hpp"
#include "matan/subset.hpp"

namespace matan {

// Strictly positive weights, one per ground-set element.
using WeightVector = std::vector<Rat>;

WeightVector unit_weights(int n);
void check_weights(const Matroid& m, const WeightVector& w);
Rat weight_sum(const WeightVector& w, const Subset& x);

// D_sigma(M) = max sigma(X)/r(X) together with its unique maximal optimal set
// (the core). Parametric search: Dinkelbach iteration on
// min_X (lambda r(X) - sigma(X)) over exact rationals.
std::pair<Rat, Subset> fractional_arboricity(const Matroid& m, const WeightVector& sigma,
                                             const sfm::Options& opts = {});

// S_sigma(M) = min sigma(X)/(r(E)-r(E-X)) together with its unique maximal
// optimal set, computed on the complement with the mirrored parametric SFM.
std::pair<Rat, Subset> strength(const Matroid& m, const WeightVector& sigma,
                                const sfm::Options& opts = {});

struct DensityReport {
  Rat strength;
  Subset strength_set;  // unique maximal optimal set for S_sigma
  Rat arboricity;
  Subset core;  // unique maximal optimal set for D_sigma
  long long tau;           // floor(strength)
  long long cover_number;  // ceil(arboricity)
};

DensityReport density_report(const Matroid& m, const WeightVector& sigma,
                             const sfm::Options& opts = {});

// k pairwise-disjoint bases when tau(M) >= k; otherwise a deficiency witness
// X with |E - X| < k (r(E) - r(X)).
struct PackingResult {
  bool ok;
  std::vector<Subset> bases;
  Subset witness;
};
PackingResult base_packing(const Matroid& m, int k);

// k bases covering E when a(M) <= k; otherwise X with |X| > k r(X).
struct CoveringResult {
  bool ok;
  std::vector<Subset> bases;
  Subset witness;
};
CoveringResult base_covering(const Matroid& m, int k);

// Partitions a maximum-size subset of E into k independent sets (matroid
// union via augmenting paths in the exchange digraph).
std::vector<Subset> matroid_union_partition(const Matroid& m, int k);

}  // namespace matan
