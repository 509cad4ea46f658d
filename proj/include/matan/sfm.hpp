#pragma once

#include <functional>
#include <optional>

#include "matan/rational.hpp"
#include "matan/subset.hpp"

namespace matan::sfm {

// Oracle for an integer-valued submodular function on subsets of [0, n).
using IntFn = std::function<long long(const Subset&)>;
// Oracle for a rational-valued submodular function.
using RatFn = std::function<Rat(const Subset&)>;

struct Options {
  // Largest number of free elements handled by exhaustive enumeration.
  int exhaustive_max = 22;
  // Iteration cap for one min-norm-point solve.
  int mnp_max_iter = 200000;
};

struct Result {
  Rat value;                 // global minimum of f
  Subset minimizer;          // == minimal_minimizer
  Subset minimal_minimizer;  // intersection of all minimizers
  Subset maximal_minimizer;  // union of all minimizers
};

// Minimizes an integer-valued submodular f over {X : forced_in <= X <= E -
// forced_out}. Results are exact: the exhaustive strategy sweeps all subsets,
// and the min-norm-point strategy certifies its answers with exact rational
// lower bounds before returning. The minimal/maximal minimizers are the
// lattice extremes of the constrained minimizer family.
Result minimize_int(int n, const IntFn& f, const Subset& forced_in, const Subset& forced_out,
                    const Options& opts = {});

Result minimize_int(int n, const IntFn& f, const Options& opts = {});

// General entry point. `value_scale` must make value_scale * f(X) an integer
// for every X; it is required by the min-norm-point strategy, so when it is
// absent and the ground set exceeds opts.exhaustive_max a CapacityError is
// thrown ("ground set too large for the configured strategy").
Result minimize(int n, const RatFn& f, const Subset& forced_in, const Subset& forced_out,
                std::optional<long long> value_scale = std::nullopt, const Options& opts = {});

Result minimize(int n, const RatFn& f, std::optional<long long> value_scale = std::nullopt,
                const Options& opts = {});

}  // namespace matan::sfm
