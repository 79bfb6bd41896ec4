#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "statecmp/ensemble.hpp"

// JSON ensemble files:
//   {
//     "dim": 2,
//     "priors": [0.5, 0.5],
//     "pure": true,                      // optional, default false
//     "states": [ [[1,0],[0,0]], ... ]   // entries as [re, im] pairs
//   }
// Pure states are flat lists of dim pairs; density matrices are flat
// row-major lists of dim^2 pairs.
namespace statecmp {

using LoadedEnsemble = std::variant<PureEnsemble, MixedEnsemble>;

LoadedEnsemble parse_ensemble(const std::string& text);
LoadedEnsemble load_ensemble(const std::string& path);

MixedEnsemble as_mixed(const LoadedEnsemble& loaded);

} // namespace statecmp
