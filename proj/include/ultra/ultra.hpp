#pragma once

// Finite ultrametric space analysis: representing trees, ball graphs,
// isometry groups and maximal rigidity, with exhaustive oracles.

#include "balls.hpp"             // IWYU pragma: export
#include "characterizations.hpp" // IWYU pragma: export
#include "errors.hpp"            // IWYU pragma: export
#include "generate.hpp"          // IWYU pragma: export
#include "io.hpp"                // IWYU pragma: export
#include "oracle.hpp"            // IWYU pragma: export
#include "rational.hpp"          // IWYU pragma: export
#include "repr_tree.hpp"         // IWYU pragma: export
#include "rigidity.hpp"          // IWYU pragma: export
#include "space.hpp"             // IWYU pragma: export
#include "weak_similarity.hpp"   // IWYU pragma: export
