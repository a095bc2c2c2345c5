#pragma once

// Umbrella header: automata with a finitely generated abelian register
// group, exact membership and emptiness decisions, minimal accepting
// paths, pumpable-loop monoids, homomorphism extraction, and coset-cover
// certification.

#include "valence/abelian.hpp"
#include "valence/automaton.hpp"
#include "valence/bigint.hpp"
#include "valence/coset_cover.hpp"
#include "valence/diophantine.hpp"
#include "valence/errors.hpp"
#include "valence/hom_extract.hpp"
#include "valence/json_io.hpp"
#include "valence/lattice.hpp"
#include "valence/path_engine.hpp"
#include "valence/pumpable.hpp"
#include "valence/target_group.hpp"
#include "valence/wqo.hpp"

namespace valence {
inline constexpr const char* kVersion = "0.1.0";
}
