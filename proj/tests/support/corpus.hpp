// Shared test fixtures: seeded random toy programs, random formulas, and a
// randomized scenario corpus exercising both generator kinds across several
// checker worlds.

#pragma once

#include <random>

#include "specworld/scenario.hpp"
#include "specworld/translation.hpp"

namespace specworld::testsupport {

/// Random grammar-shaped program source (parses unless mutated).
Str random_program(std::mt19937& rng, int max_stmts = 3);

/// Random formula text over the given labels; always parses.
Str random_formula_text(std::mt19937& rng, const std::vector<toylang::Label>& labels,
                        int depth = 2);

/// Deterministic scenario for the given seed: 3..6 pool programs, at most 8
/// universe hypotheses, 2..3 checker worlds (one of which demands exactly
/// properties of a designated solution program), an enum-and-test generator
/// and a belief-revision generator.
ScenarioDoc random_scenario_doc(std::uint32_t seed);

/// Compiled corpus, seeds 1..count.
std::vector<Scenario> corpus(std::size_t count);

/// All contexts of one generator over every world and step in [0, steps).
std::vector<Context> all_contexts(const Scenario& scenario,
                                  const std::string& generator_id,
                                  std::size_t steps);

/// Enumerates every LTS with at most `max_states` states and at most
/// `max_transitions` transitions over the given labels.
std::vector<toylang::Lts> small_lts_family(std::size_t max_states,
                                           std::size_t max_transitions,
                                           const std::vector<toylang::Label>& labels);

}  // namespace specworld::testsupport
