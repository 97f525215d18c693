/*
 * commands.hpp - the batch commands behind the CLI, callable in-process so
 * tests can drive them directly.  Exit codes: 0 success, 1 the checked
 * property does not hold, 2 usage/scenario/I-O errors.
 */

#pragma once

#include "specworld/scenario.hpp"
#include "specworld/translation.hpp"

#include <iosfwd>

namespace specworld::cli {

struct RunOptions {
    std::string generator;
    std::size_t steps = 0;  // 0 is a usage error
    std::optional<std::string> out_dir;
};

/// Runs the interaction for every world, optionally writes per-world trace
/// files (<out>/<world>.trace, one JSON record per line), and prints a
/// per-step summary table.
int cmd_run(const Scenario& scenario, const RunOptions& options,
            std::ostream& out, std::ostream& err);

struct CheckOptions {
    std::string generator;
    std::size_t horizon = 10;
};

/// Reports, per world, the limit verdicts of valid/correct/complete/mature
/// over steps 0..horizon, plus the proposition report at the last mature
/// step.  Exit 0 iff maturity holds in the limit in every world.
int cmd_check(const Scenario& scenario, const CheckOptions& options,
              std::ostream& out, std::ostream& err);

struct TranslateOptions {
    std::string gen1;
    std::string gen2;
    std::optional<std::size_t> m;  // source step; absent: auto-search
    std::optional<std::size_t> n;  // destination step; absent: auto-search
    std::string world1;            // empty: first world
    std::string world2;            // empty: same as world1
    std::size_t horizon = 10;      // search bound when steps are absent
};

/// Synthesizes the trivial translation between (gen1, world1, m) and
/// (gen2, world2, n), prints the direction, mapping, and the eight-condition
/// report.  Exit 0 iff all conditions pass; NotMature reports the failing
/// clause and exits 1.
int cmd_translate(const Scenario& scenario, const TranslateOptions& options,
                  std::ostream& out, std::ostream& err);

/// Framework-law checks over the scenario's program universe.
int cmd_laws(const Scenario& scenario, std::ostream& out, std::ostream& err);

}  // namespace specworld::cli
