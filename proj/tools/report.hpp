#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mimostab/nyquist.hpp"
#include "mimostab/system_io.hpp"
#include "mimostab/tolerances.hpp"

namespace mimostab::cli {

/// Options shared by every command: tolerance/grid overrides and output sinks.
struct RunOptions {
    Tolerances tol = Tolerances::standard();
    GridOptions grid;
    std::optional<std::string> json_path;   ///< machine-readable report sink
    std::optional<std::string> curves_dir;  ///< CSV curve sink
    std::optional<std::string> corpus_dir;  ///< corpus override for paper-suite
};

/// Exit codes of the command runners.
enum ExitCode : int {
    kOk = 0,
    kAnalysisError = 1,
    kParseError = 2,
    kCorpusMismatch = 3,
};

/// Run one analysis command over the given systems (two for smallgain and
/// mixed). Writes the human-readable report to `out`; the JSON report and
/// curve CSVs go to the sinks named in `opt`. Returns an ExitCode.
int run_command(const std::string& command, const std::vector<SystemDescription>& systems,
                const RunOptions& opt, std::ostream& out);

/// Run the built-in corpus (or the one in opt.corpus_dir), diff every
/// analysis against its recorded expectation, and report. Returns kOk or
/// kCorpusMismatch.
int run_paper_suite(const RunOptions& opt, std::ostream& out);

} // namespace mimostab::cli
