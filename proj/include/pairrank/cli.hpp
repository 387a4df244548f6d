#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pairrank {

// Runs one command line (program name excluded) of the `pairrank` tool:
//
//   fit    MATCHES [--ties-file F]   fit and rank
//   synth                            write a synthetic tournament
//   scc    MATCHES [--restrict]      strongly connected components
//   bench  [MATCHES]                 iterations-to-convergence benchmark
//   trace  [MATCHES]                 per-sweep objective and RMS p1 table
//
// Returns 0 on success, 1 on a data or model error, 2 on a usage error.
// Output files are written only once the whole command has succeeded.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pairrank
