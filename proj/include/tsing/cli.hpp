#pragma once

namespace tsing {

// Entry point of the command-line tool.  Returns the process exit status:
// 0 on success, 1 when a verification subcommand finds a violation, 2 on
// malformed input (bad flags, unparsable chains or fractions, inconsistent
// scenario bookkeeping).
int run(int argc, char** argv);

} // namespace tsing
