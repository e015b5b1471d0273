#pragma once

#include <ostream>

namespace guamp {

// Subcommands: run, oracle-check, reduce-check, export-fixture.
// Exit status: 0 success, 1 failed check or I/O error, 2 usage or config error.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace guamp
