#pragma once

// Entry point of the command-line driver, kept in the library so tests can
// call it in-process. Returns the process exit code: 0 on success, 1 on a
// simulation or configuration failure, 2 on command-line misuse, 3 when the
// motion diverged or the feedback loop lost the oscillation.

namespace mirrorsim {

int cli_main(int argc, const char* const* argv);

}  // namespace mirrorsim
