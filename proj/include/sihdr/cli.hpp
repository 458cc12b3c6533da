#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sihdr {

enum ExitCode : int {
    kExitSuccess = 0,
    kExitError = 1,
    kExitDeclined = 2,
};

/// Entry point of the `sihdr` tool. `args` excludes the program name.
///
///   sihdr enhance <in> <out> [--lambda --alpha --gamma-r --gamma-t --sigma-s
///                 --levels N --dump-dir D --hdr-out F --weight-inverse MODE
///                 --config FILE --report-json F --dump-level-luminance]
///   sihdr metrics <ref> <test> [--report-json F]
///   sihdr decompose <in> --dump-dir D [--lambda --alpha --config FILE]
///
/// Returns 0 on success, 2 when enhancement was declined by the illumination
/// gate (the input is copied to <out>), 1 on any error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sihdr
