#pragma once

// Batch checking of .catt sources and the icatt command line.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "icatt/kernel.hpp"

namespace icatt {

struct CheckOptions {
    bool verbose = false;
    bool keep_going = false;
    std::optional<std::string> dump_nf;
};

struct CheckResult {
    int accepted = 0;
    int rejected = 0;
    std::vector<Error> errors;
};

// Parses, elaborates and kernel-checks the declarations of one source in
// order, extending env. Writes one line per accepted declaration and one
// diagnostic per rejected one to out.
CheckResult check_source(Environment& env, const std::string& text, const std::string& path,
                         const CheckOptions& options, std::ostream& out);

// Diagnostic line for an error, "path:line:col: error[category]: message".
std::string format_error(const std::string& path, const Error& e);

// Returns the process exit code: 0 success, 1 check failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace icatt
