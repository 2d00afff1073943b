#pragma once

// The alexq command line: subcommands print one JSON document to `out`.
// Exit codes: 0 success, 2 usage or input error, 3 capacity exceeded,
// 1 internal error. Errors are reported as {"error": {...}} on `out`.

#include <iosfwd>
#include <string>
#include <vector>

namespace alexq::cli {

inline constexpr const char* kSchema = "alexq/1";

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace alexq::cli
