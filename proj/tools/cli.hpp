#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blurfisher::cli {

/// Exit codes: 0 success, 1 domain or numeric error, 2 I/O or usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blurfisher::cli
