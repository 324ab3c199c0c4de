#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace infloop::cli {

struct CommandInfo {
    std::string name;
    std::string summary;
    std::vector<std::string> operations;  // library operations the command calls
};

const std::vector<CommandInfo>& command_table();

// Public library operations; every one must appear in some command's list.
const std::vector<std::string>& library_operations();

// Runs one invocation (arguments without the program name). Returns the
// process exit status: 0 on success, 1 when a verification fails, 2 on
// usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infloop::cli
