#ifndef ZZ_CLI_HPP
#define ZZ_CLI_HPP

#include <string>
#include <vector>

namespace zz::cli {

enum ExitCode : int
{
    kSuccess = 0,
    kCheckFailed = 1,
    kUsageError = 2,
};

struct CommandResult
{
    int exit_code = kSuccess;
    std::string payload;   // standard output, unless --out was given
    std::string errors;    // standard error
};

/** One row of the built-in standard-object tables. */
struct TableRow
{
    int table = 1;
    std::string object;
    std::string zigzag;
    std::string comment;
    bool verified = false;
    std::string detail;
};

/** Rebuild both tables from the constructors and verify every row. */
std::vector<TableRow> build_tables();

/** `args` excludes the program name. Never throws. */
CommandResult run(const std::vector<std::string>& args);

}   // namespace zz::cli

#endif
