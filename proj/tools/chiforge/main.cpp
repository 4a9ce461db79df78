#include "cli.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char ** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> env_budget;
    if (const char * b = std::getenv("CHIFORGE_BUDGET"))
        env_budget = b;
    auto result = chiforge::cli::run(args, env_budget);
    if (! result.text.empty())
        std::cout << result.text;
    else
        std::cout << chiforge::dump(result.report);
    return result.exit_code();
}
