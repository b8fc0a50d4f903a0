#include <exception>
#include <iostream>

#include "projlog/cli/commands.hpp"

int main(int argc, char** argv)
{
    using namespace projlog::cli;
    RunConfig config;
    try {
        config = parse_config(argc, argv);
    } catch (const HelpRequested& h) {
        std::cout << h.what();
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "projlog: error: " << e.what() << "\n";
        return 2;
    }
    try {
        return run_command(config, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "projlog: error: " << e.what() << "\n";
        return 2;
    }
}
