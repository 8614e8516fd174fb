#include <iostream>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>
#include <string>
#include <vector>

#include "ideaforge/cli.hpp"

int main(int argc, char** argv) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("ideaforge"));
    std::vector<std::string> args(argv + 1, argv + argc);
    return ideaforge::cli::run_main(args, std::cin, std::cout, std::cerr);
}
