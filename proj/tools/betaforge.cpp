#include <iostream>
#include <string>
#include <vector>

#include <betaforge/cli.hpp>

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return betaforge::cli::run(args, std::cout, std::cerr);
    } catch (const std::exception &e) {
        std::cerr << "betaforge: " << e.what() << '\n';
        return betaforge::cli::kUsage;
    }
}
