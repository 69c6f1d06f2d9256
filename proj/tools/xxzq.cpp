#include "cli/commands.hpp"

int main(int argc, char** argv) { return xxzq::cli::run(argc, argv); }
