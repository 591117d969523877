#include "dlcycles/cli.hpp"

int main(int argc, char** argv) { return dlc::cli::run(argc, argv); }
