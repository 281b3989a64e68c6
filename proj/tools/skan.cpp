#include "skan/cli.hpp"

int main(int argc, char** argv) { return skan::cli::main(argc, argv); }
