#include "divfan/cli.hpp"

int main(int argc, char** argv) { return divfan::cli::main(argc, argv); }
