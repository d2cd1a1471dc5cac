#include "corofin/cli.hpp"

int main(int argc, char** argv) { return corofin::cli::run(argc, argv); }
