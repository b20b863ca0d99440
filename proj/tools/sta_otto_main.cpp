#include "sta_otto/cli.hpp"

int main(int argc, char** argv) { return sta_otto::cli::run(argc, argv); }
