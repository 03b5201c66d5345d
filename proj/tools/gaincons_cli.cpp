#include "gaincons/cli.hpp"

int main(int argc, char** argv) { return gaincons::cli::run(argc, argv); }
