#include "voronoi3/cli.hpp"

int main(int argc, char** argv) { return voronoi3::cli_main(argc, argv); }
