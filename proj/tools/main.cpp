#include "bicross/cli.hpp"

int main(int argc, char** argv) { return bicross::cli::run(argc, argv); }
