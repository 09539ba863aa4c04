#include "brick/cli.hpp"

int main(int argc, char** argv) { return brick::cli::run(argc, argv); }
