#include "cli.hpp"

int main(int argc, char** argv) { return pbtlab::cli::run(argc, argv); }
