#include "alexq/cli.hpp"

int main(int argc, char** argv) { return alexq::cli::run(argc, argv); }
