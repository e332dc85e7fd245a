#include "elpbank/cli.hpp"

int main(int argc, char** argv) { return elpbank::cli::run(argc, argv); }
