#include "commands.hpp"

int main(int argc, char** argv) { return rinv::cli::run(argc, argv); }
