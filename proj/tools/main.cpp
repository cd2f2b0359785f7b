#include "commands.hpp"

int main(int argc, char** argv) { return epf::cli::run(argc, argv); }
