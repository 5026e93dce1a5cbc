#include "krho/cli.hpp"

int main(int argc, char** argv) { return krho::cli::run(argc, argv); }
