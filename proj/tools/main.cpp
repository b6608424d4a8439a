#include "cli.hpp"

int main(int argc, char** argv) { return randnet::cli_main(argc, argv); }
