#include "heis/cli.hpp"

int main(int argc, char** argv) { return heis::run_main(argc, argv); }
