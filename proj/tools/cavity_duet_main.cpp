#include "cavityduet/cli.hpp"

int main(int argc, char** argv) { return cduet::run_main(argc, argv); }
