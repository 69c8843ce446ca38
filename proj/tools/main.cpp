#include "fqre/cli.hpp"

int main(int argc, char** argv) { return fqre::run_cli(argc, argv); }
