#include <setdyn/cli.hpp>

int main(int argc, char** argv) { return setdyn::cli::run(argc, argv); }
