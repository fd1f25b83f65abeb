#include <nicg/cli.hpp>

int main(int argc, char **argv) { return nicg::run_command(argc, argv); }
