#include "ut/cli.hpp"

int main(int argc, char** argv) { return ut::cmd_dispatch(argc, argv); }
