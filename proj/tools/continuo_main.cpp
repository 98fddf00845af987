#include "continuo/cli.hpp"

int main(int argc, char** argv) { return continuo::run_cli(argc, argv); }
