#include "cxg/cli.h"

int main(int argc, char **argv) { return cxg::RunCli(argc, argv); }
