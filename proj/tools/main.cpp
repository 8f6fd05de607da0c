#include "bfmn/report.hpp"

int main(int argc, char** argv) { return bfmn::run_cli(argc, argv); }
