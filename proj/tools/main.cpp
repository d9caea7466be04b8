#include "tswarp/cli.hpp"

int main(int argc, char** argv) { return tswarp::cli_dispatch(argc, argv); }
