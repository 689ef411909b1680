#include "mezzo/cli.hpp"

int main(int argc, char** argv) { return mezzo::cli::run(argc, argv); }
