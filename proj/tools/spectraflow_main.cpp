#include "spectraflow/commands.hpp"

int main(int argc, char** argv) { return spectraflow::cli_main(argc, argv); }
