#include "mcv/mcverify.hpp"

int main(int argc, char** argv) { return mcv::cli_dispatch(argc, argv); }
