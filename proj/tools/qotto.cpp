#include <iostream>
#include <span>

#include "qotto/cli.hpp"

int main(int argc, char** argv) {
  return qotto::cli::main(std::span<char* const>(argv, static_cast<std::size_t>(argc)),
                          std::cout, std::cerr);
}
