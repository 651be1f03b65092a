#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "fibrcheck/analyze.hpp"

int main(int argc, char** argv) {
  fibrcheck::configure_logging();
  return doctest::Context(argc, argv).run();
}
