// Regenerates the bundled synthetic fixture:
//   dynanet_make_fixture <out-dir>
#include <cstdio>
#include <exception>
#include <filesystem>

#include "dynanet/fixture.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <out-dir>\n", argv[0]);
    return 1;
  }
  try {
    const std::filesystem::path dir(argv[1]);
    const auto data = dynanet::make_fixture();
    dynanet::write_fixture(data, dir);
    dynanet::write_validation_fixture(dynanet::make_validation_fixture(data), dir);
    const auto tmp = dir / ".shuffled";
    dynanet::write_fixture(dynanet::shuffle_fixture(data, 7), tmp);
    std::filesystem::rename(tmp / "expression.tsv", dir / "expression_shuffled.tsv");
    std::filesystem::remove_all(tmp);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
