// Writes the canonical fixture states and channels as JSON files.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "cdplab/io.hpp"
#include "cdplab/verify.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <fixture-dir>\n";
    return 2;
  }
  const std::filesystem::path root(argv[1]);
  std::filesystem::create_directories(root / "states");
  std::filesystem::create_directories(root / "channels");
  for (const auto& name : cdplab::fixture_state_names()) {
    std::ofstream(root / "states" / (name + ".json")) << cdplab::state_to_json(cdplab::canonical_fixture_state(name)).dump(2)
                                                      << '\n';
  }
  for (const auto& name : cdplab::fixture_channel_names()) {
    std::ofstream(root / "channels" / (name + ".json"))
        << cdplab::channel_to_json(cdplab::canonical_fixture_channel(name)).dump(2) << '\n';
  }
  return 0;
}
