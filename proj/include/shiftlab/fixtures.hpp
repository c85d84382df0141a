#pragma once

#include "shiftlab/tree.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace shiftlab {

struct Fixture {
  std::string name;
  std::string description;
  TreeSpec spec;
};

class UnknownFixture : public std::runtime_error {
 public:
  explicit UnknownFixture(const std::string& name) : std::runtime_error("unknown fixture '" + name + "'") {}
};

/// The built-in corpus A..E in name order.
const std::vector<Fixture>& list_fixtures();
const Fixture& fixture(const std::string& name);

}  // namespace shiftlab
