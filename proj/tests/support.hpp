#pragma once

#include <string>

#include "knightmagic/fixtures.hpp"
#include "knightmagic/tour.hpp"

namespace testing {

inline knightmagic::Fixture fixture(const std::string& id) {
  return knightmagic::load_fixture(std::string(KNIGHTMAGIC_FIXTURES_DIR) + "/" + id + ".tour");
}

inline knightmagic::Tour tour(const std::string& id) { return fixture(id).tour; }

}  // namespace testing
