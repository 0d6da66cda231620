#pragma once

#include <string>

#include "brauerlift/groups.hpp"

inline std::string fixture_path(const std::string& name) {
  return std::string(BRAUERLIFT_FIXTURE_DIR) + "/" + name;
}

inline brauerlift::PermGroup fixture_group(const std::string& name) {
  return brauerlift::read_group_file(fixture_path(name + ".grp"));
}
