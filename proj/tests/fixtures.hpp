#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "stackup/instance.hpp"

inline std::string data_path(const std::string& name) { return std::string(STACKUP_TEST_DATA) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline stackup::Instance example1() { return stackup::parse_instance(read_data("example1.txt")); }
inline stackup::Instance example6() { return stackup::parse_instance(read_data("example6.txt")); }
