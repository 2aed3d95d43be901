#include "plattice/config.hpp"

#include <cctype>
#include <fstream>
#include <istream>

namespace plattice {

namespace {

std::string trim(const std::string &s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return s.substr(b, e - b);
}

} // namespace

KeyValues parse_key_values(std::istream &in) {
  KeyValues out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw ConfigError("line " + std::to_string(number) + ": empty key");
    if (out.count(key))
      throw ConfigError("line " + std::to_string(number) + ": duplicate key \"" + key + "\"");
    out[std::move(key)] = trim(line.substr(eq + 1));
  }
  return out;
}

KeyValues load_key_values(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file " + path);
  return parse_key_values(in);
}

} // namespace plattice
