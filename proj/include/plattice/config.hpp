#pragma once

// Flat "key = value" configuration files. '#' starts a comment; blank lines
// are ignored; a repeated key is an error.

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

namespace plattice {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream &in);
/// Throws ConfigError when the file cannot be opened or a line is malformed.
KeyValues load_key_values(const std::string &path);

} // namespace plattice
