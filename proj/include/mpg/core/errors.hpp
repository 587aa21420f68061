#pragma once

#include <stdexcept>
#include <string>

namespace mpg {

class ArgumentOutOfDomain : public std::invalid_argument {
 public:
  explicit ArgumentOutOfDomain(const std::string& what) : std::invalid_argument(what) {}
};

class UnknownPrimitive : public std::invalid_argument {
 public:
  explicit UnknownPrimitive(const std::string& id)
      : std::invalid_argument("unknown primitive: " + id), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

class ConfigInvalid : public std::invalid_argument {
 public:
  explicit ConfigInvalid(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace mpg
