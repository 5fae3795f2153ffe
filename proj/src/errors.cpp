#include "qha/errors.hpp"

namespace qha {

namespace {

std::string join_paths(const std::vector<std::string>& paths) {
  std::string out;
  for (size_t i = 0; i < paths.size() && i < 8; ++i) out += (i ? ", " : "") + paths[i];
  if (paths.size() > 8) out += ", ...";
  return out;
}

}  // namespace

NotFiniteDimensional::NotFiniteDimensional(int cap, std::vector<std::string> surviving)
    : Error("algebra does not vanish below degree cap " + std::to_string(cap) + "; surviving paths: " +
            join_paths(surviving)),
      cap_(cap),
      surviving_(std::move(surviving)) {}

CapExceeded::CapExceeded(int cap, std::string last_syzygy)
    : Error("resolution exceeded length cap " + std::to_string(cap) + "; last syzygy " + last_syzygy), cap_(cap) {}

}  // namespace qha
