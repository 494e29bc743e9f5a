#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace galt::cli {

// Shortest round-trip decimal form; -0 is written as 0.
std::string format_number(double v);

// Rendered output files, kept in memory until the whole run has succeeded.
class OutputSet {
 public:
  void add(const std::string& name, std::string content);
  bool contains(const std::string& name) const { return files_.contains(name); }
  const std::string& at(const std::string& name) const { return files_.at(name); }
  std::vector<std::string> names() const;

  // Writes every file to a hidden temporary next to its target, then renames
  // them into place. On failure all temporaries are removed and
  // Error{Io, "WriteFailed"} is thrown.
  void commit(const std::filesystem::path& dir) const;

 private:
  std::map<std::string, std::string> files_;
};

}  // namespace galt::cli
