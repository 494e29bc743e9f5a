#include "galt_cli/output.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "galt/error.hpp"

namespace galt::cli {

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void OutputSet::add(const std::string& name, std::string content) { files_[name] = std::move(content); }

std::vector<std::string> OutputSet::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : files_) out.push_back(name);
  return out;
}

void OutputSet::commit(const std::filesystem::path& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorClass::Io, "WriteFailed", "cannot create " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> temps;
  auto cleanup = [&] {
    for (const auto& t : temps) std::filesystem::remove(t, ec);
  };
  for (const auto& [name, content] : files_) {
    const auto tmp = dir / ("." + name + ".partial");
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      cleanup();
      throw Error(ErrorClass::Io, "WriteFailed", "cannot write " + tmp.string());
    }
  }
  std::size_t i = 0;
  for (const auto& [name, _] : files_) {
    std::filesystem::rename(temps[i++], dir / name, ec);
    if (ec) {
      cleanup();
      throw Error(ErrorClass::Io, "WriteFailed", "cannot rename into " + (dir / name).string() + ": " + ec.message());
    }
  }
}

}  // namespace galt::cli
