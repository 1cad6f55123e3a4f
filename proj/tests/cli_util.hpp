#pragma once

// Helpers for tests that drive the germen executable.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace germen::testing {

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

inline std::string quote(const std::string& s) { return "'" + s + "'"; }

/// Runs `cli args`, stdout to `out` (if given), stderr discarded. Returns the
/// exit status.
inline int run(const std::string& cli, const std::string& args, const std::filesystem::path& out = {}) {
  std::string cmd = quote(cli) + " " + args + (out.empty() ? " >/dev/null" : " >" + quote(out.string()));
  cmd += " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / (name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace germen::testing
