#include "vll/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace vll {
namespace {

// Serialization assumes a little-endian host, which is all this project
// targets; refuse to silently write garbage elsewhere.
void check_endianness() {
  uint32_t probe = 1;
  char b;
  std::memcpy(&b, &probe, 1);
  if (b != 1) throw std::runtime_error("snapshot io requires a little-endian host");
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& snap) {
  check_endianness();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out.write("VLL1", 4);
  uint32_t n = static_cast<uint32_t>(snap.omega.grid.n());
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&snap.nu), 8);
  out.write(reinterpret_cast<const char*>(&snap.t), 8);
  out.write(reinterpret_cast<const char*>(snap.omega.values.data()),
            static_cast<std::streamsize>(snap.omega.values.size() * 8));
  if (!out) throw std::runtime_error("short write: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  check_endianness();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for read: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "VLL1", 4) != 0)
    throw std::runtime_error("bad snapshot magic in " + path);
  uint32_t n = 0;
  in.read(reinterpret_cast<char*>(&n), 4);
  double nu = 0.0, t = 0.0;
  in.read(reinterpret_cast<char*>(&nu), 8);
  in.read(reinterpret_cast<char*>(&t), 8);
  if (!in) throw std::runtime_error("truncated snapshot header in " + path);
  TorusGrid g(static_cast<int>(n));
  ScalarField w(g);
  in.read(reinterpret_cast<char*>(w.values.data()),
          static_cast<std::streamsize>(w.values.size() * 8));
  if (!in) throw std::runtime_error("truncated snapshot payload in " + path);
  return Snapshot(nu, t, std::move(w));
}

}  // namespace vll
