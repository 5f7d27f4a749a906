#include "symbol_cache.hpp"

#include <algorithm>
#include <fstream>

#include "costrat/wigner.hpp"

namespace costrat {
namespace detail {

CgCache& cg_cache() {
  static CgCache cache;
  return cache;
}

SixJCache& six_j_cache() {
  static SixJCache cache;
  return cache;
}

NineJCache& nine_j_cache() {
  static NineJCache cache;
  return cache;
}

NineJCache& nine_j_as_written_cache() {
  static NineJCache cache;
  return cache;
}

}  // namespace detail

namespace {

constexpr char kMagic[] = "costrat-symbols-1";

template <class Cache>
void write_cache(std::ofstream& out, const Cache& cache) {
  auto entries = cache.entries();
  std::sort(entries.begin(), entries.end());
  const std::uint64_t count = entries.size();
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  for (const auto& [key, value] : entries) {
    out.write(reinterpret_cast<const char*>(key.data()),
              static_cast<std::streamsize>(key.size() * sizeof(key[0])));
    out.write(reinterpret_cast<const char*>(&value), sizeof value);
  }
}

template <class Cache, class Key>
bool read_cache(std::ifstream& in, Cache& cache) {
  std::uint64_t count = 0;
  if (!in.read(reinterpret_cast<char*>(&count), sizeof count)) return false;
  for (std::uint64_t i = 0; i < count; ++i) {
    Key key{};
    double value = 0.0;
    if (!in.read(reinterpret_cast<char*>(key.data()),
                 static_cast<std::streamsize>(key.size() * sizeof(key[0]))))
      return false;
    if (!in.read(reinterpret_cast<char*>(&value), sizeof value)) return false;
    cache.insert(key, value);
  }
  return true;
}

}  // namespace

SymbolCacheStats symbol_cache_stats() {
  return {detail::cg_cache().size(), detail::six_j_cache().size(), detail::nine_j_cache().size()};
}

void clear_symbol_caches() {
  detail::cg_cache().clear();
  detail::six_j_cache().clear();
  detail::nine_j_cache().clear();
  detail::nine_j_as_written_cache().clear();
}

bool load_symbol_cache(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return false;
  char magic[sizeof kMagic] = {};
  if (!in.read(magic, sizeof magic) || std::string_view(magic) != kMagic) return false;
  return read_cache<detail::CgCache, detail::CgKey>(in, detail::cg_cache()) &&
         read_cache<detail::SixJCache, detail::SixJKey>(in, detail::six_j_cache()) &&
         read_cache<detail::NineJCache, detail::NineJKey>(in, detail::nine_j_cache());
}

void save_symbol_cache(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write symbol cache " + file.string());
  out.write(kMagic, sizeof kMagic);
  write_cache(out, detail::cg_cache());
  write_cache(out, detail::six_j_cache());
  write_cache(out, detail::nine_j_cache());
}

}  // namespace costrat
