#include "ramsey/table_io.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ramsey {

namespace {

void put_le(std::ostream& out, uint64_t x, int bytes) {
  for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((x >> (8 * i)) & 0xff));
}

uint64_t get_le(std::istream& in, int bytes) {
  uint64_t x = 0;
  for (int i = 0; i < bytes; ++i) {
    int c = in.get();
    if (c == EOF) throw TableFormatError("table file truncated");
    x |= static_cast<uint64_t>(c) << (8 * i);
  }
  return x;
}

}  // namespace

bool fits64(const mpz_class& z) { return z >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64; }

uint64_t to_u64(const mpz_class& z) {
  uint64_t x = 0;
  mpz_export(&x, nullptr, -1, sizeof(x), 0, 0, z.get_mpz_t());
  return x;
}

mpz_class from_u64(uint64_t x) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(x), 0, 0, &x);
  return z;
}

void write_table_file(std::ostream& out, const TableFile& file) {
  if (file.magic != "GRST1" && file.magic != "GRLN1") throw TableFormatError("unknown magic");
  uint8_t flags = file.flags;
  for (const auto& [k, v] : file.entries) {
    if (k < 0) throw TableFormatError("negative key");
    if (mpz_sizeinbase(k.get_mpz_t(), 2) > 64) flags |= kFlagWideKeys;
  }
  out.write(file.magic.data(), 5);
  put_le(out, file.vertex_count, 2);
  put_le(out, file.variant, 1);
  put_le(out, flags, 1);
  if (file.magic == "GRLN1") put_le(out, file.fingerprint, 8);
  put_le(out, file.entries.size(), 8);
  for (const auto& [k, v] : file.entries) {
    if (flags & kFlagWideKeys) {
      size_t len = (mpz_sizeinbase(k.get_mpz_t(), 2) + 7) / 8;
      if (k == 0) len = 0;
      if (len > 255) throw TableFormatError("key longer than 255 bytes");
      std::vector<unsigned char> buf(len);
      if (len) mpz_export(buf.data(), nullptr, -1, 1, 0, 0, k.get_mpz_t());
      out.put(static_cast<char>(len));
      out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(len));
    } else {
      put_le(out, to_u64(k), 8);
    }
    out.put(static_cast<char>(v));
  }
  if (!out) throw TableFormatError("write failed");
}

TableFile read_table_file(std::istream& in) {
  TableFile f;
  char magic[5];
  if (!in.read(magic, 5)) throw TableFormatError("table file truncated");
  f.magic.assign(magic, 5);
  if (f.magic != "GRST1" && f.magic != "GRLN1") throw TableFormatError("bad magic");
  f.vertex_count = static_cast<uint16_t>(get_le(in, 2));
  f.variant = static_cast<uint8_t>(get_le(in, 1));
  f.flags = static_cast<uint8_t>(get_le(in, 1));
  if (f.magic == "GRLN1") f.fingerprint = get_le(in, 8);
  uint64_t count = get_le(in, 8);
  f.entries.reserve(std::min<uint64_t>(count, 1u << 24));
  for (uint64_t i = 0; i < count; ++i) {
    mpz_class k;
    if (f.flags & kFlagWideKeys) {
      size_t len = get_le(in, 1);
      std::vector<unsigned char> buf(len);
      if (len && !in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(len)))
        throw TableFormatError("table file truncated");
      if (len) mpz_import(k.get_mpz_t(), len, -1, 1, 0, 0, buf.data());
    } else {
      k = from_u64(get_le(in, 8));
    }
    uint8_t v = static_cast<uint8_t>(get_le(in, 1));
    if (!f.entries.empty() && f.entries.back().first >= k)
      throw TableFormatError("keys not strictly ascending");
    f.entries.emplace_back(std::move(k), v);
  }
  if (in.peek() != EOF) throw TableFormatError("trailing bytes after entries");
  return f;
}

TableFile to_table_file(const StrategyTable& table) {
  TableFile f;
  f.magic = "GRST1";
  f.vertex_count = static_cast<uint16_t>(table.vertex_count());
  f.variant = static_cast<uint8_t>(table.variant());
  f.flags = (table.keyer().side_in_key() ? kFlagSideInKey : 0) |
            (table.keyer().canonical() ? 0 : kFlagRawKeys);
  f.entries.reserve(table.size());
  for (const auto& [k, v] : table.entries()) f.entries.emplace_back(from_u64(k), static_cast<uint8_t>(v));
  return f;
}

StrategyTable from_table_file(const TableFile& file, const GameSpec& spec) {
  if (file.magic != "GRST1") throw TableFormatError("not a strategy table");
  if (file.vertex_count != spec.board->vertex_count() ||
      file.variant != static_cast<uint8_t>(spec.variant))
    throw TableFormatError("table does not match the game spec");
  bool canonical = !(file.flags & kFlagRawKeys);
  StrategyTable table(spec, canonical);
  if (table.keyer().canonical() != canonical ||
      table.keyer().side_in_key() != static_cast<bool>(file.flags & kFlagSideInKey))
    throw TableFormatError("table key layout does not match the game spec");
  std::vector<std::pair<uint64_t, GameValue>> entries;
  entries.reserve(file.entries.size());
  for (const auto& [k, v] : file.entries) {
    if (!fits64(k)) throw TableFormatError("key exceeds 64 bits");
    if (v > 2) throw TableFormatError("bad value byte");
    entries.emplace_back(to_u64(k), static_cast<GameValue>(v));
  }
  table.set_entries(std::move(entries));
  table.stats().nonisomorphic_stored = table.size();
  GameEngine engine(spec);
  GameState start = engine.initial_state();
  if (!start.terminal()) {
    if (auto v = table.find(start)) table.set_root_value(*v);
  } else if (start.reason == EndReason::kNoMoves) {
    table.set_root_value(value_of_status(start.status));
  }
  return table;
}

void atomic_write_file(const std::string& path, const std::string& bytes) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("rename failed: " + path);
}

void save_strategy_table(const std::string& path, const StrategyTable& table) {
  std::ostringstream out(std::ios::binary);
  write_table_file(out, to_table_file(table));
  atomic_write_file(path, out.str());
}

StrategyTable load_strategy_table(const std::string& path, const GameSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return from_table_file(read_table_file(in), spec);
}

}  // namespace ramsey
