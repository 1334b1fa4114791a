#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ramsey/solver.h"

namespace ramsey {

// Header flag bits shared by GRST1 and GRLN1 files.
constexpr uint8_t kFlagSideInKey = 1;
constexpr uint8_t kFlagWideKeys = 2;  // keys stored as u8 length + little-endian bytes
constexpr uint8_t kFlagRawKeys = 4;   // keys are raw codes over free edges, not canonical

class TableFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// In-memory image of a table file. Values are raw bytes (signed for GRLN1).
struct TableFile {
  std::string magic = "GRST1";
  uint16_t vertex_count = 0;
  uint8_t variant = 0;
  uint8_t flags = 0;
  uint64_t fingerprint = 0;  // written only for GRLN1
  std::vector<std::pair<mpz_class, uint8_t>> entries;
};

bool fits64(const mpz_class& z);
uint64_t to_u64(const mpz_class& z);
mpz_class from_u64(uint64_t x);

// Little-endian throughout. The wide-key flag is set automatically when a
// key needs more than 64 bits.
void write_table_file(std::ostream& out, const TableFile& file);
TableFile read_table_file(std::istream& in);

TableFile to_table_file(const StrategyTable& table);
// Checks vertex count, variant and key flags against the spec.
StrategyTable from_table_file(const TableFile& file, const GameSpec& spec);

void save_strategy_table(const std::string& path, const StrategyTable& table);
StrategyTable load_strategy_table(const std::string& path, const GameSpec& spec);

// Writes to path.tmp and renames over path.
void atomic_write_file(const std::string& path, const std::string& bytes);

}  // namespace ramsey
