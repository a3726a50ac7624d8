#ifndef SUBSEMI_IO_HPP
#define SUBSEMI_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "subsemi/cayley_table.hpp"
#include "subsemi/index_set.hpp"

namespace subsemi {

// Table files: first line is the order n, then n lines of n space-separated
// 1-based entries, then optional label lines of the form `# i <label>` with
// 1-based i.  Lines end with LF.  Readers throw error{bad_format} with the
// offending line number in the witness, or whatever validation throws.
CayleyTable read_table(std::istream& in);
CayleyTable read_table_file(const std::string& path);
void write_table(std::ostream& out, const CayleyTable& t);
void write_table_file(const std::string& path, const CayleyTable& t);

// Set-list files: `#key value` header lines, then one set per line in the
// order written.  Default body format is comma-separated ascending 1-based
// members with `-` for the empty set; with `#format bits` each line is the
// fixed-width lowercase-hex bitmask of the set (low bit = element 1).
struct SubsHeader {
  uint32_t degree = 0;        // universe size; required
  std::string table_spec;     // `#table`, optional
  std::string symmetry_spec;  // `#symmetry`, optional
  bool bits = false;          // `#format bits`
  std::string shard_key;      // `#shard`, optional
};

struct SubsFile {
  SubsHeader header;
  std::vector<IndexSet> sets;
};

SubsHeader read_subs_header(std::istream& in);
SubsFile read_subs(std::istream& in);
SubsFile read_subs_file(const std::string& path);
void write_subs(std::ostream& out, const SubsHeader& header, const std::vector<IndexSet>& sets);
void write_subs_file(const std::string& path, const SubsHeader& header,
                     const std::vector<IndexSet>& sets);

// One body line, exactly as the writer emits it (no newline).
std::string format_set_line(const IndexSet& s, bool bits);
IndexSet parse_set_line(const std::string& line, uint32_t degree, bool bits);

}  // namespace subsemi

#endif
