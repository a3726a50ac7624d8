#include "subsemi/io.hpp"

#include <fstream>
#include <sstream>

#include "subsemi/error.hpp"

namespace subsemi {

namespace {

[[noreturn]] void bad_line(const std::string& msg, uint32_t lineno) {
  throw error(errc::bad_format, msg + " (line " + std::to_string(lineno) + ")", {lineno});
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Strips an optional trailing CR so files that passed through CRLF tools
// still read; the writers only ever emit LF.
void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::bad_format, "cannot open " + path + " for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error(errc::bad_format, "cannot open " + path + " for writing");
  return out;
}

}  // namespace

CayleyTable read_table(std::istream& in) {
  std::string line;
  uint32_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      chomp(line);
      if (!blank(line)) return true;
    }
    return false;
  };

  if (!next_line()) throw error(errc::bad_format, "empty table file");
  uint64_t n = 0;
  {
    std::istringstream is(line);
    if (!(is >> n)) bad_line("expected the order on the first line", lineno);
    std::string extra;
    if (is >> extra) bad_line("trailing junk after the order", lineno);
  }
  if (n > (uint64_t(1) << 20)) bad_line("implausible order " + std::to_string(n), lineno);

  std::vector<std::vector<uint32_t>> rows;
  rows.reserve(size_t(n));
  for (uint64_t r = 0; r < n; ++r) {
    if (!next_line()) throw error(errc::bad_format, "table ended after " + std::to_string(r) +
                                                        " of " + std::to_string(n) + " rows");
    std::istringstream is(line);
    std::vector<uint32_t> row;
    row.reserve(size_t(n));
    uint64_t v;
    while (is >> v) {
      if (v == 0 || v > n) bad_line("entry " + std::to_string(v) + " out of range", lineno);
      row.push_back(uint32_t(v));
    }
    if (!is.eof()) bad_line("non-numeric table entry", lineno);
    if (row.size() != n)
      bad_line("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n),
               lineno);
    rows.push_back(std::move(row));
  }

  std::vector<std::string> labels(static_cast<size_t>(n));
  uint32_t labeled = 0;
  while (next_line()) {
    if (line[0] != '#') bad_line("unexpected content after the table", lineno);
    std::istringstream is(line.substr(1));
    uint64_t idx = 0;
    if (!(is >> idx) || idx == 0 || idx > n) bad_line("bad label index", lineno);
    std::string rest;
    std::getline(is, rest);
    size_t start = rest.find_first_not_of(" \t");
    if (start == std::string::npos) bad_line("empty label", lineno);
    if (!labels[size_t(idx) - 1].empty()) bad_line("duplicate label for element " + std::to_string(idx), lineno);
    labels[size_t(idx) - 1] = rest.substr(start);
    ++labeled;
  }
  if (labeled == 0) labels.clear();
  else if (labeled != n)
    throw error(errc::bad_format, "labels given for " + std::to_string(labeled) + " of " +
                                      std::to_string(n) + " elements");

  return validate(rows, std::move(labels));
}

CayleyTable read_table_file(const std::string& path) {
  std::ifstream in = open_in(path);
  return read_table(in);
}

void write_table(std::ostream& out, const CayleyTable& t) {
  const uint32_t n = t.n();
  out << n << '\n';
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << t.entry(i, j) + 1;
    }
    out << '\n';
  }
  if (t.has_labels())
    for (uint32_t i = 0; i < n; ++i) out << "# " << i + 1 << ' ' << t.labels()[i] << '\n';
}

void write_table_file(const std::string& path, const CayleyTable& t) {
  std::ofstream out = open_out(path);
  write_table(out, t);
  if (!out) throw error(errc::bad_format, "failed writing " + path);
}

std::string format_set_line(const IndexSet& s, bool bits) {
  if (bits) return s.to_hex();
  if (s.empty()) return "-";
  std::string out;
  bool first = true;
  s.for_each([&](uint32_t e) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(e + 1);
  });
  return out;
}

IndexSet parse_set_line(const std::string& line, uint32_t degree, bool bits) {
  if (bits) return IndexSet::from_hex(degree, line);
  IndexSet s(degree);
  if (line == "-") return s;
  std::istringstream is(line);
  std::string tok;
  int64_t prev = 0;
  while (std::getline(is, tok, ',')) {
    uint64_t v = 0;
    size_t pos = 0;
    try {
      v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      throw error(errc::bad_format, "bad set member '" + tok + "'");
    }
    if (pos != tok.size()) throw error(errc::bad_format, "bad set member '" + tok + "'");
    if (v == 0 || v > degree)
      throw error(errc::bad_format, "set member " + std::to_string(v) + " out of range");
    if (int64_t(v) <= prev)
      throw error(errc::bad_format, "set members not strictly ascending");
    prev = int64_t(v);
    s.add(uint32_t(v) - 1);
  }
  if (prev == 0) throw error(errc::bad_format, "empty set line (use '-')");
  return s;
}

SubsHeader read_subs_header(std::istream& in) {
  SubsHeader h;
  bool have_degree = false;
  uint32_t lineno = 0;
  while (in.peek() == '#') {
    std::string line;
    std::getline(in, line);
    ++lineno;
    chomp(line);
    std::istringstream is(line.substr(1));
    std::string key;
    is >> key;
    std::string value;
    std::getline(is, value);
    size_t start = value.find_first_not_of(" \t");
    value = start == std::string::npos ? std::string() : value.substr(start);
    if (key == "degree") {
      try {
        h.degree = uint32_t(std::stoul(value));
      } catch (const std::exception&) {
        bad_line("bad degree '" + value + "'", lineno);
      }
      have_degree = true;
    } else if (key == "table") {
      h.table_spec = value;
    } else if (key == "symmetry") {
      h.symmetry_spec = value;
    } else if (key == "format") {
      if (value != "bits") bad_line("unknown format '" + value + "'", lineno);
      h.bits = true;
    } else if (key == "shard") {
      h.shard_key = value;
    } else {
      bad_line("unknown header key '" + key + "'", lineno);
    }
  }
  if (!have_degree) throw error(errc::bad_format, "missing #degree header");
  return h;
}

SubsFile read_subs(std::istream& in) {
  SubsFile f;
  f.header = read_subs_header(in);
  std::string line;
  uint32_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    chomp(line);
    if (blank(line)) continue;
    try {
      f.sets.push_back(parse_set_line(line, f.header.degree, f.header.bits));
    } catch (const error& e) {
      if (e.code() != errc::bad_format) throw;
      throw error(errc::bad_format, std::string(e.what()) + " (body line " + std::to_string(lineno) + ")",
                  {lineno});
    }
  }
  return f;
}

SubsFile read_subs_file(const std::string& path) {
  std::ifstream in = open_in(path);
  return read_subs(in);
}

void write_subs(std::ostream& out, const SubsHeader& header, const std::vector<IndexSet>& sets) {
  out << "#degree " << header.degree << '\n';
  if (!header.table_spec.empty()) out << "#table " << header.table_spec << '\n';
  if (!header.symmetry_spec.empty()) out << "#symmetry " << header.symmetry_spec << '\n';
  if (header.bits) out << "#format bits\n";
  if (!header.shard_key.empty()) out << "#shard " << header.shard_key << '\n';
  for (const IndexSet& s : sets) out << format_set_line(s, header.bits) << '\n';
}

void write_subs_file(const std::string& path, const SubsHeader& header,
                     const std::vector<IndexSet>& sets) {
  std::ofstream out = open_out(path);
  write_subs(out, header, sets);
  if (!out) throw error(errc::bad_format, "failed writing " + path);
}

}  // namespace subsemi
