#include "ordlab/grid_path.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ordlab/csv.hpp"
#include "ordlab/errors.hpp"

namespace ordlab {

GridPath GridPath::zeros(std::size_t n) {
  GridPath p;
  p.n = n;
  p.values.assign(n + 1, 0.0);
  return p;
}

GridPath GridPath::subsample(std::size_t m) const {
  validate();
  if (m == 0 || n % m != 0)
    throw DomainError("GridPath::subsample: m must divide n");
  const std::size_t stride = n / m;
  GridPath out;
  out.n = m;
  out.values.reserve(m + 1);
  for (std::size_t j = 0; j <= m; ++j) out.values.push_back(values[j * stride]);
  return out;
}

void GridPath::validate() const {
  if (n == 0) throw DomainError("GridPath: n must be positive");
  if (values.size() != n + 1)
    throw DomainError("GridPath: expected n+1 values");
  if (values[0] != 0.0) throw DomainError("GridPath: values[0] must be 0");
}

void write_path_csv(const GridPath& path, std::ostream& out) {
  path.validate();
  out << "t,value\n";
  for (std::size_t j = 0; j <= path.n; ++j)
    out << format_double(path.t(j)) << ',' << format_double(path.values[j])
        << '\n';
}

void write_path_csv(const GridPath& path, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot open for writing: " + file);
  write_path_csv(path, out);
  if (!out) throw IoError("write failed: " + file);
}

GridPath read_path_csv(std::istream& in) {
  GridPath p;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("t,", 0) == 0) continue;  // header
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw IoError("path CSV: expected 't,value' rows");
    try {
      p.values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw IoError("path CSV: malformed value in row: " + line);
    }
  }
  if (p.values.size() < 2) throw IoError("path CSV: fewer than 2 rows");
  p.n = p.values.size() - 1;
  p.validate();
  return p;
}

GridPath read_path_csv(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open: " + file);
  return read_path_csv(in);
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary path format assumes a little-endian host");

template <typename T>
void put_le(std::ostream& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.write(buf, sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  char buf[sizeof(T)];
  in.read(buf, sizeof(T));
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

void write_path_binary(const GridPath& path, const std::string& file) {
  path.validate();
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + file);
  put_le<std::uint64_t>(out, path.n);
  for (double v : path.values) put_le<double>(out, v);
  if (!out) throw IoError("write failed: " + file);
}

GridPath read_path_binary(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open: " + file);
  GridPath p;
  p.n = get_le<std::uint64_t>(in);
  if (!in || p.n == 0 || p.n > (1ull << 32))
    throw IoError("binary path: bad length field");
  p.values.resize(p.n + 1);
  for (auto& v : p.values) v = get_le<double>(in);
  if (!in) throw IoError("binary path: truncated file");
  p.validate();
  return p;
}

GridPath read_path_auto(const std::string& file) {
  if (file.size() >= 4 && file.compare(file.size() - 4, 4, ".bin") == 0)
    return read_path_binary(file);
  return read_path_csv(file);
}

}  // namespace ordlab
