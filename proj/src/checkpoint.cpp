#include "anisomhd/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace anisomhd {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'A', 'N', 'I', 'S', 'O', 'M', 'H', 'D'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderSize = 64;

struct Header {
  char magic[8];
  std::uint32_t version;
  std::uint32_t n1, n2, n3;
  double L;
  double time;
  std::uint32_t ncomp;
};

void write_header(std::ostream& os, const SpectralGrid& g, double time, std::uint32_t ncomp) {
  char buf[kHeaderSize] = {};
  std::size_t off = 0;
  std::memcpy(buf + off, kMagic, 8);
  off += 8;
  auto put32 = [&](std::uint32_t v) {
    std::memcpy(buf + off, &v, 4);
    off += 4;
  };
  auto put64 = [&](double v) {
    std::memcpy(buf + off, &v, 8);
    off += 8;
  };
  put32(kVersion);
  put32(std::uint32_t(g.n1));
  put32(std::uint32_t(g.n2));
  put32(std::uint32_t(g.n3));
  put64(g.L);
  put64(time);
  put32(ncomp);
  os.write(buf, kHeaderSize);
}

Header read_header(std::istream& is) {
  char buf[kHeaderSize];
  is.read(buf, kHeaderSize);
  if (!is) throw std::runtime_error("checkpoint: truncated header");
  Header h;
  std::size_t off = 0;
  std::memcpy(h.magic, buf, 8);
  off += 8;
  auto get32 = [&] {
    std::uint32_t v;
    std::memcpy(&v, buf + off, 4);
    off += 4;
    return v;
  };
  auto get64 = [&] {
    double v;
    std::memcpy(&v, buf + off, 8);
    off += 8;
    return v;
  };
  h.version = get32();
  h.n1 = get32();
  h.n2 = get32();
  h.n3 = get32();
  h.L = get64();
  h.time = get64();
  h.ncomp = get32();
  if (std::memcmp(h.magic, kMagic, 8) != 0)
    throw std::runtime_error("checkpoint: bad magic");
  if (h.version != kVersion)
    throw std::runtime_error("checkpoint: unsupported format version");
  return h;
}

void write_component(std::ostream& os, const CArray& a) {
  std::vector<double> row(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) row[i] = a[i].real();
  os.write(reinterpret_cast<const char*>(row.data()),
           std::streamsize(row.size() * sizeof(double)));
}

void read_component(std::istream& is, CArray& a, std::size_t n) {
  std::vector<double> row(n);
  is.read(reinterpret_cast<char*>(row.data()), std::streamsize(n * sizeof(double)));
  if (!is) throw std::runtime_error("checkpoint: truncated data");
  a.resize(Eigen::Index(n));
  for (std::size_t i = 0; i < n; ++i) a[i] = Cplx(row[i], 0.0);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
  return is;
}

}  // namespace

void write_checkpoint(const std::string& path, const FieldPair& p) {
  if (p.u.rep != Rep::Physical || p.b.rep != Rep::Physical)
    throw std::invalid_argument("write_checkpoint: fields must be physical");
  auto os = open_out(path);
  write_header(os, p.u.grid, p.time, 6);
  for (int c = 0; c < 3; ++c) write_component(os, p.u.c[c]);
  for (int c = 0; c < 3; ++c) write_component(os, p.b.c[c]);
  if (!os) throw std::runtime_error("checkpoint: write failed for " + path);
}

void write_checkpoint(const std::string& path, const ScalarField& f, double time) {
  if (f.rep != Rep::Physical)
    throw std::invalid_argument("write_checkpoint: field must be physical");
  auto os = open_out(path);
  write_header(os, f.grid, time, 1);
  write_component(os, f.v);
  if (!os) throw std::runtime_error("checkpoint: write failed for " + path);
}

FieldPair read_checkpoint_pair(const std::string& path) {
  auto is = open_in(path);
  const Header h = read_header(is);
  if (h.ncomp != 6) throw std::runtime_error("checkpoint: expected 6 components");
  const SpectralGrid g = make_grid(int(h.n1), int(h.n2), int(h.n3), h.L);
  FieldPair p = make_pair(g, Rep::Physical);
  p.time = h.time;
  for (int c = 0; c < 3; ++c) read_component(is, p.u.c[c], g.size());
  for (int c = 0; c < 3; ++c) read_component(is, p.b.c[c], g.size());
  return p;
}

ScalarField read_checkpoint_scalar(const std::string& path, double* time) {
  auto is = open_in(path);
  const Header h = read_header(is);
  if (h.ncomp != 1) throw std::runtime_error("checkpoint: expected 1 component");
  const SpectralGrid g = make_grid(int(h.n1), int(h.n2), int(h.n3), h.L);
  ScalarField f = make_scalar(g, Rep::Physical);
  read_component(is, f.v, g.size());
  if (time) *time = h.time;
  return f;
}

}  // namespace anisomhd
