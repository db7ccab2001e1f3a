#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "anisomhd/checkpoint.hpp"
#include "anisomhd/random_fields.hpp"
#include "anisomhd/transform.hpp"

#include <cstdio>
#include <fstream>

using namespace anisomhd;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("chk_test_" + name + ".bin") {}
  ~TempFile() { std::remove(path.c_str()); }
};

FieldPair sample_pair() {
  const SpectralGrid g = make_grid(12, 8, 16, 2.0);
  const FourierTransformer ft(g);
  Rng rng(99);
  FieldPair p = ft.inverse(random_band_pair(g, 1.5, rng, true));
  p.time = 7.25;
  return p;
}

}  // namespace

TEST_CASE("pair roundtrip is bit exact") {
  const TempFile tmp("pair");
  const FieldPair p = sample_pair();
  write_checkpoint(tmp.path, p);
  const FieldPair q = read_checkpoint_pair(tmp.path);
  CHECK(q.u.grid.same_shape(p.u.grid));
  CHECK(q.time == p.time);
  CHECK(q.u.rep == Rep::Physical);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < p.u.grid.size(); ++i) {
      CHECK(q.u.c[c][i].real() == p.u.c[c][i].real());
      CHECK(q.u.c[c][i].imag() == 0.0);
      CHECK(q.b.c[c][i].real() == p.b.c[c][i].real());
    }
}

TEST_CASE("scalar roundtrip keeps grid, time and values") {
  const TempFile tmp("scalar");
  const SpectralGrid g = make_grid(8, 10, 6, 0.5);
  const FourierTransformer ft(g);
  Rng rng(5);
  const ScalarField f = ft.inverse(random_band_scalar(g, 2.0, rng));
  write_checkpoint(tmp.path, f, 3.5);
  double t = 0;
  const ScalarField h = read_checkpoint_scalar(tmp.path, &t);
  CHECK(t == 3.5);
  CHECK(h.grid.same_shape(g));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(h.v[i].real() == f.v[i].real());
}

TEST_CASE("spectral fields are rejected") {
  const TempFile tmp("rejected");
  const SpectralGrid g = make_grid(8, 8, 8, 1.0);
  FieldPair p = make_pair(g, Rep::Spectral);
  CHECK_THROWS_AS(write_checkpoint(tmp.path, p), std::invalid_argument);
}

TEST_CASE("corrupted files are refused") {
  const TempFile tmp("corrupt");
  write_checkpoint(tmp.path, sample_pair());

  SUBCASE("bad magic") {
    std::fstream fs(tmp.path, std::ios::in | std::ios::out | std::ios::binary);
    fs.seekp(0);
    fs.put('X');
    fs.close();
    CHECK_THROWS_WITH_AS(read_checkpoint_pair(tmp.path), "checkpoint: bad magic",
                         std::runtime_error);
  }
  SUBCASE("bad version") {
    std::fstream fs(tmp.path, std::ios::in | std::ios::out | std::ios::binary);
    fs.seekp(8);
    fs.put(char(9));
    fs.close();
    CHECK_THROWS_WITH_AS(read_checkpoint_pair(tmp.path),
                         "checkpoint: unsupported format version", std::runtime_error);
  }
  SUBCASE("truncated data") {
    std::ifstream is(tmp.path, std::ios::binary);
    std::string all((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    is.close();
    std::ofstream os(tmp.path, std::ios::binary | std::ios::trunc);
    os.write(all.data(), std::streamsize(all.size() / 2));
    os.close();
    CHECK_THROWS_AS(read_checkpoint_pair(tmp.path), std::runtime_error);
  }
  SUBCASE("component count mismatch") {
    CHECK_THROWS_WITH_AS(read_checkpoint_scalar(tmp.path), "checkpoint: expected 1 component",
                         std::runtime_error);
  }
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(read_checkpoint_pair("does_not_exist.bin"), std::runtime_error);
}
