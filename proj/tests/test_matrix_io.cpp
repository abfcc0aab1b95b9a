#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "jsrec/error.hpp"
#include "jsrec/matrix_io.hpp"

using namespace jsrec;

TEST_CASE("csv round trip is exact") {
  const NoisyInstance inst = generate_instance(InstanceSpec{});
  std::stringstream ss;
  io::write_csv(ss, inst.Y);
  const Matrix back = io::read_csv(ss);
  CHECK(back == inst.Y);
}

TEST_CASE("csv reader skips comments and blank lines, rejects ragged rows") {
  std::istringstream ok("# header\n1,2,3\n\n4.5, -6e-3 ,7\n");
  const Matrix M = io::read_csv(ok);
  REQUIRE(M.rows() == 2);
  REQUIRE(M.cols() == 3);
  CHECK(M(1, 1) == -6e-3);
  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(io::read_csv(ragged), precondition_error);
  std::istringstream bad("1,x\n");
  CHECK_THROWS_AS(io::read_csv(bad), precondition_error);
}

TEST_CASE("key=value round trip") {
  io::KeyValues kv{{"m", "40"}, {"snr_db", "none"}, {"ensemble", "unitmean"}};
  std::stringstream ss;
  io::write_key_values(ss, kv);
  CHECK(io::read_key_values(ss) == kv);
  std::istringstream spaced("  # comment\n a = 1 \n");
  CHECK(io::read_key_values(spaced).at("a") == "1");
  std::istringstream broken("novalue\n");
  CHECK_THROWS_AS(io::read_key_values(broken), precondition_error);
}

TEST_CASE("exported instance regenerates bit for bit from its metadata") {
  InstanceSpec spec;
  spec.k = 7;
  spec.seed = 99;
  spec.ensemble = Ensemble::unit_mean;
  const NoisyInstance inst = generate_instance(spec);
  const auto dir = std::filesystem::temp_directory_path() / "jsrec_io_test";
  std::filesystem::remove_all(dir);
  io::export_instance(dir, spec, inst);
  CHECK(io::read_csv(dir / "A.csv") == inst.A.entries);
  CHECK(io::read_csv(dir / "X.csv") == inst.X.entries);
  CHECK(io::read_csv(dir / "Y.csv") == inst.Y);
  std::ifstream meta(dir / "instance.txt");
  const InstanceSpec back = io::spec_from_metadata(io::read_key_values(meta));
  const NoisyInstance again = generate_instance(back);
  CHECK(again.Y == inst.Y);
  CHECK(again.S == inst.S);
  std::filesystem::remove_all(dir);
}
