#include "support.hpp"

#include "rkhs/io.hpp"
#include "rkhs/witness.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <random>

using namespace rkhs;
using rkhs::io::Json;

TEST(MeasureJson, DiscreteRoundTrip) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mu = support::random_signed(rng, Space::euclidean(1 + trial % 3), 6, -5, 5);
    const auto text = io::dump(io::to_json(mu));
    const auto back = io::measure_from_json(Json::parse(text));
    EXPECT_TRUE(std::get<DiscreteSignedMeasure>(back) == mu);
  }
}

TEST(MeasureJson, DensityRoundTrip) {
  for (const Measure& m : {Measure(DensityMeasure::torus_cosine(0.5, 4)),
                           Measure(DensityMeasure::modulated_sincsq(1.25, 3.5))}) {
    const auto j = io::to_json(m);
    EXPECT_EQ(io::to_json(io::measure_from_json(j)), j);
  }
}

TEST(MeasureJson, FieldOrderIsIrrelevant) {
  const auto a = io::measure_from_json(Json::parse(
      R"({"atoms":[{"w":1.0,"x":[0.5]}],"space":{"dim":1,"kind":"euclidean"}})"));
  EXPECT_EQ(std::get<DiscreteSignedMeasure>(a).atoms()[0].x[0], 0.5);
}

TEST(MeasureJson, RejectsMalformed) {
  const char* bad[] = {
      R"({"space":{"kind":"euclidean","dim":1},"atoms":[],"extra":1})",
      R"({"space":{"kind":"sphere","dim":1},"atoms":[]})",
      R"({"space":{"kind":"euclidean","dim":1},"atoms":[{"x":[0.0,1.0],"w":1}]})",
      R"({"space":{"kind":"euclidean","dim":1},"atoms":[{"x":[0.0]}]})",
      R"({"space":{"kind":"torus","dim":1},"density":{"family":"torus_cosine","alpha":1,"n0":0}})",
      R"({"space":{"kind":"euclidean","dim":1},"density":{"family":"modulated_sincsq","alpha":1,"omega0":2,"n0":1}})",
      R"([1,2])",
  };
  for (const char* b : bad) EXPECT_THROW(io::measure_from_json(Json::parse(b)), DomainError) << b;
}

TEST(KernelJson, ZooRoundTrip) {
  for (const auto& name : support::zoo_names()) {
    const Kernel k = support::zoo_kernel(name);
    const auto j = io::to_json(k);
    const Kernel back = io::kernel_from_json(j);
    EXPECT_EQ(back.label(), k.label()) << name;
    EXPECT_EQ(back.family_name(), name);
    EXPECT_EQ(io::to_json(back), j);
  }
}

TEST(KernelJson, RejectsMalformed) {
  const char* bad[] = {
      R"({"family":"gaussian_ti","space":{"kind":"euclidean","dim":1},"params":{"sigma":1,"rho":2}})",
      R"({"family":"gaussian_ti","space":{"kind":"euclidean","dim":1}})",
      R"({"family":"no_such","space":{"kind":"euclidean","dim":1},"params":{}})",
      R"({"family":"poisson_torus","space":{"kind":"euclidean","dim":1},"params":{"sigma":0.5}})",
      R"({"family":"dirichlet","space":{"kind":"torus","dim":1},"params":{"l":1.5}})",
  };
  for (const char* b : bad) EXPECT_THROW(io::kernel_from_json(Json::parse(b)), DomainError) << b;
  // parameterless families may omit params
  EXPECT_NO_THROW(io::kernel_from_json(Json::parse(R"({"family":"sincsq","space":{"kind":"euclidean","dim":1}})")));
}

TEST(CertificateJson, RoundTrip) {
  for (const auto& name : support::zoo_names()) {
    for (const auto& c : certify_all(support::zoo_kernel(name))) {
      const auto j = io::to_json(c);
      EXPECT_EQ(io::to_json(io::certificate_from_json(j)), j);
    }
  }
}

TEST(WitnessJson, RoundTrip) {
  const auto w = torus_zero_energy_witness(support::zoo_kernel("dirichlet"), 8, 3);
  const auto j = io::to_json(w);
  EXPECT_TRUE(j.contains("measure"));
  EXPECT_EQ(j["refutes"], "c_universal");
  const auto back = io::witness_from_json(j);
  EXPECT_TRUE(std::get<DiscreteSignedMeasure>(back.measure) == std::get<DiscreteSignedMeasure>(w.measure));
  EXPECT_EQ(back.energy.value, w.energy.value);
}

TEST(Dump, SeventeenDigitsAndFloatsStayFloats) {
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_double(2.0), "2.0");
  EXPECT_EQ(io::format_double(1e300), "1.0000000000000001e+300");
  Json j;
  j["x"] = 1.0 / 3;
  EXPECT_EQ(Json::parse(io::dump(j))["x"].get<double>(), 1.0 / 3);
}

TEST(Files, WriteAndRead) {
  const std::string path = testing::TempDir() + "rkhs_io_roundtrip.json";
  const Json j = io::to_json(support::zoo_kernel("fejer"));
  io::write_json_file(path, j);
  EXPECT_EQ(io::read_json_file(path), j);
  std::remove(path.c_str());
  EXPECT_THROW(io::read_json_file(path), DomainError);
}

TEST(KernelClassNames, RoundTrip) {
  for (auto c : {KernelClass::TranslationInvariant, KernelClass::Torus, KernelClass::Radial, KernelClass::Taylor}) {
    EXPECT_EQ(io::parse_kernel_class(io::to_string(c)), c);
  }
  EXPECT_THROW(io::parse_kernel_class("A9"), DomainError);
}
