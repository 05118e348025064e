#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "pauliprop/errors.hpp"
#include "pauliprop/io.hpp"
#include "pauliprop/models.hpp"
#include "test_support.hpp"

namespace pauliprop {
namespace {

TEST(CircuitJson, RoundTrip) {
  const Circuit c = local_entangler(5, 2);
  std::stringstream ss;
  io::write_circuit_json(ss, c);
  const Circuit back = io::read_circuit_json(ss);
  EXPECT_EQ(back.n_qubits, c.n_qubits);
  EXPECT_EQ(back.n_params, c.n_params);
  EXPECT_EQ(back.gates, c.gates);
}

std::string read_error(const std::string& text) {
  std::istringstream in(text);
  try {
    io::read_circuit_json(in);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(CircuitJson, ErrorsNameTheField) {
  EXPECT_NE(read_error(R"({"n_qubits": 2, "n_params": 1, "gates": [{"type": "rq", "qubit": 0, "param": 0}]})")
                .find("gates[0]"),
            std::string::npos);
  EXPECT_NE(read_error(R"({"n_params": 0, "gates": []})").find("n_qubits"), std::string::npos);
  EXPECT_NE(read_error(R"({"n_qubits": 2, "n_params": 1, "gates": [{"type": "rx", "qubit": 5, "param": 0}]})"),
            "");
  EXPECT_NE(read_error("not json"), "");
}

TEST(ObservableJsonl, RoundTripGolden) {
  TruncationConfig cfg;
  cfg.w_cut = 2;
  const PropagatedObservable po =
      propagate(IntegerObservable{{1, PauliWord::from_string("ZIII")}}, testing::golden_circuit(), cfg);
  std::stringstream ss;
  io::write_observable_jsonl(ss, po);
  const std::string text = ss.str();
  EXPECT_NE(text.find(R"("format":"pauliprop-observable")"), std::string::npos);
  EXPECT_NE(text.find(R"("w_cut":2)"), std::string::npos);
  EXPECT_NE(text.find(R"("nu_cut":null)"), std::string::npos);
  const PropagatedObservable back = io::read_observable_jsonl(ss);
  EXPECT_EQ(back, po);
  EXPECT_EQ(back.meta(), po.meta());
  EXPECT_EQ(back.n_params(), po.n_params());
  std::stringstream again;
  io::write_observable_jsonl(again, back);
  EXPECT_EQ(again.str(), text);
}

TEST(Observable, ParseLettersAndFile) {
  const IntegerObservable a = io::parse_observable("ZIXY");
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].coeff, 1);
  EXPECT_EQ(a[0].word.to_string(), "ZIXY");

  const auto path = std::filesystem::temp_directory_path() / "pauliprop_obs_test.txt";
  {
    std::ofstream f(path);
    f << "# sum of Z\n2 ZII\n-1 IZI\n\n1 IIZ\n";
  }
  const IntegerObservable b = io::parse_observable(path.string());
  std::filesystem::remove(path);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0].coeff, 2);
  EXPECT_EQ(b[1].coeff, -1);
  EXPECT_EQ(b[2].word.to_string(), "IIZ");

  EXPECT_THROW(io::parse_observable("ZQ"), ValidationError);
  std::istringstream mixed("1 ZZ\n1 ZZZ\n");
  EXPECT_THROW(io::parse_observable_lines(mixed), ValidationError);
}

TEST(ThetaCsv, HeaderAndRows) {
  std::istringstream in("t0,t1,t2\n0.1,0.2,0.3\n-1,2e-3,4\n");
  const auto rows = io::read_theta_csv(in);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1], (std::vector<double>{-1, 2e-3, 4}));
  std::istringstream ragged("0.1,0.2\n0.3\n");
  EXPECT_THROW(io::read_theta_csv(ragged), ValidationError);
}

TEST(FormatDouble, RoundTripsExactly) {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 123456789.125, 0.0}) {
    EXPECT_EQ(std::stod(io::format_double(v)), v);
  }
}

}  // namespace
}  // namespace pauliprop
