#include "cablemass/config.hpp"

#include <fstream>

#include <gtest/gtest.h>

#include "cablemass/csv.hpp"
#include "cablemass/error.hpp"

namespace cablemass {
namespace {

TEST(ParseConfig, EmptyTextGivesDefaults) {
  const ExperimentConfig cfg = parse_config("");
  EXPECT_EQ(cfg.n, 100);
  EXPECT_EQ(cfg.r, 4);
  EXPECT_EQ(cfg.input.kind, InputKind::kSine1);
  EXPECT_EQ(cfg.params.l, 1.0);
  EXPECT_EQ(cfg.params.m0, 1.0);
  EXPECT_EQ(cfg.params.ml, 1.5);
  EXPECT_EQ(cfg.params.k3, 1.0);
  EXPECT_EQ(cfg.params.beta, 1.0);
}

TEST(ParseConfig, PresetAliasSetsCaptionParameters) {
  const ExperimentConfig cfg = parse_config("preset = \"example1_input2_smalldamp\"\n");
  EXPECT_EQ(cfg.preset, "small_damp_ex1_in2");
  EXPECT_EQ(cfg.params.gamma, 0.001);
  EXPECT_EQ(cfg.params.alphal, 0.1);
  EXPECT_EQ(cfg.params.k0, 0.1);
  EXPECT_EQ(cfg.params.kl, 0.1);
  EXPECT_EQ(cfg.params.alpha0, 0.0);
  EXPECT_EQ(cfg.params.alpha, 0.0);
  EXPECT_EQ(cfg.input.kind, InputKind::kEigCos2);
}

TEST(ParseConfig, SectionsCommentsAndOverrides) {
  const ExperimentConfig cfg = parse_config(
      "# comment\n"
      "[run]\n"
      "r = 8          # trailing comment\n"
      "n = 40\n"
      "preset = small_damp_ex5_in4\n"
      "[params]\n"
      "k3 = 0\n"
      "[input]\n"
      "scale = 0.5\n"
      "input2_mode = imag\n");
  // The preset is applied before the other keys regardless of position.
  EXPECT_EQ(cfg.r, 8);
  EXPECT_EQ(cfg.n, 40);
  EXPECT_EQ(cfg.params.k3, 0.0);
  EXPECT_EQ(cfg.params.gamma, 0.001);
  EXPECT_EQ(cfg.input.kind, InputKind::kSquare4);
  EXPECT_EQ(cfg.input.scale, 0.5);
  EXPECT_EQ(cfg.input2_mode, Input2Mode::kImag);
}

TEST(ParseConfig, NegativeMassNamesField) {
  try {
    parse_config("[params]\nm0 = -1\n");
    FAIL() << "expected ValidationError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationError);
    EXPECT_NE(std::string(e.what()).find("m0"), std::string::npos);
  }
}

TEST(ParseConfig, ParseErrorCarriesLine) {
  try {
    parse_config("[run]\nn = 10\nr = four\n");
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  try {
    parse_config("[run]\nthis line has no equals\n");
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ParseConfig, UnknownKeyAndSection) {
  EXPECT_THROW(parse_config("[run]\nbogus = 1\n"), Error);
  EXPECT_THROW(parse_config("[nowhere]\n"), Error);
  EXPECT_THROW(parse_config("preset = not_a_preset\n"), Error);
}

TEST(ParseConfig, OrderAboveStateDimensionRejected) {
  try {
    parse_config("[run]\nn = 5\nr = 11\n");
    FAIL() << "expected ValidationError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationError);
    EXPECT_NE(std::string(e.what()).find("r "), std::string::npos);
  }
}

TEST(LoadConfig, ReadsFileAndReportsMissing) {
  const auto path = std::filesystem::temp_directory_path() / "cablemass_cfg_test.ini";
  {
    std::ofstream out(path);
    out << "[run]\ntf = 12.5\n";
  }
  EXPECT_EQ(load_config(path).tf, 12.5);
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(path), Error);
}

TEST(Presets, CatalogCoversEveryFigure) {
  const std::vector<std::string> expected = {
      "exp_stab_Ex1",        "exp_stability2",     "small_damp_ex1_in2",
      "small_damp_ex5_in4",  "small_stiff_ex2_in1", "small_stiff_ex1_in4",
      "small_stiff_ex5_in4", "small_all_ex3_in2",  "small_all_ex3_in4"};
  EXPECT_EQ(preset_names(), expected);
  for (const auto& name : expected) EXPECT_NO_THROW(preset_config(name).validate());
}

TEST(Presets, CaptionValues) {
  const ExperimentConfig stiff = preset_config("small_stiff_ex5_in4");
  EXPECT_EQ(stiff.params.gamma, 0.1);
  EXPECT_EQ(stiff.params.alpha, 0.0);
  EXPECT_EQ(stiff.params.alpha0, 0.0);
  EXPECT_EQ(stiff.params.alphal, 0.0);
  EXPECT_EQ(stiff.params.k0, 0.001);
  EXPECT_EQ(stiff.tf, 300.0);
  const ExperimentConfig hyp = preset_config("exp_stability2");
  EXPECT_EQ(hyp.params.gamma, 0.0);
  EXPECT_EQ(hyp.params.alpha, 0.01);
  EXPECT_EQ(hyp.params.kl, 0.01);
  EXPECT_TRUE(hyp.energy);
}

TEST(Csv, RoundTripIsLossless) {
  Eigen::MatrixXd rows(2, 3);
  rows << 0.1, 1.0 / 3.0, -2.5e-300, 1e17, -0.0, 123456789.123456789;
  const auto path = std::filesystem::temp_directory_path() / "cablemass_csv_test.csv";
  write_csv(path, {"a", "b", "c"}, rows);
  const CsvTable t = read_csv(path);
  std::filesystem::remove(path);
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b", "c"}));
  ASSERT_EQ(t.rows.rows(), 2);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) EXPECT_EQ(t.rows(i, j), rows(i, j));
  }
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

}  // namespace
}  // namespace cablemass
