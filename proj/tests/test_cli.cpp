#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli_commands.hpp"
#include "json.hpp"

using nlohmann::json;

TEST(cli, exit_codes_and_byte_identical_reruns) {
  for (const auto& c : cli_cases::all()) {
    const auto first = cli_cases::run(c.args);
    EXPECT_EQ(first.exit_code, c.exit_code) << c.args;
    for (int rep = 0; rep < 2; ++rep) {
      const auto again = cli_cases::run(c.args);
      EXPECT_EQ(again.exit_code, first.exit_code) << c.args;
      EXPECT_EQ(again.out, first.out) << c.args;
    }
  }
}

TEST(cli, reports_carry_the_expected_values) {
  const std::string s = ENTNET_SAMPLES_DIR;
  auto parse = [](const std::string& args) { return json::parse(cli_cases::run(args).out); };
  EXPECT_EQ(parse("protocol two --input " + s + "/star5.json")["cbits"], 10);
  EXPECT_EQ(parse("protocol one")["cbits"], 2);
  const auto w = parse("locc --source " + s + "/ghz3.json --target " + s + "/two_epr3.json");
  EXPECT_EQ(w["witness"]["count_source"], 1);
  EXPECT_EQ(w["witness"]["count_target"], 2);
  EXPECT_EQ(w["verified"], true);
  EXPECT_TRUE(parse("locc --source " + s + "/star4.json --target " + s + "/star4.json")["witness"].is_null());
  EXPECT_EQ(parse("locc --source " + s + "/path4.json --target " + s + "/star4.json")["impossible"], true);
  EXPECT_EQ(parse("locc --source " + s + "/star4.json --target " + s + "/path4.json")["impossible"], true);
  EXPECT_EQ(parse("qkd classical --n 5 --rounds 20")["unanimous"], true);
  EXPECT_EQ(parse("qkd pipeline --input " + s + "/path5.json --p 0.4 --rounds 3")["aborted"], 3);
  EXPECT_EQ(parse("qkd hypergraph --input " + s + "/security10.json")["reduced"]["survivors"], json::parse("[2,3,6]"));
  const auto plan = parse("qss compress --input " + s + "/access_abc_de.json")["plan"];
  EXPECT_EQ(plan["q_players"], json::parse(R"(["A","D"])"));
  EXPECT_EQ(plan["resident_shares"], 1);
  EXPECT_EQ(plan["valid"], true);
  EXPECT_EQ(parse("qss assist --k 2 --n 10")["assisted"], "((9,17))");
  EXPECT_EQ(parse("qss simulate --input " + s + "/twin_scheme1.json")["simulation"]["ok"], true);
}

TEST(cli, seed_sources) {
  const std::string s = ENTNET_SAMPLES_DIR;
  const std::string args = "qkd classical --n 6 --rounds 5";
  const auto a = cli_cases::run(args + " --seed 42").out;
  EXPECT_NE(a, cli_cases::run(args + " --seed 43").out);
  ASSERT_EQ(setenv("ENTNET_SEED", "42", 1), 0);
  EXPECT_EQ(cli_cases::run(args).out, a);
  EXPECT_NE(cli_cases::run(args + " --seed 1").out, a);
  ASSERT_EQ(setenv("ENTNET_SEED", "nope", 1), 0);
  EXPECT_EQ(cli_cases::run(args).exit_code, 1);
  unsetenv("ENTNET_SEED");
}

TEST(cli, output_file_matches_stdout) {
  const std::string s = ENTNET_SAMPLES_DIR;
  const std::string path = testing::TempDir() + "entnet_out.json";
  const std::string args = "qss compress --input " + s + "/access_abc_de.json";
  ASSERT_EQ(cli_cases::run(args + " --output " + path).exit_code, 0);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), cli_cases::run(args).out);
}
