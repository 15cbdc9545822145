#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Run the built binary, capturing stdout; stderr goes to a scratch file so
// the data stream can be checked in isolation.
RunResult run_tool(const std::string& args, const std::string& env = "") {
  const fs::path dir = fs::temp_directory_path() / "lcptool-test";
  fs::create_directories(dir);
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = (env.empty() ? "" : env + " ") +
                          std::string(LCPTOOL_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "lcptool-test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream f(p, std::ios::trunc);
  f << content;
  return p;
}

const std::string kMJson = R"({"n": 2, "m": [[1,2],[2,1]]})";
const std::string kKJson = R"({"m": [[1,1],[-1,1]]})";
const std::string kLJson = R"({"m": [[-0.5,-1],[-1,0.5]]})";
const std::string kNJson = R"({"m": [[-1,1],[1.1,-1]]})";
const std::string kOJson = R"({"m": [[0.5,1],[1,0.5]]})";

}  // namespace

TEST_CASE("solve: three solutions, exit 0") {
  const auto m = write_file("m.json", kMJson);
  const auto r = run_tool("solve -m " + m.string() + " --q \"-2,-2\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"isolated\"") != std::string::npos);
  // Three solution objects with witnesses.
  std::size_t count = 0, pos = 0;
  while ((pos = r.output.find("\"witnesses\"", pos)) != std::string::npos) {
    ++count;
    pos += 1;
  }
  CHECK(count == 3);
}

TEST_CASE("solve: positive q, single trivial solution") {
  const auto k = write_file("k.json", kKJson);
  const auto r = run_tool("solve -m " + k.string() + " --q \"5,7\"");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  REQUIRE(j["isolated"].size() == 1);
  CHECK(j["isolated"][0]["z"] == nlohmann::json::array({0.0, 0.0}));
  CHECK(j["isolated"][0]["w"] == nlohmann::json::array({5.0, 7.0}));
  CHECK(j["isolated"][0]["regularity"] == "regular");
}

TEST_CASE("solve: empty sector exits 2") {
  const auto l = write_file("l.json", kLJson);
  // q deep in the uncovered sector of L (between 90 and 333 degrees).
  const auto r = run_tool("solve -m " + l.string() + " --q \"-5,1\"");
  CHECK(r.exit_code == 2);
}

TEST_CASE("solve: malformed input exits 1 and keeps the data stream clean") {
  const auto bad = write_file("bad.json", R"({"m": [[1,2],[2]]})");
  const auto r1 = run_tool("solve -m " + bad.string() + " --q \"1,1\"");
  CHECK(r1.exit_code == 1);
  CHECK(r1.output.empty());  // diagnostics go to stderr only
  const auto m = write_file("m.json", kMJson);
  CHECK(run_tool("solve -m " + m.string() + " --q \"1,x\"").exit_code == 1);
  CHECK(run_tool("solve -m " + m.string()).exit_code == 1);  // no q anywhere
  CHECK(run_tool("solve -m /nonexistent.json --q \"1,1\"").exit_code == 1);
}

TEST_CASE("trace: case-a extents and deterministic bytes") {
  const auto m = write_file("m.json", kMJson);
  const fs::path dir = fs::temp_directory_path() / "lcptool-test";
  const auto csv1 = (dir / "case_a1.csv").string();
  const auto csv2 = (dir / "case_a2.csv").string();
  const std::string args = "trace -m " + m.string() +
                           " --path \"(-4,0);(0,-4)\" --samples 401 --out ";
  CHECK(run_tool(args + csv1).exit_code == 0);
  CHECK(run_tool(args + csv2).exit_code == 0);

  std::ifstream f1(csv1), f2(csv2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  REQUIRE(!s1.str().empty());
  CHECK(s1.str() == s2.str());

  // Per-branch lambda extents from the branch column.
  std::ifstream f(csv1);
  std::string line;
  std::getline(f, line);
  CHECK(line == "branch,l,x1,x2,z1,z2");
  std::map<int, std::pair<double, double>> extent;
  while (std::getline(f, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const int branch = std::stoi(line.substr(0, c1));
    const double l = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    auto it = extent.find(branch);
    if (it == extent.end()) extent[branch] = {l, l};
    else {
      it->second.first = std::min(it->second.first, l);
      it->second.second = std::max(it->second.second, l);
    }
  }
  REQUIRE(extent.size() == 3);
  std::vector<std::pair<double, double>> spans;
  for (const auto& [id, span] : extent) spans.push_back(span);
  std::sort(spans.begin(), spans.end());
  CHECK(spans[0].first == doctest::Approx(0.0));
  CHECK(spans[0].second == doctest::Approx(2.0 / 3));
  CHECK(spans[1].first == doctest::Approx(1.0 / 3));
  CHECK(spans[1].second == doctest::Approx(2.0 / 3));
  CHECK(spans[2].first == doctest::Approx(1.0 / 3));
  CHECK(spans[2].second == doctest::Approx(1.0));
}

TEST_CASE("trace: split mode writes one file per branch") {
  const auto m = write_file("m.json", kMJson);
  const fs::path dir = fs::temp_directory_path() / "lcptool-test";
  const auto stem = (dir / "split.csv").string();
  CHECK(run_tool("trace -m " + m.string() +
                 " --path \"(-4,0);(0,-4)\" --samples 11 --split --out " + stem)
            .exit_code == 0);
  int found = 0;
  for (int k = 1; k <= 3; ++k) {
    std::ifstream f(dir / ("split_" + std::to_string(k) + ".csv"));
    if (!f) continue;
    std::string header;
    std::getline(f, header);
    CHECK(header == "l,x1,x2,z1,z2");
    ++found;
  }
  CHECK(found == 3);
}

TEST_CASE("equiv: verdicts and exit codes") {
  const auto n = write_file("n.json", kNJson);
  const auto o = write_file("o.json", kOJson);
  const auto m = write_file("m2.json", R"({"m": [[-1,1],[0.9,-1]]})");
  const auto deg = write_file("deg.json", R"({"m": [[1,1],[1,1]]})");

  const auto eq = run_tool("equiv --a " + n.string() + " --b " + o.string());
  CHECK(eq.exit_code == 0);
  CHECK(eq.output.find("\"equivalent\"") != std::string::npos);
  CHECK(eq.output.find("\"signature\"") != std::string::npos);

  const auto ne = run_tool("equiv --a " + m.string() + " --b " + n.string());
  CHECK(ne.exit_code == 0);
  CHECK(ne.output.find("not-equivalent") != std::string::npos);

  const auto unk = run_tool("equiv --a " + deg.string() + " --b " + deg.string());
  CHECK(unk.exit_code == 3);
}

TEST_CASE("classify") {
  const auto k = write_file("k.json", kKJson);
  const auto r = run_tool("classify -m " + k.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"P\"") != std::string::npos);
  CHECK(r.output.find("\"stable\"") != std::string::npos);
}

TEST_CASE("normal-forms lists 52 entries") {
  const auto r = run_tool("normal-forms");
  CHECK(r.exit_code == 0);
  std::size_t count = 0, pos = 0;
  while ((pos = r.output.find("\"label\"", pos)) != std::string::npos) {
    ++count;
    pos += 1;
  }
  CHECK(count == 52);
}

TEST_CASE("interconnect assembles and solves at a lambda") {
  const auto spec = write_file("spec.json", R"({
    "m_a": [[1]], "m_b": [[1,2],[2,1]],
    "h_a": [[0,0]], "h_b": [[-0.94],[-0.34]],
    "theta_a": {"const": [1], "slope": [-2]},
    "theta_b": {"const": [0.17, -0.47], "slope": [0.34, -0.94]}
  })");
  const auto r = run_tool("interconnect --spec " + spec.string() + " --at 0.25");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"q_slope\"") != std::string::npos);
  CHECK(r.output.find("\"solutions\"") != std::string::npos);
}

TEST_CASE("surface emits the y1,y2,x1 table") {
  const auto m = write_file("m.json", kMJson);
  const auto r = run_tool("surface -m " + m.string() + " --grid \"-1,1,1\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output.substr(0, 9) == "y1,y2,x1\n");
}

TEST_CASE("pleat traces with defaulted mu") {
  const auto r = run_tool("pleat --lambda-range \"0.25,0.75\" --samples 11");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("branch,l,x1,x2,x3,z1,z2,z3") != std::string::npos);
}

TEST_CASE("tolerance overrides are honored") {
  const auto k = write_file("k.json", kKJson);
  const auto strict = run_tool("classify -m " + k.string());
  CHECK(strict.output.find("\"stable\"") != std::string::npos);
  // A coarse tolerance (0.6 * scale 2 = 1.2) turns the unit minors into
  // numerical zeros.
  const auto loose = run_tool("--tol 0.6 classify -m " + k.string());
  CHECK(loose.output.find("\"unstable\"") != std::string::npos);
  const auto env = run_tool("classify -m " + k.string(), "LCP_TOL=0.6");
  CHECK(env.output.find("\"unstable\"") != std::string::npos);
}
