#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "pconf/factlang.hpp"
#include "pconf/oracle.hpp"
#include "pconf/solver.hpp"
#include "support/generators.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with `args`; stdout is captured, stderr discarded.
Run pconf_cli(const std::string& args) {
  const std::string cmd = "timeout 60 " + std::string(PCONF_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

int listening_socket() {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  REQUIRE(fd >= 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  REQUIRE(::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
  REQUIRE(::listen(fd, 1) == 0);
  return fd;
}

int port_of(int fd) {
  sockaddr_in addr{};
  socklen_t len = sizeof addr;
  REQUIRE(::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) == 0);
  return ntohs(addr.sin_port);
}

std::string data(const std::string& name) { return std::string(PCONF_DATA_DIR) + "/" + name; }

class TempDir {
public:
  TempDir() : path_(fs::temp_directory_path() / ("pconf_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name) << content;
    return (path_ / name).string();
  }
  std::string path() const { return path_.string(); }

private:
  fs::path path_;
};

std::vector<std::string> blocks(const std::string& out) {
  std::vector<std::string> result{""};
  std::size_t start = 0;
  while (start < out.size()) {
    const auto end = out.find('\n', start);
    const std::string line = out.substr(start, end - start);
    if (line == "----") {
      result.emplace_back();
    } else {
      result.back() += line + "\n";
    }
    start = end == std::string::npos ? out.size() : end + 1;
  }
  return result;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve") {
  TempDir tmp;
  const auto bike = data("bike.lp");
  const auto first = pconf_cli("solve " + bike + " --max-models 1");
  CHECK(first.code == 0);
  CHECK(first.out.find("assign(bike,type,city).\n") != std::string::npos);

  const auto empty = tmp.write("empty.lp", "");
  const auto e = pconf_cli("solve " + empty + " --all");
  CHECK(e.code == 0);
  CHECK(e.out.empty());

  const auto unsat = pconf_cli("solve " + bike + " --require rear_wheel.size=28");
  CHECK(unsat.code == 1);
  CHECK(unsat.out.empty());

  const auto json = pconf_cli("solve " + bike + " --format json");
  CHECK(json.code == 0);
  CHECK(nlohmann::json::parse(json.out).at("status") == "SAT");

  CHECK(pconf_cli("solve " + bike + " --require Bad").code == 2);
  CHECK(pconf_cli("solve " + bike + " --require unicorn").code == 2);
  CHECK(pconf_cli("solve " + bike + " --format xml").code == 2);
  CHECK(pconf_cli("solve").code == 2);
  CHECK(pconf_cli("").code == 2);
}

TEST_CASE("solve --all round-trips through the fact format") {
  TempDir tmp;
  pconf::testing::Rng rng(51);
  for (int i = 0; i < 10; ++i) {
    const auto fb = pconf::testing::random_instance(rng);
    const auto path = tmp.write("inst.lp", pconf::serialize(fb));
    const auto r = pconf_cli("solve " + path + " --all");
    const auto problem = *pconf::ground(fb).problem;
    pconf::SolveOptions o;
    o.max_models = 0;
    const auto expected = pconf::solve(problem, o);
    CHECK(r.code == (expected.solutions.empty() ? 1 : 0));
    if (expected.solutions.empty()) continue;
    std::set<std::set<pconf::Triple>> parsed;
    for (const auto& b : blocks(r.out)) {
      auto s = pconf::parse_solution(b);
      REQUIRE(s.ok());
      parsed.insert(*s.value);
    }
    std::set<std::set<pconf::Triple>> lib;
    for (const auto& s : expected.solutions) lib.insert(s.assignments);
    CHECK(parsed == lib);
  }
}

TEST_CASE("check") {
  TempDir tmp;
  const auto bike = data("bike.lp");
  const auto ok = pconf_cli("check " + bike + " " + data("bike_solution.lp"));
  CHECK(ok.code == 0);
  CHECK(ok.out == "OK\n");

  const auto empty = pconf_cli("check " + bike + " " + tmp.write("empty.lp", ""));
  CHECK(empty.code == 1);
  CHECK(empty.out.find("U1: user requires bike") != std::string::npos);
  CHECK(empty.out.find("U1: user requires basket") != std::string::npos);

  CHECK(pconf_cli("check " + bike + " " + tmp.path() + "/missing.lp").code == 2);
  CHECK(pconf_cli("check " + tmp.path() + "/missing.lp " + data("bike_solution.lp")).code == 2);
  CHECK(pconf_cli("check " + bike + " " + tmp.write("bad.lp", "assign(a,b).")).code == 3);
}

TEST_CASE("ground") {
  TempDir tmp;
  const auto r = pconf_cli("ground " + data("bike.lp"));
  CHECK(r.code == 0);
  CHECK(r.out.find("domain|frame|material|aluminum\n") != std::string::npos);

  const auto empty = pconf_cli("ground " + tmp.write("empty.lp", ""));
  CHECK(empty.code == 0);
  CHECK(empty.out.empty());

  const auto cyclic = tmp.write("cycle.lp", "domain(a,type,t). domain(b,type,t). partof(a,b,optional). partof(b,a,optional).");
  CHECK(pconf_cli("ground " + cyclic).code == 3);
  CHECK(pconf_cli("ground " + tmp.write("bad.lp", "domain(x.")).code == 3);
  CHECK(pconf_cli("ground " + tmp.write("unknown.lp", "colour(a).")).code == 3);
  CHECK(pconf_cli("--lenient ground " + tmp.write("unknown2.lp", "colour(a).")).code == 0);
  const auto impossible = tmp.write("mand.lp", "domain(a,type,t). mandatory_property(a,color).");
  CHECK(pconf_cli("ground " + impossible).code == 3);
  CHECK(pconf_cli("--no-strict-mandatory ground " + impossible).code == 0);
}

TEST_CASE("oracle") {
  TempDir tmp;
  const auto r = pconf_cli("oracle " + data("bike.lp"));
  CHECK(r.code == 0);
  CHECK(r.out == pconf_cli("solve " + data("bike.lp") + " --all").out);
  CHECK(pconf_cli("oracle " + data("bike.lp") + " --require rear_wheel.size=28").code == 1);

  std::string big;
  for (int i = 0; i < 20; ++i) big += "domain(c" + std::to_string(i) + ",type,t1). domain(c" + std::to_string(i) + ",type,t2).\n";
  CHECK(pconf_cli("oracle " + tmp.write("big.lp", big)).code == 4);
}

TEST_CASE("whatif") {
  const auto r = pconf_cli("whatif " + data("bike.lp") + " --component front_wheel --property type");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("values") == nlohmann::json::array({"w2"}));
  CHECK(pconf_cli("whatif " + data("bike.lp") + " --component bike --property color").code == 2);
}

TEST_CASE("budget exceeded") {
  TempDir tmp;
  std::string src;
  for (int i = 0; i < 30; ++i) src += "domain(c" + std::to_string(i) + ",type,t).\n";
  CHECK(pconf_cli("solve " + tmp.write("wide.lp", src) + " --all --node-budget 100").code == 4);
}

TEST_CASE("serve") {
  TempDir tmp;
  // occupy a port, then ask the CLI to bind it
  const int blocker = listening_socket();
  CHECK(pconf_cli("serve --port " + std::to_string(port_of(blocker))).code == 2);
  ::close(blocker);
  CHECK(pconf_cli("serve --port 0 --static " + tmp.path() + "/nowhere").code == 2);

  // find a free port, release it and start the CLI there
  const int probe = listening_socket();
  const int port = port_of(probe);
  ::close(probe);
  const std::string www = tmp.path() + "/www";
  fs::create_directories(www);
  std::ofstream(www + "/index.html") << "<html>ui</html>";
  const std::string pidfile = tmp.path() + "/pid";
  const std::string cmd = std::string(PCONF_CLI) + " serve --port " + std::to_string(port) + " --static " + www +
                          " >/dev/null 2>&1 & echo $! > " + pidfile;
  REQUIRE(std::system(cmd.c_str()) == 0);

  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(1);
  client.set_read_timeout(5);
  httplib::Result missing;
  for (int i = 0; i < 100 && !missing; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    missing = client.Get("/api/instances/unknown");
  }
  REQUIRE(missing);
  CHECK(missing->status == 404);
  auto page = client.Get("/index.html");
  REQUIRE(page);
  CHECK(page->status == 200);
  CHECK(page->body == "<html>ui</html>");

  std::ifstream pid_in(pidfile);
  long pid = 0;
  pid_in >> pid;
  REQUIRE(pid > 0);
  CHECK(std::system(("kill " + std::to_string(pid)).c_str()) == 0);
}

}  // TEST_SUITE
