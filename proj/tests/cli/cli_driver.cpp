// Exercises the installed command-line surface end to end: exit-code
// partitioning, flag rejection, certificate round trips and cache
// transparency. argv[1] is the binary under test.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

std::string g_cli;
int g_failures = 0;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string out_path = "/tmp/idealtop_cli_driver_out.txt";
  std::string cmd = env + " " + g_cli + " " + args + " > " + out_path + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  std::ifstream f(out_path);
  std::stringstream ss;
  ss << f.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

void expect(bool cond, const std::string& what) {
  if (!cond) {
    std::printf("FAIL: %s\n", what.c_str());
    ++g_failures;
  } else {
    std::printf("ok: %s\n", what.c_str());
  }
}

std::string result_payload(const std::string& doc) {
  return json::parse(doc).at("result").dump();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_driver <cli-path>\n");
    return 2;
  }
  g_cli = argv[1];

  // exit codes partition the outcomes: 0 in, 1 out, 2 undecided, 3 usage
  expect(run("member --seq fact --point 3/7 --ideal fin").exit_code == 0,
         "member: In exits 0");
  expect(run("member --seq pow:2 --point 1/3 --ideal density").exit_code == 1,
         "member: Out exits 1");
  expect(run("member --seq pow:2 --point 0.3333~1e-9 --ideal density").exit_code == 2,
         "member: numeric points exit 2");
  expect(run("member --seq \"interleave(plant(fact,pow:2,squares),fact)\" --point 1/3 "
             "--ideal density")
                 .exit_code == 2,
         "member: horizon-limited inputs exit 2");
  expect(run("member --seq pow:2 --point 1/3 --ideal density --bogus-flag").exit_code == 3,
         "unknown flags are rejected with exit 3");
  expect(run("member --point 1/3 --ideal density").exit_code == 3,
         "missing required flags exit 3");
  expect(run("member --seq \"pow:\" --point 1/3 --ideal density").exit_code == 3,
         "grammar errors exit 3");
  expect(run("frobnicate").exit_code == 3, "unknown verbs exit 3");

  expect(run("tb-scan --seq poly:1 --ideal fin --qmax 10").exit_code == 1,
         "tb-scan without evidence exits 1");
  expect(run("tb-scan --seq fact --ideal fin --qmax 10").exit_code == 0,
         "tb-scan with evidence exits 0");
  expect(run("cover --seq pow:2 --g 6 --m 4").exit_code == 0, "covered element exits 0");
  expect(run("cover --seq pow:2 --g 21 --m 2 --horizon 10").exit_code == 1,
         "uncovered element exits 1");
  expect(run("exh --descriptor squares").exit_code == 0, "exh In exits 0");
  expect(run("exh --descriptor period:/10").exit_code == 1, "exh Out exits 1");

  // emitted certificates are accepted by verify-cert; tampering flips the code
  std::string cert = "/tmp/idealtop_cli_driver_cert.json";
  std::string seq = "\"interleave(fact,affine(fact,1,1))\"";
  expect(run("refute-t --seq " + seq + " --kmax 2 --m 12 --cert " + cert).exit_code == 0,
         "refute-t emits a certificate");
  expect(run("verify-cert --seq " + seq + " --cert " + cert).exit_code == 0,
         "verify-cert accepts the emitted certificate");
  expect(run("refute-t --seq pow:2 --kmax 2 --m 12").exit_code == 1,
         "refute-t without a persistent element exits 1");
  {
    std::ifstream in(cert);
    json doc = json::parse(in);
    doc["witnesses"][3]["terms"][0]["sign"] = -doc["witnesses"][3]["terms"][0]["sign"]
                                                   .get<int>();
    std::ofstream out(cert);
    out << doc.dump();
  }
  expect(run("verify-cert --seq " + seq + " --cert " + cert).exit_code == 1,
         "verify-cert rejects a tampered certificate");

  // cache transparency: identical payloads with the cache hot, cold and off
  std::string cache_dir = "/tmp/idealtop_cli_driver_cache";
  std::filesystem::remove_all(cache_dir);
  std::string env = "IDEALTOP_CACHE_DIR=" + cache_dir;
  std::string member_args = "member --seq \"interleave(pow:2,fact)\" --point 3/14 --ideal fin";
  RunResult cold = run(member_args, env);
  RunResult warm = run(member_args, env);
  RunResult off = run(member_args + " --no-cache", env);
  expect(std::filesystem::exists(cache_dir), "cache directory is populated");
  expect(result_payload(cold.out) == result_payload(warm.out),
         "hot and cold cache payloads are byte-identical");
  expect(result_payload(cold.out) == result_payload(off.out),
         "--no-cache payload is byte-identical");
  std::filesystem::remove_all(cache_dir);

  // run-record envelope fields
  json rec = json::parse(run("density --descriptor squares").out);
  expect(rec.at("schema_version") == 1 && rec.contains("wall_ms") && rec.contains("params") &&
             rec.at("tool").at("name") == "idealtop",
         "run records carry version, params and wall time");

  if (g_failures) {
    std::printf("%d cli check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all cli checks passed\n");
  return 0;
}
