#include <doctest.h>

#include <cstring>
#include <string>

#include "idealtop.h"

namespace {

struct Cleanup {
  idealtop_seq* seq = nullptr;
  idealtop_descriptor* desc = nullptr;
  idealtop_ideal* ideal = nullptr;
  ~Cleanup() {
    idealtop_seq_free(seq);
    idealtop_descriptor_free(desc);
    idealtop_ideal_free(ideal);
  }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  idealtop_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("parse failures report positions through the error channel") {
  idealtop_seq* seq = nullptr;
  CHECK(idealtop_seq_parse("pow:", &seq) == IDEALTOP_ERR_PARSE);
  CHECK(std::strstr(idealtop_last_error(), "offset 4") != nullptr);
  idealtop_descriptor* d = nullptr;
  CHECK(idealtop_descriptor_parse("geom:1", &d) == IDEALTOP_ERR_PARSE);
  idealtop_ideal* i = nullptr;
  CHECK(idealtop_ideal_parse("nope", &i) == IDEALTOP_ERR_PARSE);
}

TEST_CASE("member verdicts through the C surface") {
  Cleanup c;
  REQUIRE(idealtop_seq_parse("pow:2", &c.seq) == IDEALTOP_OK);
  REQUIRE(idealtop_ideal_parse("density", &c.ideal) == IDEALTOP_OK);
  idealtop_params p;
  idealtop_params_init(&p);
  idealtop_verdict v = IDEALTOP_VERDICT_UNDECIDED;
  char* json = nullptr;
  REQUIRE(idealtop_member(c.seq, "1/3", c.ideal, &p, &v, &json) == IDEALTOP_OK);
  CHECK(v == IDEALTOP_VERDICT_OUT);
  std::string doc = take(json);
  CHECK(doc.find("\"schema_version\": 1") != std::string::npos);
  CHECK(doc.find("out-witness") != std::string::npos);
}

TEST_CASE("refutation certificates round trip through the C surface") {
  Cleanup c;
  REQUIRE(idealtop_seq_parse("interleave(fact,affine(fact,1,1))", &c.seq) == IDEALTOP_OK);
  idealtop_params p;
  idealtop_params_init(&p);
  p.kmax = 2;
  p.m = 12;
  int found = 0;
  char* cert = nullptr;
  REQUIRE(idealtop_refute_t(c.seq, &p, &found, &cert) == IDEALTOP_OK);
  CHECK(found == 1);
  std::string cert_doc = take(cert);
  int valid = 0;
  REQUIRE(idealtop_verify_cert(c.seq, cert_doc.c_str(), &valid) == IDEALTOP_OK);
  CHECK(valid == 1);

  // a tampered document must be rejected, not crash
  std::string bad = cert_doc;
  auto pos = bad.find("\"g\": \"1\"");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos, 8, "\"g\": \"3\"");
  valid = 1;
  REQUIRE(idealtop_verify_cert(c.seq, bad.c_str(), &valid) == IDEALTOP_OK);
  CHECK(valid == 0);
}

TEST_CASE("density and exhaustive queries") {
  Cleanup c;
  REQUIRE(idealtop_descriptor_parse("union(squares,period:/10)", &c.desc) == IDEALTOP_OK);
  char* json = nullptr;
  REQUIRE(idealtop_density(c.desc, &json) == IDEALTOP_OK);
  std::string doc = take(json);
  CHECK(doc.find("\"1/2\"") != std::string::npos);

  idealtop_params p;
  idealtop_params_init(&p);
  idealtop_verdict v = IDEALTOP_VERDICT_IN;
  REQUIRE(idealtop_exh("density", c.desc, &p, &v, nullptr) == IDEALTOP_OK);
  CHECK(v == IDEALTOP_VERDICT_OUT);
}

TEST_CASE("cover reports not-covered as a value") {
  Cleanup c;
  REQUIRE(idealtop_seq_parse("pow:2", &c.seq) == IDEALTOP_OK);
  idealtop_params p;
  idealtop_params_init(&p);
  p.m = 2;
  p.horizon = 10;
  int64_t m = -2;
  REQUIRE(idealtop_cover(c.seq, "6", nullptr, &p, &m, nullptr) == IDEALTOP_OK);
  CHECK(m == 2);
  REQUIRE(idealtop_cover(c.seq, "21", nullptr, &p, &m, nullptr) == IDEALTOP_OK);
  CHECK(m == -1);  // needs three terms, bound is two
}

TEST_CASE("extraction errors map to distinct status codes") {
  Cleanup c;
  REQUIRE(idealtop_seq_parse("pow:2", &c.seq) == IDEALTOP_OK);
  idealtop_params p;
  idealtop_params_init(&p);
  char* json = nullptr;
  CHECK(idealtop_extract(c.seq, "1/3", &p, &json) == IDEALTOP_ERR_NO_EXTRACT);
}

TEST_CASE("version and params defaults") {
  CHECK(std::string(idealtop_version()) == "0.1.0");
  idealtop_params p;
  idealtop_params_init(&p);
  CHECK(p.kmax == 8);
  CHECK(p.budget == 10'000'000);
  CHECK(p.no_cache == 0);
}
