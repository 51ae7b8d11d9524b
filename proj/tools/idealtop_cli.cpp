// Command-line front end. Talks to the core exclusively through the C API of
// the shared library; output formatting and the run record live here.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "idealtop.h"

using json = nlohmann::json;

namespace {

constexpr int kExitIn = 0;         // In / true / found
constexpr int kExitOut = 1;        // Out / false / none found
constexpr int kExitUndecided = 2;  // Undecided / horizon-limited
constexpr int kExitUsage = 3;

struct Options {
  std::vector<std::string> seqs;
  std::string point, ideal = "fin", descriptor, orders, cert_path, submeasure = "density";
  std::vector<std::string> chain;
  std::string g;
  std::string out_format = "json";
  idealtop_params params{};
  bool no_cache = false;
};

int exit_of_verdict(idealtop_verdict v) {
  switch (v) {
    case IDEALTOP_VERDICT_IN: return kExitIn;
    case IDEALTOP_VERDICT_OUT: return kExitOut;
    default: return kExitUndecided;
  }
}

int exit_of_status(idealtop_status st) {
  if (st == IDEALTOP_ERR_CYCLE || st == IDEALTOP_ERR_HORIZON) return kExitUndecided;
  return kExitUsage;
}

void fail(idealtop_status st) {
  std::cerr << "idealtop: error: " << idealtop_last_error() << "\n";
  std::exit(exit_of_status(st));
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* h = nullptr;
  Handle() = default;
  Handle(Handle&& o) noexcept : h(o.h) { o.h = nullptr; }
  Handle& operator=(Handle&& o) noexcept {
    std::swap(h, o.h);
    return *this;
  }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(h); }
};
using SeqHandle = Handle<idealtop_seq, idealtop_seq_free>;
using DescHandle = Handle<idealtop_descriptor, idealtop_descriptor_free>;
using IdealHandle = Handle<idealtop_ideal, idealtop_ideal_free>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  idealtop_string_free(s);
  return out;
}

json params_json(const idealtop_params& p) {
  return json{{"kmax", p.kmax},     {"m", p.m},       {"horizon", p.horizon},
              {"window", p.window}, {"qmax", p.qmax}, {"nmax", p.nmax},
              {"budget", p.budget}, {"no_cache", p.no_cache != 0}};
}

// Run record envelope: command echo, version, parameters, wall time, payload.
void emit(const Options& opt, const std::string& verb, const json& payload, double wall_ms) {
  if (opt.out_format == "json") {
    json rec{{"schema_version", 1},
             {"tool", {{"name", "idealtop"}, {"version", idealtop_version()}}},
             {"command", verb},
             {"params", params_json(opt.params)},
             {"wall_ms", wall_ms},
             {"result", payload.contains("result") ? payload.at("result") : payload}};
    std::cout << rec.dump(2) << "\n";
    return;
  }
  const json& result = payload.contains("result") ? payload.at("result") : payload;
  if (opt.out_format == "csv") {
    if (result.contains("rows")) {
      std::cout << "point,verdict,certificate_kind,witness_k\n";
      for (const auto& row : result.at("rows"))
        std::cout << row.value("point", "") << "," << row.value("verdict", "") << ","
                  << row.value("certificate_kind", "") << "," << row.value("witness_k", 0)
                  << "\n";
    } else {
      std::cout << "key,value\n";
      for (auto it = result.begin(); it != result.end(); ++it)
        if (!it.value().is_structured())
          std::cout << it.key() << "," << it.value().dump() << "\n";
    }
    return;
  }
  // text
  for (auto it = result.begin(); it != result.end(); ++it)
    if (!it.value().is_structured())
      std::cout << it.key() << ": " << (it.value().is_string()
                                            ? it.value().get<std::string>()
                                            : it.value().dump())
                << "\n";
  if (result.contains("certificate"))
    std::cout << "certificate: " << result.at("certificate").dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"idealtop: exact ideal convergence, tail sumsets and characterized subgroups"};
  app.require_subcommand(1);

  Options opt;
  idealtop_params_init(&opt.params);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seq", opt.seqs, "sequence (repeat for product coordinates)");
    cmd->add_option("--point", opt.point, "circle point p/q, or c1,..@n1,.. for finite groups");
    cmd->add_option("--ideal", opt.ideal, "ideal: fin|density|summable:harmonic|exh:density|powerset(...)");
    cmd->add_option("--descriptor", opt.descriptor, "set descriptor");
    cmd->add_option("--kmax", opt.params.kmax, "neighborhood scales / fold bound");
    cmd->add_option("--m", opt.params.m, "tail horizon M / fold bound / cell bound");
    cmd->add_option("--horizon", opt.params.horizon, "index horizon H");
    cmd->add_option("--window", opt.params.window, "magnitude window W");
    cmd->add_option("--qmax", opt.params.qmax, "denominator bound");
    cmd->add_option("--nmax", opt.params.nmax, "stage bound for the cell decomposition");
    cmd->add_option("--budget", opt.params.budget, "enumeration element budget");
    cmd->add_option("--out", opt.out_format, "output: json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_flag("--no-cache", opt.no_cache, "disable the residue cache");
    cmd->add_option("--chain", opt.chain, "ascending descriptors (repeat)");
    cmd->add_option("--g", opt.g, "target group element (integer)");
    cmd->add_option("--orders", opt.orders, "finite group shape n1,n2,...");
    cmd->add_option("--cert", opt.cert_path, "certificate file (refute-t out / verify-cert in)");
    cmd->add_option("--submeasure", opt.submeasure, "submeasure: density|support");
  };

  CLI::App* c_iconv = app.add_subcommand("iconv", "ideal convergence verdict with certificate");
  CLI::App* c_member = app.add_subcommand("member", "membership in the characterized subgroup");
  CLI::App* c_scanf = app.add_subcommand("scan-finite", "exhaustive finite-group scan");
  CLI::App* c_tb = app.add_subcommand("tb-scan", "circle scan with density evidence");
  CLI::App* c_refute = app.add_subcommand("refute-t", "search for a persistent sumset element");
  CLI::App* c_verify = app.add_subcommand("verify-cert", "check a refutation certificate");
  CLI::App* c_nbhd = app.add_subcommand("nbhd", "truncated neighborhood stage");
  CLI::App* c_cover = app.add_subcommand("cover", "minimal fold count covering an element");
  CLI::App* c_density = app.add_subcommand("density", "exact density bounds of a descriptor");
  CLI::App* c_exh = app.add_subcommand("exh", "membership in the exhaustive ideal of a submeasure");
  CLI::App* c_fsd = app.add_subcommand("fsd", "cell decomposition consistency check");
  for (CLI::App* c : {c_iconv, c_member, c_scanf, c_tb, c_refute, c_verify, c_nbhd, c_cover,
                      c_density, c_exh, c_fsd})
    add_common(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;  // --help exits 0, everything else is usage
  }
  opt.params.no_cache = opt.no_cache ? 1 : 0;

  auto t0 = std::chrono::steady_clock::now();
  auto wall = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  auto need = [&](bool cond, const char* what) {
    if (!cond) {
      std::cerr << "idealtop: usage error: " << what << "\n";
      std::exit(kExitUsage);
    }
  };

  auto parse_seq = [&](const std::string& text) {
    SeqHandle s;
    idealtop_status st = idealtop_seq_parse(text.c_str(), &s.h);
    if (st != IDEALTOP_OK) fail(st);
    return s;
  };
  auto parse_ideal = [&](const std::string& text) {
    IdealHandle i;
    idealtop_status st = idealtop_ideal_parse(text.c_str(), &i.h);
    if (st != IDEALTOP_OK) fail(st);
    return i;
  };

  const std::string verb = app.get_subcommands().front()->get_name();

  if (verb == "iconv" || verb == "member") {
    need(!opt.seqs.empty(), "--seq is required");
    need(!opt.point.empty(), "--point is required");
    IdealHandle ideal = parse_ideal(opt.ideal);
    idealtop_verdict verdict = IDEALTOP_VERDICT_UNDECIDED;
    char* out = nullptr;
    idealtop_status st;
    if (opt.point.find('@') != std::string::npos) {
      std::vector<SeqHandle> seqs;
      std::vector<const idealtop_seq*> raw;
      for (const auto& s : opt.seqs) {
        seqs.push_back(parse_seq(s));
        raw.push_back(seqs.back().h);
      }
      st = idealtop_member_finite(raw.data(), raw.size(), opt.point.c_str(), ideal.h,
                                  &opt.params, &verdict, &out);
    } else {
      SeqHandle u = parse_seq(opt.seqs.front());
      st = idealtop_member(u.h, opt.point.c_str(), ideal.h, &opt.params, &verdict, &out);
    }
    if (st != IDEALTOP_OK) fail(st);
    emit(opt, verb, json::parse(take_string(out)), wall());
    return exit_of_verdict(verdict);
  }

  if (verb == "scan-finite") {
    need(!opt.seqs.empty(), "--seq is required");
    need(!opt.orders.empty(), "--orders is required");
    IdealHandle ideal = parse_ideal(opt.ideal);
    std::vector<SeqHandle> seqs;
    std::vector<const idealtop_seq*> raw;
    for (const auto& s : opt.seqs) {
      seqs.push_back(parse_seq(s));
      raw.push_back(seqs.back().h);
    }
    char* out = nullptr;
    idealtop_status st = idealtop_scan_finite(opt.orders.c_str(), raw.data(), raw.size(),
                                              ideal.h, &opt.params, &out);
    if (st != IDEALTOP_OK) fail(st);
    emit(opt, verb, json::parse(take_string(out)), wall());
    return kExitIn;
  }

  if (verb == "tb-scan") {
    need(!opt.seqs.empty(), "--seq is required");
    IdealHandle ideal = parse_ideal(opt.ideal);
    SeqHandle u = parse_seq(opt.seqs.front());
    int evidence = 0;
    char* out = nullptr;
    idealtop_status st = idealtop_tb_scan(u.h, ideal.h, &opt.params, &evidence, &out);
    if (st != IDEALTOP_OK) fail(st);
    emit(opt, verb, json::parse(take_string(out)), wall());
    return evidence ? kExitIn : kExitOut;
  }

  if (verb == "refute-t") {
    need(!opt.seqs.empty(), "--seq is required");
    SeqHandle u = parse_seq(opt.seqs.front());
    int found = 0;
    char* cert = nullptr;
    idealtop_status st = idealtop_refute_t(u.h, &opt.params, &found, &cert);
    if (st != IDEALTOP_OK) fail(st);
    std::string cert_text = take_string(cert);
    if (!opt.cert_path.empty()) {
      std::ofstream f(opt.cert_path);
      f << cert_text << "\n";
    }
    emit(opt, verb, json::parse(cert_text), wall());
    return found ? kExitIn : kExitOut;
  }

  if (verb == "verify-cert") {
    need(!opt.seqs.empty(), "--seq is required");
    need(!opt.cert_path.empty(), "--cert is required");
    SeqHandle u = parse_seq(opt.seqs.front());
    std::ifstream f(opt.cert_path);
    need(static_cast<bool>(f), "certificate file not readable");
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    int valid = 0;
    idealtop_status st = idealtop_verify_cert(u.h, text.c_str(), &valid);
    if (st != IDEALTOP_OK) fail(st);
    emit(opt, verb, json{{"valid", valid != 0}}, wall());
    return valid ? kExitIn : kExitOut;
  }

  if (verb == "nbhd") {
    need(!opt.seqs.empty(), "--seq is required");
    need(!opt.chain.empty(), "--chain is required");
    SeqHandle u = parse_seq(opt.seqs.front());
    std::vector<const char*> chain;
    for (const auto& c : opt.chain) chain.push_back(c.c_str());
    char* out = nullptr;
    idealtop_status st = idealtop_nbhd(u.h, chain.data(), chain.size(), &opt.params, &out);
    if (st != IDEALTOP_OK) fail(st);
    emit(opt, verb, json::parse(take_string(out)), wall());
    return kExitIn;
  }

  if (verb == "cover") {
    need(!opt.seqs.empty(), "--seq is required");
    need(!opt.g.empty(), "--g is required");
    SeqHandle u = parse_seq(opt.seqs.front());
    DescHandle excl;
    if (!opt.descriptor.empty()) {
      idealtop_status st = idealtop_descriptor_parse(opt.descriptor.c_str(), &excl.h);
      if (st != IDEALTOP_OK) fail(st);
    }
    int64_t m = -1;
    char* out = nullptr;
    idealtop_status st =
        idealtop_cover(u.h, opt.g.c_str(), excl.h, &opt.params, &m, &out);
    if (st != IDEALTOP_OK) fail(st);
    emit(opt, verb, json::parse(take_string(out)), wall());
    return m >= 0 ? kExitIn : kExitOut;
  }

  if (verb == "density") {
    need(!opt.descriptor.empty(), "--descriptor is required");
    DescHandle d;
    idealtop_status st = idealtop_descriptor_parse(opt.descriptor.c_str(), &d.h);
    if (st != IDEALTOP_OK) fail(st);
    char* out = nullptr;
    st = idealtop_density(d.h, &out);
    if (st != IDEALTOP_OK) fail(st);
    emit(opt, verb, json::parse(take_string(out)), wall());
    return kExitIn;
  }

  if (verb == "exh") {
    need(!opt.descriptor.empty(), "--descriptor is required");
    DescHandle d;
    idealtop_status st = idealtop_descriptor_parse(opt.descriptor.c_str(), &d.h);
    if (st != IDEALTOP_OK) fail(st);
    idealtop_verdict verdict = IDEALTOP_VERDICT_UNDECIDED;
    char* out = nullptr;
    st = idealtop_exh(opt.submeasure.c_str(), d.h, &opt.params, &verdict, &out);
    if (st != IDEALTOP_OK) fail(st);
    emit(opt, verb, json::parse(take_string(out)), wall());
    return exit_of_verdict(verdict);
  }

  if (verb == "fsd") {
    need(!opt.seqs.empty(), "--seq is required");
    need(!opt.point.empty(), "--point is required");
    SeqHandle u = parse_seq(opt.seqs.front());
    int consistent = 0;
    idealtop_verdict direct = IDEALTOP_VERDICT_UNDECIDED;
    char* out = nullptr;
    idealtop_status st = idealtop_fsd(u.h, opt.point.c_str(), opt.submeasure.c_str(),
                                      &opt.params, &consistent, &direct, &out);
    if (st != IDEALTOP_OK) fail(st);
    emit(opt, verb, json::parse(take_string(out)), wall());
    return consistent ? kExitIn : kExitOut;
  }

  std::cerr << "idealtop: unknown command\n";
  return kExitUsage;
}
