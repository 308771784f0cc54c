#include "hermpir/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hermpir/atlas.hpp"
#include "hermpir/suites.hpp"
#include "hermpir/wire.hpp"
#include "hermpir/xstpir.hpp"

namespace hermpir::cli {

namespace {

using json = nlohmann::json;
using Config = std::vector<std::pair<std::string, std::string>>;

void echo(std::ostream& out, const std::string& cmd, const Config& cfg) {
  out << "# hermpir " << cmd;
  for (const auto& [k, v] : cfg) out << ' ' << k << '=' << v;
  out << '\n';
}

json config_json(const std::string& cmd, const Config& cfg) {
  json j;
  j["command"] = cmd;
  for (const auto& [k, v] : cfg) j[k] = v;
  return j;
}

std::uint64_t fnv1a(const std::vector<gf::Element>& v) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto e : v) {
    for (int k = 0; k < 4; ++k) {
      h ^= (e.value >> (8 * k)) & 0xffU;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::string rate_string(int L, int N) {
  return std::to_string(L) + "/" + std::to_string(N) + " = " + atlas::format_sig5(L, N);
}

struct TablesArgs {
  int which = 2;
  std::string format = "md";
  bool full = false;
};

int cmd_tables(const TablesArgs& a, std::ostream& out) {
  auto opts = atlas::TableOptions::from_env();
  if (a.full) opts.table1_full = true;
  const Config cfg{{"which", std::to_string(a.which)},
                   {"format", a.format},
                   {"table1_full", opts.table1_full ? "1" : "0"}};
  const auto t = atlas::emit_table(a.which, opts);
  if (a.format == "json") {
    json j = json::parse(atlas::render_json(t));
    j["request"] = config_json("tables", cfg);
    out << j.dump(2) << '\n';
    return 0;
  }
  echo(out, "tables", cfg);
  out << (a.format == "csv" ? atlas::render_csv(t) : atlas::render_markdown(t));
  return 0;
}

struct CountArgs {
  std::string curve = "hermitian";
  int q = 0;
  std::vector<std::uint32_t> coeffs;
};

int cmd_count(const CountArgs& a, std::ostream& out) {
  Config cfg{{"curve", a.curve}, {"q", std::to_string(a.q)}};
  if (a.curve == "hermitian") {
    echo(out, "count-points", cfg);
    const auto c = curve::HermitianCurve::over(static_cast<std::uint32_t>(a.q));
    const auto pts = c.enumerate_points();
    bool on_curve = true;
    for (const auto& p : pts) on_curve = on_curve && (p.at_infinity || c.contains(p.x, p.y));
    const long long expected = 1LL * a.q * a.q * a.q + 1;
    out << "field_order: " << c.field().size() << '\n';
    out << "genus: " << c.genus() << '\n';
    out << "points: " << pts.size() << '\n';
    out << "expected q^3+1: " << expected << '\n';
    const bool ok = on_curve && static_cast<long long>(pts.size()) == expected;
    out << "check: " << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : 1;
  }
  std::string cs;
  for (const auto c : a.coeffs) cs += (cs.empty() ? "" : ",") + std::to_string(c);
  cfg.emplace_back("coeffs", cs);
  echo(out, "count-points", cfg);
  const auto pp = gf::factor_prime_power(static_cast<std::uint64_t>(a.q));
  const gf::Field f(pp.p, pp.h);
  const int g = static_cast<int>(a.coeffs.size() / 2);
  const auto spec = atlas::make_curve_spec(f, g, a.coeffs);
  const int gamma_formula = atlas::gamma_set_size(f.size(), spec.point_count, spec.gamma);
  const int gamma_direct = atlas::gamma_set_size_direct(f, a.coeffs);
  out << "genus: " << g << '\n';
  out << "points: " << spec.point_count << '\n';
  out << "gamma: " << spec.gamma << '\n';
  out << "hasse_weil_upper: " << (2LL * f.size() + 1) << '\n';
  out << "gamma_set_size: " << gamma_formula << " (direct " << gamma_direct << ")\n";
  const bool ok = gamma_formula == gamma_direct && (spec.point_count - 1 - spec.gamma) % 2 == 0;
  out << "check: " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? 0 : 1;
}

struct DemoArgs {
  int q = 5;
  int x = 1;
  int t = 1;
  std::optional<int> m;
  int files = 3;
  std::uint64_t seed = 7;
  int trials = 10;
  std::string transport = "inproc";
  int workers = 4;
  std::string manifest;
};

int cmd_demo(const DemoArgs& a, std::ostream& out) {
  const auto params = pir::validate_params(a.q, a.x, a.t, a.m, a.files, a.seed);
  const Config cfg{{"q", std::to_string(a.q)},         {"x", std::to_string(a.x)},
                   {"t", std::to_string(a.t)},         {"m", std::to_string(params.m)},
                   {"files", std::to_string(a.files)}, {"seed", std::to_string(a.seed)},
                   {"trials", std::to_string(a.trials)}, {"transport", a.transport},
                   {"workers", std::to_string(a.workers)}};
  echo(out, "pir-demo", cfg);
  const auto inst = pir::SchemeInstance::build(params);
  if (!a.manifest.empty()) {
    std::ofstream mf(a.manifest);
    if (!mf) throw InvalidArgument("cannot write manifest to " + a.manifest);
    mf << wire::manifest_to_json(wire::make_manifest(inst));
  }
  const auto& p = inst.params();
  out << "instance: q=" << p.q << " X=" << p.X << " T=" << p.T << " m=" << p.m << " g=" << p.g << " L=" << p.L
      << " N=" << p.N << " M=" << p.M << '\n';
  out << "rate: " << rate_string(p.L, p.N) << '\n';
  gf::Rng rng(a.seed);
  int correct = 0;
  for (int trial = 1; trial <= a.trials; ++trial) {
    std::vector<std::vector<gf::Element>> files(static_cast<std::size_t>(p.M), std::vector<gf::Element>(p.L));
    for (auto& file : files) {
      for (auto& s : file) s = inst.field().sample(rng);
    }
    const int want = static_cast<int>(rng() % static_cast<std::uint64_t>(p.M));
    const auto shares = pir::encode_storage(inst, files, rng);
    const auto queries = pir::make_queries(inst, want, rng);
    const auto answers = a.transport == "socket" ? wire::socket_collect_answers(inst, shares, queries, a.workers)
                                                 : pir::collect_answers(inst, shares, queries);
    bool ok = false;
    std::string why;
    try {
      ok = pir::reconstruct(inst, answers) == files[static_cast<std::size_t>(want)];
      if (!ok) why = " (wrong file)";
    } catch (const pir::DecodeFailure& e) {
      why = std::string(" (") + e.what() + ")";
    }
    correct += ok;
    std::ostringstream digest;
    digest << std::hex << std::setw(16) << std::setfill('0') << fnv1a(answers);
    out << "trial " << trial << ": desired=" << want + 1 << " answers=" << digest.str() << ' '
        << (ok ? "PASS" : "FAIL") << why << '\n';
  }
  out << "result: " << correct << '/' << a.trials << " correct\n";
  return correct == a.trials ? 0 : 1;
}

struct CertifyArgs {
  int q = 5;
  int x = 1;
  int t = 1;
  std::optional<int> m;
  std::uint64_t seed = 1;
  std::string format = "text";
};

int cmd_certify(const CertifyArgs& a, std::ostream& out) {
  const auto params = pir::validate_params(a.q, a.x, a.t, a.m, 1, a.seed);
  const Config cfg{{"q", std::to_string(a.q)},   {"x", std::to_string(a.x)},       {"t", std::to_string(a.t)},
                   {"m", std::to_string(params.m)}, {"seed", std::to_string(a.seed)}, {"format", a.format}};
  const auto inst = pir::SchemeInstance::build(params);
  pir::CertifyOptions co;
  co.seed = a.seed;
  const auto r = pir::certify_instance(inst, co);
  const auto& p = r.params;
  int sec_min = r.sec_dual_bounds.empty() ? 0 : *std::min_element(r.sec_dual_bounds.begin(), r.sec_dual_bounds.end());
  if (a.format == "json") {
    json j;
    j["request"] = config_json("certify", cfg);
    j["params"] = {{"q", p.q}, {"X", p.X}, {"T", p.T}, {"m", p.m}, {"g", p.g}, {"L", p.L}, {"N", p.N}};
    j["rate"] = {{"fraction", std::to_string(p.L) + "/" + std::to_string(p.N)},
                 {"decimal", atlas::format_sig5(p.L, p.N)}};
    j["sec_dual_bound_min"] = sec_min;
    j["priv_dual_bound"] = r.priv_dual_bound;
    json ind = json::array();
    for (const auto& c : r.independence) {
      ind.push_back({{"family", c.family},
                     {"w", c.w},
                     {"exhaustive", c.exhaustive},
                     {"subsets", c.result.subsets_checked},
                     {"independent", c.result.independent}});
    }
    j["independence"] = ind;
    j["noise"] = {{"count", r.noise_count},           {"expected", r.noise_expected},
                  {"fallback", r.fallback_used},      {"products_tested", r.products_tested},
                  {"contained", r.noise_contained}};
    j["rank"] = {{"decode", r.decode_rank}, {"expected", r.expected_rank}, {"info", r.info_rank},
                 {"noise", r.noise_rank},   {"additive", r.rank_additive}};
    j["all_passed"] = r.all_passed();
    out << j.dump(2) << '\n';
    return r.all_passed() ? 0 : 1;
  }
  echo(out, "certify", cfg);
  auto line = [&](const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
  };
  out << "instance: q=" << p.q << " X=" << p.X << " T=" << p.T << " m=" << p.m << " g=" << p.g << " L=" << p.L
      << " N=" << p.N << '\n';
  out << "rate: " << rate_string(p.L, p.N) << '\n';
  line("sec dual bounds >= X+1", r.sec_bounds_ok,
       "min " + std::to_string(sec_min) + " over " + std::to_string(r.sec_dual_bounds.size()) + " codes");
  line("priv dual bound >= T+1", r.priv_bound_ok, std::to_string(r.priv_dual_bound));
  std::uint64_t exhaustive = 0, sampled = 0;
  std::size_t failures = 0;
  for (const auto& c : r.independence) {
    (c.exhaustive ? exhaustive : sampled) += c.result.subsets_checked;
    failures += !c.result.independent;
  }
  line("w-wise independence", r.independence_ok,
       std::to_string(exhaustive) + " exhaustive and " + std::to_string(sampled) + " sampled subsets, " +
           std::to_string(failures) + " failures");
  line("noise monomial count", r.noise_count_ok,
       std::to_string(r.noise_count) + " of " + std::to_string(r.noise_expected));
  line("noise containment", r.noise_contained,
       std::to_string(r.products_tested) + " products" + (r.fallback_used ? ", product fallback" : ""));
  line("decode rank = N-g", r.rank_ok, std::to_string(r.decode_rank) + " of " + std::to_string(r.expected_rank));
  line("rank additivity", r.rank_additive,
       std::to_string(r.info_rank) + " + " + std::to_string(r.noise_rank) + " = " + std::to_string(r.decode_rank));
  out << "result: " << (r.all_passed() ? "PASS" : "FAIL") << '\n';
  return r.all_passed() ? 0 : 1;
}

struct VerifyArgs {
  std::string suite = "fields";
  std::uint64_t seed = 1;
  std::optional<int> q;
  std::optional<int> m;
  int trials = 10000;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  Config cfg{{"suite", a.suite}, {"seed", std::to_string(a.seed)}, {"trials", std::to_string(a.trials)}};
  if (a.q) cfg.emplace_back("q", std::to_string(*a.q));
  if (a.m) cfg.emplace_back("m", std::to_string(*a.m));
  echo(out, "verify", cfg);
  suites::SuiteOptions o;
  o.seed = a.seed;
  o.q = a.q;
  o.m = a.m;
  o.trials = a.trials;
  const auto r = suites::run_suite(a.suite, o);
  std::size_t passed = 0;
  for (const auto& c : r.checks) {
    passed += c.passed;
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << " [" << c.detail << "]";
    out << '\n';
  }
  out << "result: " << passed << '/' << r.checks.size() << " checks passed\n";
  return r.all_passed() ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hermitian-curve XSTPIR toolkit", "hermpir"};
  app.require_subcommand(1);

  TablesArgs ta;
  auto* tables = app.add_subcommand("tables", "Render a rate table");
  tables->add_option("--which", ta.which, "Table number")->check(CLI::IsMember({1, 2, 3}))->capture_default_str();
  tables->add_option("--format", ta.format, "Output format")
      ->check(CLI::IsMember({"md", "csv", "json"}))
      ->capture_default_str();
  tables->add_flag("--full", ta.full, "Exhaustive search for every Table 1 field");

  CountArgs ca;
  auto* count = app.add_subcommand("count-points", "Count rational points");
  count->add_option("--curve", ca.curve, "Curve family")
      ->check(CLI::IsMember({"hermitian", "hyperelliptic"}))
      ->capture_default_str();
  count->add_option("--q", ca.q, "Hermitian q, or the hyperelliptic field order")->required();
  count->add_option("--coeffs", ca.coeffs, "a_0..a_2g of f = x^(2g+1) + ..., packed field indices")->delimiter(',');

  DemoArgs da;
  auto* demo = app.add_subcommand("pir-demo", "Run retrievals end to end");
  demo->add_option("--q", da.q)->capture_default_str();
  demo->add_option("--x", da.x, "Colluding servers tolerated for storage")->capture_default_str();
  demo->add_option("--t", da.t, "Colluding servers tolerated for queries")->capture_default_str();
  demo->add_option("--m", da.m, "Number of data x-coordinates");
  demo->add_option("--files", da.files)->capture_default_str();
  demo->add_option("--seed", da.seed)->capture_default_str();
  demo->add_option("--trials", da.trials)->check(CLI::PositiveNumber)->capture_default_str();
  demo->add_option("--transport", da.transport)
      ->check(CLI::IsMember({"inproc", "socket"}))
      ->capture_default_str();
  demo->add_option("--workers", da.workers, "Server processes for the socket transport")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  demo->add_option("--manifest", da.manifest, "Write the instance manifest here");

  CertifyArgs cea;
  auto* cert = app.add_subcommand("certify", "Certify an instance");
  cert->add_option("--q", cea.q)->capture_default_str();
  cert->add_option("--x", cea.x)->capture_default_str();
  cert->add_option("--t", cea.t)->capture_default_str();
  cert->add_option("--m", cea.m);
  cert->add_option("--seed", cea.seed)->capture_default_str();
  cert->add_option("--format", cea.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", va.suite)->check(CLI::IsMember(suites::suite_names()))->required();
  verify->add_option("--seed", va.seed)->capture_default_str();
  verify->add_option("--q", va.q);
  verify->add_option("--m", va.m);
  verify->add_option("--trials", va.trials)->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*tables) return cmd_tables(ta, out);
    if (*count) return cmd_count(ca, out);
    if (*demo) return cmd_demo(da, out);
    if (*cert) return cmd_certify(cea, out);
    if (*verify) return cmd_verify(va, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace hermpir::cli
