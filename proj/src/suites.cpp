#include "hermpir/suites.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <sstream>

#include "hermpir/codes.hpp"
#include "hermpir/xstpir.hpp"

namespace hermpir::suites {

namespace {

using gf::Element;

std::string str(long long v) { return std::to_string(v); }

void add(SuiteReport& r, std::string name, bool ok, std::string detail = {}) {
  r.checks.push_back({std::move(name), ok, std::move(detail)});
}

std::vector<std::pair<int, int>> default_instances(const SuiteOptions& o) {
  const int q = o.q.value_or(5);
  return {{q, 1}, {q, 2}};
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

void fields_suite(SuiteReport& r, const SuiteOptions& o) {
  gf::Rng rng(o.seed);
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> fields{{2, 2}, {2, 3}, {3, 2}, {5, 2},
                                                                     {3, 3}, {7, 2}, {11, 2}, {29, 2}};
  for (const auto& [p, n] : fields) {
    const gf::Field f(p, n);
    const std::string tag = "GF(" + str(p) + "^" + str(n) + ")";
    const Element g = f.primitive_element();
    bool prim = f.pow(g, f.size() - 1) == f.one();
    for (const auto r0 : prime_factors(f.size() - 1)) prim = prim && f.pow(g, (f.size() - 1) / r0) != f.one();
    add(r, tag + " primitive element has order q-1", prim);

    bool axioms = true;
    for (int t = 0; t < 500; ++t) {
      const Element a = f.sample(rng), b = f.sample(rng), c = f.sample(rng);
      axioms = axioms && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
      axioms = axioms && f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
      axioms = axioms && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
      axioms = axioms && f.sub(a, a) == f.zero();
      if (!a.is_zero()) axioms = axioms && f.mul(a, f.inv(a)) == f.one();
    }
    add(r, tag + " ring axioms and inverses on 500 samples", axioms);

    bool frob = true;
    for (const auto a : f.elements()) frob = frob && f.pow(a, f.size()) == a;
    add(r, tag + " a^q = a for every element", frob);

    if (p != 2) {
      std::uint32_t squares = 0;
      for (const auto a : f.elements()) squares += f.quadratic_character(a) > 0;
      add(r, tag + " (q-1)/2 nonzero squares", squares == (f.size() - 1) / 2,
          str(squares) + " squares");
    }
  }
  for (const std::uint32_t q : {2u, 3u, 4u, 5u, 7u}) {
    const auto pp = gf::factor_prime_power(q);
    const auto tower = gf::create_tower(pp.p, pp.h);
    const std::string tag = "F_" + str(q) + " in F_" + str(q * q);
    add(r, tag + " subfield has q elements", tower->subfield_elements().size() == q);
    std::vector<int> norm_fibre(tower->order(), 0);
    bool into = true;
    for (const auto a : tower->enumerate()) {
      into = into && tower->in_subfield(tower->norm(a)) && tower->in_subfield(tower->trace(a));
      ++norm_fibre[tower->norm(a).value];
    }
    add(r, tag + " norm and trace land in the subfield", into);
    bool fibres = true;
    for (const auto b : tower->subfield_elements()) {
      fibres = fibres && norm_fibre[b.value] == (b.is_zero() ? 1 : static_cast<int>(q) + 1);
    }
    add(r, tag + " norm fibres have size q+1 over nonzero values", fibres);
  }
}

void bases_suite(SuiteReport& r, const SuiteOptions& o) {
  std::vector<std::pair<int, int>> pairs{{3, 2}, {3, 3}, {4, 3}, {4, 4}, {5, 3}, {5, 5}, {5, 7}};
  if (o.q && o.m) pairs = {{*o.q, *o.m}};
  for (const auto& [q, m] : pairs) {
    const std::string tag = "(q,m)=(" + str(q) + "," + str(m) + ")";
    const auto c = curve::HermitianCurve::over(static_cast<std::uint32_t>(q));
    const auto alphas = curve::default_alphas(c, m);
    const auto basis = curve::interpolation_basis(c, alphas);
    const int L = m * q - c.genus();
    add(r, tag + " |B| = L", static_cast<int>(basis.size()) == L,
        "|B|=" + str(static_cast<long long>(basis.size())) + " L=" + str(L));
    std::vector<curve::CurveFunction> fns;
    for (const auto& b : basis) fns.push_back(b.function);
    const auto pts = curve::fiber_points(c, alphas);
    const auto rk = linalg::rank(codes::evaluation_matrix(fns, pts));
    add(r, tag + " rank at the mq data points = L", static_cast<int>(rk) == L,
        "rank=" + str(static_cast<long long>(rk)) + " points=" + str(static_cast<long long>(pts.size())));
    bool val = true;
    for (const auto& b : basis) val = val && b.function.valuation_at_infinity() == -(m * q - 1) + q - b.z;
    add(r, tag + " v_inf(h_i^(z)) = -(mq-1)+q-z", val);
  }
}

void noise_suite(SuiteReport& r, const SuiteOptions& o) {
  for (const auto& [q, xt] : default_instances(o)) {
    const std::string tag = "q=" + str(q) + " X=T=" + str(xt);
    const auto inst = pir::SchemeInstance::build(pir::validate_params(q, xt, xt, std::nullopt, 1, o.seed));
    pir::CertifyOptions co;
    co.seed = o.seed;
    const auto rep = pir::certify_instance(inst, co);
    add(r, tag + " two-point monomial count = deg D - g + 1", rep.noise_count_ok,
        str(rep.noise_count) + " vs " + str(rep.noise_expected));
    add(r, tag + " sampled products lie in the noise span", rep.noise_contained,
        str(rep.products_tested) + " products" + (rep.fallback_used ? ", product fallback used" : ""));
    add(r, tag + " rank(B_info) + rank(B_noise) = N - g", rep.rank_additive && rep.rank_ok,
        str(static_cast<long long>(rep.info_rank)) + " + " + str(static_cast<long long>(rep.noise_rank)) +
            " = " + str(static_cast<long long>(rep.decode_rank)));
  }
}

// Counts of one grid entry over repeated draws, keyed by packed value.
template <class Draw>
ChiSquare marginal(std::uint32_t field_size, int trials, Draw draw) {
  std::vector<std::uint64_t> counts(field_size, 0);
  for (int t = 0; t < trials; ++t) ++counts[draw().value];
  return chi_square_uniform(counts);
}

std::string chi_detail(const ChiSquare& c) {
  std::ostringstream os;
  os.precision(5);
  os << "chi2=" << c.statistic << " critical=" << c.critical << " df=" << c.df;
  return os.str();
}

void privacy_suite(SuiteReport& r, const SuiteOptions& o) {
  for (const auto& [q, xt] : default_instances(o)) {
    const std::string tag = "q=" + str(q) + " X=T=" + str(xt);
    const auto inst = pir::SchemeInstance::build(pir::validate_params(q, xt, xt, std::nullopt, 2, o.seed));
    const auto& p = inst.params();
    const int bound = p.T + 2 * p.g - 1 - 2 * p.g + 2;
    add(r, tag + " priv dual bound >= T+1", bound >= p.T + 1, "bound=" + str(bound));
    const auto gen = inst.priv_basis().transpose();
    for (std::size_t w = 1; w <= 2; ++w) {
      const auto res = codes::check_w_wise_independence(gen, w, codes::Exhaustive{});
      add(r, tag + " priv columns " + str(static_cast<long long>(w)) + "-wise independent", res.independent,
          str(static_cast<long long>(res.subsets_checked)) + " subsets");
    }
    for (const int want : {0, 1}) {
      // Both servers are read off the same query draws.
      gf::Rng rng(o.seed * 1000 + static_cast<std::uint64_t>(want));
      const std::vector<int> servers{0, p.N - 1};
      std::vector<std::vector<std::uint64_t>> counts(servers.size(), std::vector<std::uint64_t>(inst.field().size()));
      for (int t = 0; t < o.trials; ++t) {
        const auto qb = pir::make_queries(inst, want, rng);
        for (std::size_t k = 0; k < servers.size(); ++k) ++counts[k][qb.at(0, 0, servers[k]).value];
      }
      for (std::size_t k = 0; k < servers.size(); ++k) {
        const auto c = chi_square_uniform(counts[k]);
        add(r, tag + " query marginal uniform, desired=" + str(want) + " server=" + str(servers[k]), c.passed,
            chi_detail(c));
      }
    }
  }
}

void security_suite(SuiteReport& r, const SuiteOptions& o) {
  for (const auto& [q, xt] : default_instances(o)) {
    const std::string tag = "q=" + str(q) + " X=T=" + str(xt);
    const auto inst = pir::SchemeInstance::build(pir::validate_params(q, xt, xt, std::nullopt, 1, o.seed));
    const auto& p = inst.params();
    const int bound = p.X + 2 * p.g - 1 - 2 * p.g + 2;
    add(r, tag + " sec dual bounds >= X+1", bound >= p.X + 1, "bound=" + str(bound));
    bool indep = true;
    std::uint64_t subsets = 0;
    for (const auto& sec : inst.sec_basis()) {
      const auto gen = sec.transpose();
      for (std::size_t w = 1; w <= 2; ++w) {
        const auto res = codes::check_w_wise_independence(gen, w, codes::Exhaustive{});
        indep = indep && res.independent;
        subsets += res.subsets_checked;
      }
    }
    add(r, tag + " every sec[l] 2-wise independent", indep, str(static_cast<long long>(subsets)) + " subsets");
    const auto& f = inst.field();
    for (const int content : {0, 1}) {
      const std::vector<std::vector<Element>> files(1, std::vector<Element>(p.L, content ? f.one() : f.zero()));
      gf::Rng rng(o.seed * 2000 + static_cast<std::uint64_t>(content));
      const auto c = marginal(f.size(), o.trials, [&] { return pir::encode_storage(inst, files, rng).at(0, 0, 0); });
      add(r, tag + " share marginal uniform, file symbols=" + str(content), c.passed, chi_detail(c));
    }
  }
}

void codes_suite(SuiteReport& r, const SuiteOptions&) {
  const auto c = curve::HermitianCurve::over(2);
  const auto pts = c.affine_points();
  for (int deg = 3; deg <= 6; ++deg) {
    std::vector<curve::CurveFunction> fns;
    for (const auto& mi : curve::one_point_basis(deg, 2)) {
      fns.push_back(curve::CurveFunction::monomial(c.tower_ptr(), mi.i, mi.j));
    }
    const auto code = codes::generator_matrix(fns, pts, c.genus(), deg);
    const auto d = codes::min_distance_bruteforce(code.gen);
    const auto dd = codes::dual_min_distance_bruteforce(code.gen);
    const int designed = codes::goppa_designed_distance(code);
    const int dual_bound = codes::dual_distance_bound(code);
    const std::string tag = "H_2 degG=" + str(deg);
    add(r, tag + " d >= N - degG", static_cast<int>(d) >= designed,
        "d=" + str(static_cast<long long>(d)) + " designed=" + str(designed));
    add(r, tag + " dual d >= degG - 2g + 2", static_cast<int>(dd) >= dual_bound,
        "dual d=" + str(static_cast<long long>(dd)) + " bound=" + str(dual_bound));
  }
}

}  // namespace

bool SuiteReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"fields", "bases", "noise", "privacy", "security", "codes"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
  SuiteReport r;
  r.suite = name;
  if (name == "fields") {
    fields_suite(r, opts);
  } else if (name == "bases") {
    bases_suite(r, opts);
  } else if (name == "noise") {
    noise_suite(r, opts);
  } else if (name == "privacy") {
    privacy_suite(r, opts);
  } else if (name == "security") {
    security_suite(r, opts);
  } else if (name == "codes") {
    codes_suite(r, opts);
  } else {
    throw InvalidArgument("unknown suite '" + name + "'");
  }
  return r;
}

ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts, double level) {
  if (counts.size() < 2) throw InvalidArgument("chi-square needs at least two cells");
  ChiSquare c;
  std::uint64_t total = 0;
  for (const auto k : counts) total += k;
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  for (const auto k : counts) {
    const double d = static_cast<double>(k) - expected;
    c.statistic += d * d / expected;
  }
  c.df = counts.size() - 1;
  c.critical = boost::math::quantile(boost::math::chi_squared(static_cast<double>(c.df)), level);
  c.passed = c.statistic <= c.critical;
  return c;
}

}  // namespace hermpir::suites
