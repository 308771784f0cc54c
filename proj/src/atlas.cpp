#include "hermpir/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace hermpir::atlas {

namespace {

using json = nlohmann::json;

RateRecord finish(RateRecord r) {
  if (r.feasible) {
    r.rate = Fraction(r.L, r.N);
  } else {
    r.rate = Fraction(0);
  }
  return r;
}

gf::Field field_of_order(std::uint32_t order) {
  const auto pp = gf::factor_prime_power(order);
  return gf::Field(pp.p, pp.h);
}

// Value of f at every field element, indexed by packed value.
std::vector<std::uint32_t> values_of(const gf::Field& f, const std::vector<std::uint32_t>& coefficients) {
  const auto deg = static_cast<std::int64_t>(coefficients.size());
  std::vector<std::uint32_t> out(f.size());
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    const gf::Element ex(x);
    gf::Element v = f.pow(ex, deg);
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      v = f.add(v, f.mul(gf::Element(coefficients[i]), f.pow(ex, static_cast<std::int64_t>(i))));
    }
    out[x] = v.value;
  }
  return out;
}

void check_coefficients(const gf::Field& f, const std::vector<std::uint32_t>& coefficients) {
  if (f.characteristic() == 2) throw InvalidArgument("even characteristic is not supported");
  if (coefficients.size() < 3 || coefficients.size() % 2 == 0) {
    throw InvalidArgument("expected 2g+1 coefficients a_0..a_{2g} with g >= 1");
  }
  for (const auto c : coefficients) {
    if (c >= f.size()) throw InvalidArgument("coefficient " + std::to_string(c) + " outside the field");
  }
}

// Reverse-lexicographic comparison, a_{2g} first.
bool witness_less(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

std::string join_conventions(const std::vector<Convention>& cs) {
  std::string s;
  for (const auto c : cs) {
    if (!s.empty()) s += ';';
    s += to_string(c);
  }
  return s;
}

json record_json(const RateRecord& r) {
  json j;
  j["family"] = to_string(r.family);
  j["genus"] = r.genus;
  j["field_order"] = r.field_order;
  j["X"] = r.X;
  j["T"] = r.T;
  j["J"] = r.J ? json(*r.J) : json(nullptr);
  j["m"] = r.m ? json(*r.m) : json(nullptr);
  j["L"] = r.L;
  j["N"] = r.N;
  j["feasible"] = r.feasible;
  if (!r.feasible) j["violated"] = r.violated;
  j["fraction"] = std::to_string(r.rate.numerator()) + "/" + std::to_string(r.rate.denominator());
  j["decimal"] = r.decimal();
  std::vector<std::string> cs;
  for (const auto c : r.conventions) cs.push_back(to_string(c));
  j["conventions"] = cs;
  if (r.witness) {
    j["witness"] = {{"field_order", r.witness->field_order},
                    {"genus", r.witness->genus},
                    {"coefficients", r.witness->coefficients},
                    {"point_count", r.witness->point_count},
                    {"gamma", r.witness->gamma}};
  }
  return j;
}

void attach_reference(TableCell& cell, int which, const std::string& row, int column) {
  cell.reference = reference_value(which, row, column);
  if (cell.reference && !matches_reference(cell.record, *cell.reference)) {
    cell.discrepancy = true;
    if (!cell.note.empty()) cell.note += "; ";
    cell.note += "reference " + *cell.reference;
  }
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::rational:
      return "rational";
    case Family::elliptic:
      return "elliptic";
    case Family::hyperelliptic:
      return "hyperelliptic";
    case Family::hermitian:
      return "hermitian";
  }
  return "?";
}

std::string to_string(Convention c) {
  switch (c) {
    case Convention::theorem_n:
      return "theorem-N";
    case Convention::table_deg_n:
      return "table-deg-N";
    case Convention::gamma_zero:
      return "gamma-zero";
    case Convention::gamma_actual:
      return "gamma-actual";
    case Convention::gamma_positive:
      return "gamma-positive";
    case Convention::prop_formula:
      return "prop-formula";
  }
  return "?";
}

long long floor_div(long long a, long long b) {
  long long d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

std::string format_sig5(long long num, long long den) {
  if (num <= 0 || den <= 0 || num >= den) throw InvalidArgument("format_sig5 expects 0 < num < den");
  using i128 = __int128;
  int k = 0;
  i128 scaled = num;
  while (scaled < static_cast<i128>(10000) * den) {
    scaled *= 10;
    ++k;
  }
  i128 digits = (2 * scaled + den) / (2 * static_cast<i128>(den));
  if (digits == 100000) {
    digits = 10000;
    --k;
  }
  if (k <= 4) return "1.0000";
  std::string d = std::to_string(static_cast<long long>(digits));
  return "0." + std::string(static_cast<std::size_t>(k - 5), '0') + d;
}

std::string RateRecord::decimal() const {
  if (!feasible) return "-";
  return format_sig5(rate.numerator(), rate.denominator());
}

bool RateRecord::has(Convention c) const {
  return std::find(conventions.begin(), conventions.end(), c) != conventions.end();
}

CountResult count_points_hyperelliptic(const gf::Field& field, const std::vector<std::uint32_t>& coefficients) {
  check_coefficients(field, coefficients);
  CountResult r;
  r.point_count = 1;
  for (const auto v : values_of(field, coefficients)) {
    if (v == 0) {
      ++r.point_count;
      ++r.gamma;
    } else if (field.is_square(gf::Element(v))) {
      r.point_count += 2;
    }
  }
  return r;
}

HyperellipticCurveSpec make_curve_spec(const gf::Field& field, int genus, std::vector<std::uint32_t> coefficients) {
  if (static_cast<int>(coefficients.size()) != 2 * genus + 1) {
    throw InvalidArgument("genus " + std::to_string(genus) + " needs " + std::to_string(2 * genus + 1) +
                          " coefficients");
  }
  const auto c = count_points_hyperelliptic(field, coefficients);
  return {field.size(), genus, std::move(coefficients), c.point_count, c.gamma};
}

int gamma_set_size(std::uint32_t field_order, int point_count, int gamma) {
  const long long num = 2LL * field_order - point_count - gamma + 1;
  if (num % 2 != 0) throw InvalidArgument("point count and gamma have inconsistent parity");
  return static_cast<int>(num / 2);
}

int gamma_set_size_direct(const gf::Field& field, const std::vector<std::uint32_t>& coefficients) {
  check_coefficients(field, coefficients);
  int n = 0;
  for (const auto v : values_of(field, coefficients)) {
    if (field.quadratic_character(gf::Element(v)) < 0) ++n;
  }
  return n;
}

RateRecord rational_max_rate(std::uint32_t field_order, int X, int T) {
  RateRecord r;
  r.family = Family::rational;
  r.field_order = field_order;
  r.X = X;
  r.T = T;
  r.L = static_cast<int>(floor_div(static_cast<long long>(field_order) - (X + T), 2));
  r.N = r.L + X + T;
  r.feasible = r.L >= 1;
  if (!r.feasible) r.violated = "L >= 1";
  return finish(r);
}

RateRecord hyperelliptic_jmax(std::uint32_t field_order, int g, int point_count, int gamma, int X, int T) {
  const long long q = field_order;
  if (point_count > 2 * q + 1) throw InvalidArgument("point count above 2q+1");
  const long long M = X + T;
  RateRecord r;
  r.family = g == 1 ? Family::elliptic : Family::hyperelliptic;
  r.genus = g;
  r.field_order = field_order;
  r.X = X;
  r.T = T;
  long long J = 0;
  if (2LL * point_count >= 2 * q + 6LL * g + M + 4) {
    J = floor_div(2 * q - (M + 6LL * g + 2LL * gamma + 2), 4);
  } else {
    J = floor_div(point_count - (M + 6LL * g + 3 + gamma), 2);
  }
  r.J = static_cast<int>(J);
  r.L = static_cast<int>(2 * J - g);
  r.N = static_cast<int>(r.L + M + 6LL * g + 2);
  r.feasible = J >= g;
  if (!r.feasible) r.violated = "J >= g";
  r.conventions = {Convention::gamma_actual};
  return finish(r);
}

RateRecord hyperelliptic_jmax_upper(std::uint32_t field_order, int g, int X, int T) {
  const long long M = X + T;
  RateRecord r;
  r.family = g == 1 ? Family::elliptic : Family::hyperelliptic;
  r.genus = g;
  r.field_order = field_order;
  r.X = X;
  r.T = T;
  const long long J = floor_div(2LL * field_order - (M + 6LL * g + 2), 4);
  r.J = static_cast<int>(J);
  r.L = static_cast<int>(2 * J - g);
  r.N = static_cast<int>(r.L + M + 6LL * g + 2);
  r.feasible = J >= g;
  if (!r.feasible) r.violated = "J >= g";
  r.conventions = {Convention::gamma_zero};
  return finish(r);
}

Fraction hyperelliptic_rate_bound(std::uint32_t field_order, int g, int X, int T) {
  const long long q = field_order;
  const long long M = X + T;
  return Fraction(2 * q - (M + 8LL * g + 2), 2 * q + M + 4LL * g + 2);
}

RateRecord elliptic_prop_rate(std::uint32_t field_order, int point_count, int gamma, int X, int T) {
  const long long M = X + T;
  RateRecord r;
  r.family = Family::elliptic;
  r.genus = 1;
  r.field_order = field_order;
  r.X = X;
  r.T = T;
  r.L = static_cast<int>(2 * floor_div(point_count - (M + gamma + 9), 4) - 1);
  r.N = static_cast<int>(r.L + M + 8);
  r.J = (r.L + 1) / 2;
  r.feasible = r.L >= 1;
  if (!r.feasible) r.violated = "L >= 1";
  r.conventions = {Convention::prop_formula};
  return finish(r);
}

RateRecord hermitian_max_rate(int q, int X, int T, Convention convention) {
  if (convention != Convention::theorem_n && convention != Convention::table_deg_n) {
    throw InvalidArgument("Hermitian rates use theorem-N or table-deg-N");
  }
  const long long Q = q;
  const long long M = X + T;
  RateRecord r;
  r.family = Family::hermitian;
  r.genus = q * (q - 1) / 2;
  r.field_order = static_cast<std::uint32_t>(Q * Q);
  r.X = X;
  r.T = T;
  const long long m = floor_div(Q * Q * Q - 3 * Q * Q + Q + 1 - M, 2 * Q);
  r.m = static_cast<int>(m);
  r.L = static_cast<int>(m * Q - r.genus);
  if (convention == Convention::theorem_n) {
    r.N = static_cast<int>(r.L + M + 3 * Q * Q - Q - 2);
  } else {
    r.N = static_cast<int>(r.L + M + (7 * Q * Q - 3 * Q - 6) / 2);
  }
  r.feasible = m >= Q - 1;
  if (!r.feasible) r.violated = "m >= q-1";
  r.conventions = {convention};
  return finish(r);
}

PairTable achievable_pairs(std::uint32_t field_order, int g, SearchFamily family, SearchMode mode,
                           bool allow_over_budget) {
  if (g < 1) throw InvalidArgument("genus must be positive");
  const gf::Field f = field_of_order(field_order);
  if (f.characteristic() == 2) throw InvalidArgument("even characteristic is not supported");
  const std::uint32_t q = f.size();
  const int ncoef = 2 * g + 1;

  std::uint64_t work = 1;
  for (int i = 0; i < ncoef; ++i) work *= q;
  if (mode == SearchMode::exhaustive && work > kCurveSearchBudget && !allow_over_budget) {
    throw BudgetExceeded("exhaustive search over " + std::to_string(work) +
                         " curves exceeds the budget; use the reduced search");
  }

  // Reduced all-monic search fixes a_{2g} = 0 by translating x when p does not
  // divide 2g+1; the gamma-positive search moves a root to 0, so a_0 = 0.
  const bool fix_top = mode == SearchMode::reduced && family == SearchFamily::all_monic &&
                       (2 * g + 1) % static_cast<int>(f.characteristic()) != 0;
  const bool fix_a0 = mode == SearchMode::reduced && family == SearchFamily::gamma_positive;
  const bool need_root = family == SearchFamily::gamma_positive;

  std::vector<std::uint32_t> add(static_cast<std::size_t>(q) * q);
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) add[a * q + b] = f.add(gf::Element(a), gf::Element(b)).value;
  }
  std::vector<int> chi2(q);
  for (std::uint32_t v = 0; v < q; ++v) chi2[v] = v == 0 ? 1 : (f.is_square(gf::Element(v)) ? 2 : 0);
  std::vector<std::vector<std::uint32_t>> xp(static_cast<std::size_t>(ncoef) + 1, std::vector<std::uint32_t>(q));
  for (int i = 0; i <= ncoef; ++i) {
    for (std::uint32_t x = 0; x < q; ++x) xp[i][x] = f.pow(gf::Element(x), i).value;
  }

  PairTable out;
  out.field_order = q;
  out.genus = g;
  out.family = family;
  out.mode = mode;

  // High coefficients a_1..a_{2g}; digit 2g is most significant.
  const int nhigh = 2 * g;
  std::vector<std::uint32_t> hi(static_cast<std::size_t>(nhigh) + 1, 0);
  std::uint64_t outer = 1;
  for (int i = 1; i <= nhigh; ++i) outer *= (i == nhigh && fix_top) ? 1 : q;
  std::vector<std::uint32_t> v(q);
  const std::uint32_t a0_end = fix_a0 ? 1 : q;
  for (std::uint64_t idx = 0; idx < outer; ++idx) {
    std::uint64_t rest = idx;
    for (int i = nhigh; i >= 1; --i) {
      if (i == nhigh && fix_top) {
        hi[i] = 0;
        continue;
      }
      std::uint64_t place = 1;
      for (int k = 1; k < i; ++k) place *= q;
      hi[i] = static_cast<std::uint32_t>(rest / place);
      rest %= place;
    }
    for (std::uint32_t x = 0; x < q; ++x) {
      gf::Element acc(xp[ncoef][x]);
      for (int i = 1; i <= nhigh; ++i) {
        if (hi[i] != 0) acc = f.add(acc, f.mul(gf::Element(hi[i]), gf::Element(xp[i][x])));
      }
      v[x] = acc.value;
    }
    for (std::uint32_t a0 = 0; a0 < a0_end; ++a0) {
      int count = 1;
      int gamma = 0;
      for (std::uint32_t x = 0; x < q; ++x) {
        const std::uint32_t w = add[v[x] * q + a0];
        count += chi2[w];
        gamma += w == 0;
      }
      if (need_root && gamma == 0) continue;
      const auto key = std::make_pair(count, gamma);
      if (out.witnesses.count(key)) continue;
      std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(ncoef));
      coeffs[0] = a0;
      for (int i = 1; i <= nhigh; ++i) coeffs[i] = hi[i];
      out.witnesses.emplace(key, std::move(coeffs));
    }
  }
  return out;
}

RateRecord best_rate(const PairTable& pairs, int X, int T) {
  std::optional<RateRecord> best;
  for (const auto& [key, coeffs] : pairs.witnesses) {
    auto r = hyperelliptic_jmax(pairs.field_order, pairs.genus, key.first, key.second, X, T);
    if (!r.feasible) continue;
    r.witness = HyperellipticCurveSpec{pairs.field_order, pairs.genus, coeffs, key.first, key.second};
    if (!best || *r.J > *best->J || (*r.J == *best->J && witness_less(coeffs, best->witness->coefficients))) {
      best = std::move(r);
    }
  }
  RateRecord out;
  if (best) {
    out = *best;
  } else {
    out.family = pairs.genus == 1 ? Family::elliptic : Family::hyperelliptic;
    out.genus = pairs.genus;
    out.field_order = pairs.field_order;
    out.X = X;
    out.T = T;
    out.feasible = false;
    out.violated = "no curve gives J >= g";
    out.conventions = {Convention::gamma_actual};
    out = finish(out);
  }
  if (pairs.family == SearchFamily::gamma_positive) out.conventions.push_back(Convention::gamma_positive);
  return out;
}

RateRecord curve_search_best_rate(std::uint32_t field_order, int g, int X, int T, SearchFamily family,
                                  SearchMode mode) {
  return best_rate(achievable_pairs(field_order, g, family, mode), X, T);
}

long long P_qM(long long q, long long M) {
  return -3 * q * q * q * q + (M + 3) * q * q * q - 2 * (M - 2) * q * q - 3 * (M + 2) * q + (M - 12);
}

long long P_qgM(long long q, long long g, long long M) {
  return -6 * q * q * q * q + (6 * g + M + 4) * q * q * q - (3 * M - 2) * q * q - (8 * g + M + 2) * q +
         (2 * g * M - 10 * g - M - 2);
}

namespace {

bool beats(const RateRecord& a, const RateRecord& b) {
  if (!a.feasible) return false;
  if (!b.feasible) return true;
  return a.rate > b.rate;
}

}  // namespace

ComparisonReport elliptic_beats_rational(std::uint32_t field_order, int point_count, int gamma, int X, int T) {
  const long long q = field_order;
  const long long M = X + T;
  ComparisonReport rep;
  rep.name = "elliptic-beats-rational";
  rep.condition = static_cast<long long>(point_count) * M >= q * (M + 8) + (gamma + 7LL) * M;
  const auto e = elliptic_prop_rate(field_order, point_count, gamma, X, T);
  const auto x = rational_max_rate(field_order, X, T);
  rep.conclusion = beats(e, x);
  rep.agreement = !rep.condition || rep.conclusion;
  rep.rates = {e, x};
  return rep;
}

ComparisonReport hermitian_beats_elliptic(int q, int X, int T) {
  const long long Q = q;
  const long long M = X + T;
  const auto F = static_cast<std::uint32_t>(Q * Q);
  const int count = static_cast<int>(Q * Q + 2 * Q + 1);
  const int gamma = (Q * Q + 2 * Q) % 2 == 0 ? 0 : 1;
  ComparisonReport rep;
  rep.name = "hermitian-beats-elliptic";
  rep.condition = q >= 7 && M >= 3 * (Q + 2);
  const auto h = hermitian_max_rate(q, X, T, Convention::theorem_n);
  const auto e = elliptic_prop_rate(F, count, gamma, X, T);
  const auto u = hyperelliptic_jmax(F, 1, count, gamma, X, T);
  rep.conclusion = beats(h, e);
  rep.agreement = !rep.condition || rep.conclusion;
  rep.rates = {h, e, u};
  std::ostringstream os;
  os << "P(q,M)=" << P_qM(Q, M) << " P(q,3q+6)=" << P_qM(Q, 3 * Q + 6) << " elliptic count=" << count
     << " gamma=" << gamma << " hermitian_beats_unified_g1=" << (beats(h, u) ? "true" : "false");
  rep.detail = os.str();
  return rep;
}

ComparisonReport hermitian_beats_hyperelliptic(int q, int g, int X, int T) {
  const long long Q = q;
  const long long M = X + T;
  const auto F = static_cast<std::uint32_t>(Q * Q);
  ComparisonReport rep;
  rep.name = "hermitian-beats-hyperelliptic";
  rep.condition = M >= 3 * (2 * Q + 3) && ((g == 1 && q > 31) || (g > 1 && q > 5));
  const auto h = hermitian_max_rate(q, X, T, Convention::theorem_n);
  const auto y = hyperelliptic_jmax_upper(F, g, X, T);
  rep.conclusion = beats(h, y);
  rep.agreement = !rep.condition || rep.conclusion;
  rep.rates = {h, y};
  std::ostringstream os;
  os << "P(q,g,M)=" << P_qgM(Q, g, M) << " P(q,g,6q+9)=" << P_qgM(Q, g, 6 * Q + 9);
  rep.detail = os.str();
  return rep;
}

EllipticConsistency elliptic_consistency(std::uint32_t field_order, int point_count, int gamma, int X, int T) {
  EllipticConsistency c;
  const auto cmp = elliptic_beats_rational(field_order, point_count, gamma, X, T);
  c.prop_hypothesis = cmp.condition;
  c.prop = cmp.rates[0];
  c.rational = cmp.rates[1];
  c.unified = hyperelliptic_jmax(field_order, 1, point_count, gamma, X, T);
  const bool prop_wins = beats(c.prop, c.rational);
  const bool unified_wins = beats(c.unified, c.rational);
  const bool unified_not_worse = !c.prop.feasible || (c.unified.feasible && c.unified.rate >= c.prop.rate);
  c.agree = !c.prop_hypothesis || (prop_wins && unified_wins && unified_not_worse);
  return c;
}

bool matches_reference(const RateRecord& r, const std::string& reference) {
  if (reference == "-") return !r.feasible;
  if (!r.feasible) return false;
  return std::fabs(r.value() - std::stod(reference)) <= 1e-5 + 1e-12;
}

TableOptions TableOptions::from_env() {
  TableOptions o;
  if (const char* v = std::getenv("TABLE1_FULL"); v != nullptr && std::string(v) == "1") o.table1_full = true;
  return o;
}

Table table1(const TableOptions& opts) {
  Table t;
  t.which = 1;
  t.title = "Best hyperelliptic rates over F_q, g = 1, 2, X = T";
  for (int T = 1; T <= 14; ++T) t.columns.push_back("T=" + std::to_string(T));
  t.config.push_back(std::string("table1_full=") + (opts.table1_full ? "1" : "0"));
  for (const auto q : opts.table1_fields) {
    const SearchMode mode = (q <= 19 || opts.table1_full) ? SearchMode::exhaustive : SearchMode::reduced;
    const std::string mode_name = mode == SearchMode::exhaustive ? "exhaustive" : "reduced";
    t.config.push_back("q=" + std::to_string(q) + " search=" + mode_name);
    for (int g = 1; g <= 2; ++g) {
      const std::string label = "q=" + std::to_string(q) + " g=" + std::to_string(g);
      const auto all = achievable_pairs(q, g, SearchFamily::all_monic, mode, true);
      if (g == 1) {
        TableRow row{label, {Convention::gamma_actual}, {}, "all monic f, search " + mode_name};
        for (int T = 1; T <= 14; ++T) {
          TableCell cell{best_rate(all, T, T), std::nullopt, false, ""};
          attach_reference(cell, 1, label, T - 1);
          row.cells.push_back(std::move(cell));
        }
        t.rows.push_back(std::move(row));
        continue;
      }
      const auto pos = achievable_pairs(q, g, SearchFamily::gamma_positive, mode, true);
      TableRow row{label, {Convention::gamma_actual, Convention::gamma_positive}, {},
                   "f with a root in F_q, search " + mode_name};
      TableRow alt{label + " all-monic", {Convention::gamma_actual}, {}, "all monic f, search " + mode_name};
      for (int T = 1; T <= 14; ++T) {
        TableCell cell{best_rate(pos, T, T), std::nullopt, false, ""};
        TableCell other{best_rate(all, T, T), std::nullopt, false, ""};
        if (cell.record.decimal() != other.record.decimal()) {
          cell.discrepancy = true;
          cell.note = "all-monic search gives " + other.record.decimal();
        }
        attach_reference(cell, 1, label, T - 1);
        row.cells.push_back(std::move(cell));
        alt.cells.push_back(std::move(other));
      }
      t.rows.push_back(std::move(row));
      t.rows.push_back(std::move(alt));
    }
  }
  return t;
}

Table table2() {
  const std::uint32_t F = 841;
  const gf::Field f = field_of_order(F);
  Table t;
  t.which = 2;
  t.title = "Rational and y^2 = x^{2g+1} + 1 rates over F_841, X = T";
  for (int T = 15; T <= 210; T += 15) t.columns.push_back("T=" + std::to_string(T));
  t.config.push_back("field_order=841");

  TableRow rational{"g=0", {}, {}, "rational curve"};
  for (int c = 0; c < 14; ++c) {
    const int T = 15 * (c + 1);
    TableCell cell{rational_max_rate(F, T, T), std::nullopt, false, ""};
    attach_reference(cell, 2, "g=0", c);
    rational.cells.push_back(std::move(cell));
  }
  t.rows.push_back(std::move(rational));

  for (const int g : {1, 2, 7}) {
    std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(2 * g + 1), 0);
    coeffs[0] = 1;
    const auto spec = make_curve_spec(f, g, coeffs);
    const std::string label = "g=" + std::to_string(g);
    TableRow row{label,
                 {Convention::gamma_actual},
                 {},
                 "count=" + std::to_string(spec.point_count) + " gamma=" + std::to_string(spec.gamma)};
    for (int c = 0; c < 14; ++c) {
      const int T = 15 * (c + 1);
      TableCell cell{hyperelliptic_jmax(F, g, spec.point_count, spec.gamma, T, T), std::nullopt, false, ""};
      cell.record.witness = spec;
      attach_reference(cell, 2, label, c);
      row.cells.push_back(std::move(cell));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table table3() {
  const int q = 11;
  const std::uint32_t F = 121;
  Table t;
  t.which = 3;
  t.title = "Maximal hyperelliptic and Hermitian rates over F_121, X = T";
  for (int T = 5; T <= 65; T += 5) t.columns.push_back("T=" + std::to_string(T));
  t.config.push_back("q=11");
  for (int g = 1; g <= 5; ++g) {
    const int count = static_cast<int>(F) + 1 + 2 * g * q;
    const std::string label = "g=" + std::to_string(g);
    TableRow row{label,
                 {Convention::gamma_zero},
                 {},
                 "count=" + std::to_string(count) + ", gamma taken as 0"};
    for (int c = 0; c < 13; ++c) {
      const int T = 5 * (c + 1);
      TableCell cell{hyperelliptic_jmax(F, g, count, 0, T, T), std::nullopt, false, ""};
      cell.record.conventions = {Convention::gamma_zero};
      attach_reference(cell, 3, label, c);
      row.cells.push_back(std::move(cell));
    }
    t.rows.push_back(std::move(row));
  }
  TableRow herm{"hermitian", {Convention::table_deg_n}, {}, "N = L+X+T+(7q^2-3q-6)/2"};
  TableRow herm_thm{"hermitian theorem-N", {Convention::theorem_n}, {}, "N = L+X+T+3q^2-q-2"};
  for (int c = 0; c < 13; ++c) {
    const int T = 5 * (c + 1);
    TableCell cell{hermitian_max_rate(q, T, T, Convention::table_deg_n), std::nullopt, false, ""};
    attach_reference(cell, 3, "hermitian", c);
    herm.cells.push_back(std::move(cell));
    herm_thm.cells.push_back(TableCell{hermitian_max_rate(q, T, T, Convention::theorem_n), std::nullopt, false, ""});
  }
  t.rows.push_back(std::move(herm));
  t.rows.push_back(std::move(herm_thm));
  return t;
}

Table emit_table(int which, const TableOptions& opts) {
  switch (which) {
    case 1:
      return table1(opts);
    case 2:
      return table2();
    case 3:
      return table3();
    default:
      throw InvalidArgument("table must be 1, 2 or 3, got " + std::to_string(which));
  }
}

std::string render_markdown(const Table& t) {
  std::ostringstream os;
  os << "### Table " << t.which << ": " << t.title << "\n\n";
  os << "| row | conventions |";
  for (const auto& c : t.columns) os << ' ' << c << " |";
  os << "\n|---|---|";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << "---|";
  os << '\n';
  std::vector<std::string> notes;
  for (const auto& r : t.rows) {
    os << "| " << r.label << " | " << join_conventions(r.conventions) << " |";
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
      const auto& c = r.cells[i];
      os << ' ' << c.record.decimal() << (c.discrepancy ? " (!)" : "") << " |";
      if (c.discrepancy) notes.push_back(r.label + ", " + t.columns[i] + ": " + c.note);
    }
    os << '\n';
  }
  os << '\n';
  for (const auto& r : t.rows) {
    if (!r.note.empty()) os << "- " << r.label << ": " << r.note << '\n';
  }
  if (!notes.empty()) {
    os << "\nFlagged cells (!):\n";
    for (const auto& n : notes) os << "- " << n << '\n';
  }
  return os.str();
}

std::string render_csv(const Table& t) {
  std::ostringstream os;
  os << "row";
  for (const auto& c : t.columns) os << ',' << c;
  os << '\n';
  for (const auto& r : t.rows) {
    os << r.label;
    for (const auto& c : r.cells) os << ',' << c.record.decimal();
    os << '\n';
  }
  return os.str();
}

std::string render_json(const Table& t) {
  json j;
  j["table"] = t.which;
  j["title"] = t.title;
  j["columns"] = t.columns;
  j["config"] = t.config;
  j["rows"] = json::array();
  for (const auto& r : t.rows) {
    json row;
    row["label"] = r.label;
    std::vector<std::string> cs;
    for (const auto c : r.conventions) cs.push_back(to_string(c));
    row["conventions"] = cs;
    row["note"] = r.note;
    row["cells"] = json::array();
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
      const auto& c = r.cells[i];
      json cell = record_json(c.record);
      cell["column"] = t.columns[i];
      cell["reference"] = c.reference ? json(*c.reference) : json(nullptr);
      cell["discrepancy"] = c.discrepancy;
      cell["note"] = c.note;
      row["cells"].push_back(std::move(cell));
    }
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

}  // namespace hermpir::atlas
