#pragma once
//
// Rate formulas for retrieval schemes built on rational, elliptic,
// hyperelliptic and Hermitian curves, hyperelliptic curve searches, the
// comparison predicates between families, and the three rate tables.

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hermpir/gf.hpp"

namespace hermpir::atlas {

using Fraction = boost::rational<long long>;

enum class Family { rational, elliptic, hyperelliptic, hermitian };

enum class Convention {
  theorem_n,       // Hermitian N = L+X+T+3q^2-q-2
  table_deg_n,     // Hermitian N = L+X+T+(7q^2-3q-6)/2
  gamma_zero,      // hyperelliptic rows evaluated with gamma = 0
  gamma_actual,    // gamma counted on the curve
  gamma_positive,  // search restricted to curves with a rational root of f
  prop_formula,    // elliptic L = 2 floor((#E-(X+T+gamma+9))/4) - 1
};

std::string to_string(Family f);
std::string to_string(Convention c);

struct HyperellipticCurveSpec {
  std::uint32_t field_order = 0;
  int genus = 0;
  // a_0 .. a_{2g} as packed field indices; f = x^{2g+1} + sum a_i x^i.
  std::vector<std::uint32_t> coefficients;
  int point_count = 0;
  int gamma = 0;
};

struct RateRecord {
  Family family = Family::rational;
  int genus = 0;
  std::uint32_t field_order = 0;
  int X = 0;
  int T = 0;
  std::optional<int> J;
  std::optional<int> m;
  int L = 0;
  int N = 0;
  bool feasible = false;
  std::string violated;  // set when infeasible
  Fraction rate{0};
  std::vector<Convention> conventions;
  std::optional<HyperellipticCurveSpec> witness;

  // 5 significant digits, round half up; "-" when infeasible.
  std::string decimal() const;
  double value() const { return boost::rational_cast<double>(rate); }
  bool has(Convention c) const;
};

// Round-half-up decimal of num/den with 5 significant digits, 0 < num < den.
std::string format_sig5(long long num, long long den);

// Floor division rounding toward negative infinity.
long long floor_div(long long a, long long b);

// Point count (including P_inf) and number of roots of f in the field.
// Throws InvalidArgument in characteristic 2.
struct CountResult {
  int point_count = 0;
  int gamma = 0;
};
CountResult count_points_hyperelliptic(const gf::Field& field, const std::vector<std::uint32_t>& coefficients);
HyperellipticCurveSpec make_curve_spec(const gf::Field& field, int genus, std::vector<std::uint32_t> coefficients);

// (2q - #Y - gamma + 1) / 2.
int gamma_set_size(std::uint32_t field_order, int point_count, int gamma);
// Number of x with f(x) a non-square.
int gamma_set_size_direct(const gf::Field& field, const std::vector<std::uint32_t>& coefficients);

RateRecord rational_max_rate(std::uint32_t field_order, int X, int T);
RateRecord hyperelliptic_jmax(std::uint32_t field_order, int g, int point_count, int gamma, int X, int T);
RateRecord hyperelliptic_jmax_upper(std::uint32_t field_order, int g, int X, int T);
// Closed-form bound (2q-(X+T+8g+2)) / (2q+X+T+4g+2).
Fraction hyperelliptic_rate_bound(std::uint32_t field_order, int g, int X, int T);
RateRecord elliptic_prop_rate(std::uint32_t field_order, int point_count, int gamma, int X, int T);
RateRecord hermitian_max_rate(int q, int X, int T, Convention convention);

enum class SearchFamily { all_monic, gamma_positive };
enum class SearchMode { exhaustive, reduced };

inline constexpr std::uint64_t kCurveSearchBudget = 30'000'000;

// Achievable (point_count, gamma) pairs with the lexicographically first
// witness, reading coefficients from a_{2g} down to a_0.
struct PairTable {
  std::uint32_t field_order = 0;
  int genus = 0;
  SearchFamily family = SearchFamily::all_monic;
  SearchMode mode = SearchMode::exhaustive;
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> witnesses;
};

// Throws BudgetExceeded in exhaustive mode when field_order^{2g+1} exceeds
// kCurveSearchBudget, unless allow_over_budget.
PairTable achievable_pairs(std::uint32_t field_order, int g, SearchFamily family, SearchMode mode,
                           bool allow_over_budget = false);
RateRecord best_rate(const PairTable& pairs, int X, int T);
RateRecord curve_search_best_rate(std::uint32_t field_order, int g, int X, int T,
                                  SearchFamily family = SearchFamily::all_monic,
                                  SearchMode mode = SearchMode::exhaustive);

// The polynomials as stated with the two comparison results.
long long P_qM(long long q, long long M);
long long P_qgM(long long q, long long g, long long M);

struct ComparisonReport {
  std::string name;
  bool condition = false;    // the sufficient condition as stated
  bool conclusion = false;   // computed from both rates
  bool agreement = false;    // condition implies conclusion
  std::vector<RateRecord> rates;
  std::string detail;
};

// #E >= q(1 + 8/(X+T)) + gamma + 7 implies elliptic beats rational.
ComparisonReport elliptic_beats_rational(std::uint32_t field_order, int point_count, int gamma, int X, int T);
// Maximal elliptic curve over F_{q^2} against the Hermitian curve.
ComparisonReport hermitian_beats_elliptic(int q, int X, int T);
// gamma = 0 hyperelliptic bound over F_{q^2} against the Hermitian curve.
ComparisonReport hermitian_beats_hyperelliptic(int q, int g, int X, int T);

// The two elliptic constructions agree on beating the rational rate, and
// the unified one is never worse.
struct EllipticConsistency {
  bool prop_hypothesis = false;
  RateRecord prop;
  RateRecord unified;
  RateRecord rational;
  bool agree = false;
};
EllipticConsistency elliptic_consistency(std::uint32_t field_order, int point_count, int gamma, int X, int T);

// Tables.
struct TableCell {
  RateRecord record;
  std::optional<std::string> reference;  // printed reference value, if any
  bool discrepancy = false;
  std::string note;
};

struct TableRow {
  std::string label;
  std::vector<Convention> conventions;
  std::vector<TableCell> cells;
  std::string note;
};

struct Table {
  int which = 0;
  std::string title;
  std::vector<std::string> columns;
  std::vector<TableRow> rows;
  std::vector<std::string> config;  // resolved options, one "key=value" each
};

struct TableOptions {
  // Table 1 fields; q >= 23 use the reduced search unless table1_full.
  std::vector<std::uint32_t> table1_fields{11, 13, 17, 19, 23, 25, 27, 29};
  bool table1_full = false;
  // Reads TABLE1_FULL from the environment.
  static TableOptions from_env();
};

Table table1(const TableOptions& opts = {});
Table table2();
Table table3();
Table emit_table(int which, const TableOptions& opts = {});

std::string render_markdown(const Table& t);
std::string render_csv(const Table& t);
std::string render_json(const Table& t);

// Printed reference value for a cell, or nullopt.
std::optional<std::string> reference_value(int which, const std::string& row, int column);
// |value - reference| <= 1e-5, dashes matching dashes.
bool matches_reference(const RateRecord& r, const std::string& reference);

}  // namespace hermpir::atlas
