#pragma once
//
// Evaluation codes on curve points: generator matrices, the designed distance
// N - deg G, the dual bound deg G - 2g + 2, column independence checks and
// brute-force distances for tiny codes.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hermpir/hermitian.hpp"
#include "hermpir/linalg.hpp"

namespace hermpir::codes {

using gf::Element;
using curve::CurveFunction;
using curve::Point;
using linalg::Matrix;

inline constexpr std::uint64_t kMaxExhaustiveSubsets = 1'000'000;
inline constexpr std::uint64_t kMaxCodewords = 10'000'000;

struct EvalCode {
  std::vector<Point> points;
  std::vector<CurveFunction> functions;
  Matrix gen;  // functions.size() x points.size()
  int genus = 0;
  int deg_g = 0;
};

// Throws curve::PoleError when a function has a pole at one of the points.
Matrix evaluation_matrix(const std::vector<CurveFunction>& functions, const std::vector<Point>& points);
EvalCode generator_matrix(std::vector<CurveFunction> functions, std::vector<Point> points, int genus, int deg_g);

// N - deg G; throws InvalidArgument when deg G >= N.
int goppa_designed_distance(const EvalCode& code);
// deg G - 2g + 2, possibly nonpositive.
int dual_distance_bound(const EvalCode& code);

struct Exhaustive {};
struct Sampled {
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};
using SubsetMode = std::variant<Exhaustive, Sampled>;

struct IndependenceResult {
  bool independent = true;
  std::uint64_t subsets_checked = 0;
  std::optional<std::vector<std::size_t>> counterexample;  // column indices
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Checks that every tested w-subset of columns is linearly independent.
// Exhaustive mode throws BudgetExceeded above kMaxExhaustiveSubsets subsets.
IndependenceResult check_w_wise_independence(const Matrix& gen, std::size_t w, const SubsetMode& mode);
inline IndependenceResult check_w_wise_independence(const EvalCode& code, std::size_t w, const SubsetMode& mode) {
  return check_w_wise_independence(code.gen, w, mode);
}

// Minimum weight of a nonzero codeword in the row space of gen. Throws
// BudgetExceeded when |F|^rows > kMaxCodewords. Returns 0 for the zero code.
std::size_t min_distance_bruteforce(const Matrix& gen);
// Same for the dual code {c : gen c = 0}.
std::size_t dual_min_distance_bruteforce(const Matrix& gen);

// One line per row, each cell the coefficient tuple of the entry.
std::string to_csv(const Matrix& m);

}  // namespace hermpir::codes
