#include "hermpir/codes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hermpir::codes {

namespace {

bool columns_independent(const Matrix& gen, const std::vector<std::size_t>& cols) {
  if (cols.size() > gen.rows()) return false;
  return linalg::rank(gen.select_cols(cols)) == cols.size();
}

std::size_t min_weight_of_span(const Matrix& basis) {
  const auto& f = basis.field();
  const std::size_t k = basis.rows();
  const std::size_t n = basis.cols();
  if (k == 0) return 0;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= f.size();
    if (total > kMaxCodewords) throw BudgetExceeded("codeword enumeration exceeds the budget");
  }
  std::size_t best = n + 1;
  std::vector<std::uint32_t> coeff(k, 0);
  std::vector<Element> word(n);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    // Increment the base-|F| counter.
    for (std::size_t i = 0; i < k; ++i) {
      if (++coeff[i] < f.size()) break;
      coeff[i] = 0;
    }
    std::fill(word.begin(), word.end(), Element{});
    for (std::size_t i = 0; i < k; ++i) {
      if (coeff[i] == 0) continue;
      const Element c(coeff[i]);
      for (std::size_t j = 0; j < n; ++j) word[j] = f.add(word[j], f.mul(c, basis.at(i, j)));
    }
    const auto w = static_cast<std::size_t>(std::count_if(word.begin(), word.end(), [](Element e) { return !e.is_zero(); }));
    if (w > 0) best = std::min(best, w);
  }
  return best > n ? 0 : best;
}

}  // namespace

Matrix evaluation_matrix(const std::vector<CurveFunction>& functions, const std::vector<Point>& points) {
  if (functions.empty()) throw InvalidArgument("evaluation matrix needs at least one function");
  Matrix m(functions.front().tower().field_ptr(), functions.size(), points.size());
  for (std::size_t r = 0; r < functions.size(); ++r) {
    for (std::size_t c = 0; c < points.size(); ++c) m.set(r, c, functions[r].evaluate(points[c]));
  }
  return m;
}

EvalCode generator_matrix(std::vector<CurveFunction> functions, std::vector<Point> points, int genus, int deg_g) {
  for (const auto& p : points) {
    if (p.at_infinity) throw InvalidArgument("evaluation points must be affine");
  }
  Matrix gen = evaluation_matrix(functions, points);
  return EvalCode{std::move(points), std::move(functions), std::move(gen), genus, deg_g};
}

int goppa_designed_distance(const EvalCode& code) {
  const int n = static_cast<int>(code.points.size());
  if (code.deg_g >= n) throw InvalidArgument("designed distance needs deg G < N");
  return n - code.deg_g;
}

int dual_distance_bound(const EvalCode& code) { return code.deg_g - 2 * code.genus + 2; }

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (std::uint64_t{1} << 62)) return r;
  }
  return r;
}

IndependenceResult check_w_wise_independence(const Matrix& gen, std::size_t w, const SubsetMode& mode) {
  const std::size_t n = gen.cols();
  if (w > n) throw InvalidArgument("w exceeds the number of columns");
  IndependenceResult res;
  if (w == 0) return res;

  if (std::holds_alternative<Exhaustive>(mode)) {
    if (binomial(n, w) > kMaxExhaustiveSubsets) {
      throw BudgetExceeded("C(" + std::to_string(n) + "," + std::to_string(w) + ") subsets exceed the exhaustive budget");
    }
    std::vector<std::size_t> idx(w);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      ++res.subsets_checked;
      if (!columns_independent(gen, idx)) {
        res.independent = false;
        res.counterexample = idx;
        return res;
      }
      std::size_t i = w;
      while (i > 0 && idx[i - 1] == n - w + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < w; ++j) idx[j] = idx[j - 1] + 1;
    }
    return res;
  }

  const auto& s = std::get<Sampled>(mode);
  gf::Rng rng(s.seed);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> pick;
  for (std::uint64_t t = 0; t < s.count; ++t) {
    pick.clear();
    std::sample(all.begin(), all.end(), std::back_inserter(pick), static_cast<std::ptrdiff_t>(w), rng);
    ++res.subsets_checked;
    if (!columns_independent(gen, pick)) {
      res.independent = false;
      res.counterexample = pick;
      return res;
    }
  }
  return res;
}

std::size_t min_distance_bruteforce(const Matrix& gen) {
  const auto e = linalg::rref(gen);
  std::vector<std::size_t> rows(e.pivots.size());
  std::iota(rows.begin(), rows.end(), 0);
  return min_weight_of_span(e.reduced.select_rows(rows));
}

std::size_t dual_min_distance_bruteforce(const Matrix& gen) {
  const auto kernel = linalg::kernel_basis(gen);
  Matrix basis(gen.field_ptr(), kernel.size(), gen.cols());
  for (std::size_t r = 0; r < kernel.size(); ++r) {
    for (std::size_t c = 0; c < gen.cols(); ++c) basis.set(r, c, kernel[r][c]);
  }
  return min_weight_of_span(basis);
}

std::string to_csv(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ',';
      os << '"' << m.field().to_string(m.at(r, c)) << '"';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace hermpir::codes
