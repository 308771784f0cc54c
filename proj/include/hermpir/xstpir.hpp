#pragma once
//
// X-secure, T-private retrieval over Hermitian evaluation codes, run against an
// in-process fleet of N servers.
//
// Storage: y[mu][l](P_n) = s_{mu,l} + z_{mu,l}(P_n), z drawn from the span of
// h_l^{-1} L((X+2g-1)P_inf). Queries: g[mu][l](P_n) = [mu == want] h_l(P_n) +
// r_{mu,l}(P_n), r drawn from L((T+2g-1)P_inf). Each server returns
// sum y * g, and the user solves [B_info | B_noise] for the first L
// coordinates.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hermpir/codes.hpp"
#include "hermpir/hermitian.hpp"
#include "hermpir/linalg.hpp"

namespace hermpir::pir {

using gf::Element;
using linalg::Matrix;

class InfeasibleParams : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DecodeFailure : public Error {
 public:
  using Error::Error;
};

struct SchemeParams {
  int q = 0;
  int X = 0;
  int T = 0;
  int m = 0;
  int g = 0;
  int L = 0;
  int N = 0;
  int M = 1;
  std::uint64_t seed = 0;

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

// m defaults to floor((q^3 - 3q^2 + q + 1 - (X+T)) / (2q)). Throws
// InfeasibleParams naming the first violated condition.
SchemeParams validate_params(int q, int X, int T, std::optional<int> m = std::nullopt, int files = 1,
                             std::uint64_t seed = 0);

// Zero suppresses the random part, for tests.
enum class Noise { random, zero };

struct BuildOptions {
  // Append the explicit product spanning set even when the two-point
  // monomials already contain every noise product.
  bool force_fallback = false;
};

class SchemeInstance {
 public:
  static SchemeInstance build(const SchemeParams& params, const BuildOptions& opts = {});

  const SchemeParams& params() const { return params_; }
  const curve::HermitianCurve& curve() const { return curve_; }
  const gf::Field& field() const { return curve_.field(); }
  const std::vector<Element>& alphas() const { return alphas_; }
  const std::vector<curve::Point>& data_points() const { return data_points_; }
  // Affine points other than P_0 and the data points, in enumeration order.
  const std::vector<curve::Point>& pool_points() const { return pool_points_; }
  const std::vector<curve::Point>& server_points() const { return server_points_; }
  const std::vector<std::size_t>& server_pool_indices() const { return server_pool_indices_; }

  const std::vector<curve::BasisFunction>& info_functions() const { return info_functions_; }
  const std::vector<curve::MonomialIndex>& noise_monomials() const { return noise_monomials_; }
  const std::vector<curve::MonomialIndex>& sec_monomials() const { return sec_monomials_; }
  const std::vector<curve::MonomialIndex>& priv_monomials() const { return priv_monomials_; }
  int noise_expected_dimension() const { return noise_expected_dimension_; }
  bool noise_fallback_used() const { return fallback_used_; }
  std::size_t pool_rank() const { return pool_rank_; }

  // Evaluations at the server points.
  const Matrix& b_info() const { return b_info_; }              // N x L
  const Matrix& b_noise() const { return b_noise_; }            // N x (noise columns)
  const Matrix& decode_matrix() const { return decode_; }       // [b_info | b_noise]
  const std::vector<Matrix>& sec_basis() const { return sec_; }  // per l, N x (X+g)
  const Matrix& priv_basis() const { return priv_; }            // N x (T+g)

 private:
  explicit SchemeInstance(const SchemeParams& p);

  SchemeParams params_;
  curve::HermitianCurve curve_;
  std::vector<Element> alphas_;
  std::vector<curve::Point> data_points_;
  std::vector<curve::Point> pool_points_;
  std::vector<curve::Point> server_points_;
  std::vector<std::size_t> server_pool_indices_;
  std::vector<curve::BasisFunction> info_functions_;
  std::vector<curve::MonomialIndex> noise_monomials_;
  std::vector<curve::MonomialIndex> sec_monomials_;
  std::vector<curve::MonomialIndex> priv_monomials_;
  int noise_expected_dimension_ = 0;
  bool fallback_used_ = false;
  std::size_t pool_rank_ = 0;
  Matrix b_info_;
  Matrix b_noise_;
  Matrix decode_;
  std::vector<Matrix> sec_;
  Matrix priv_;
};

// Row-major [mu][l][n] grid shared by storage shares and queries.
struct Grid {
  int M = 0;
  int L = 0;
  int N = 0;
  std::vector<Element> values;

  Grid() = default;
  Grid(int files, int fragments, int servers)
      : M(files), L(fragments), N(servers), values(static_cast<std::size_t>(files) * fragments * servers) {}

  Element& at(int mu, int l, int n) { return values[index(mu, l, n)]; }
  Element at(int mu, int l, int n) const { return values[index(mu, l, n)]; }
  // The M*L symbols held by server n, ordered (mu, l).
  std::vector<Element> server_slice(int n) const;

 private:
  std::size_t index(int mu, int l, int n) const {
    return (static_cast<std::size_t>(mu) * L + l) * N + n;
  }
};

using StorageShares = Grid;
using QueryBundle = Grid;

// files: M rows of L symbols. Noise coefficients come from rng.
StorageShares encode_storage(const SchemeInstance& inst, const std::vector<std::vector<Element>>& files, gf::Rng& rng,
                             Noise noise = Noise::random);
// desired is 0-based.
QueryBundle make_queries(const SchemeInstance& inst, int desired, gf::Rng& rng, Noise noise = Noise::random);

Element server_answer(const gf::Field& f, const std::vector<Element>& shares, const std::vector<Element>& queries);
std::vector<Element> collect_answers(const SchemeInstance& inst, const StorageShares& shares,
                                     const QueryBundle& queries);
// Throws DecodeFailure when the answers are inconsistent.
std::vector<Element> reconstruct(const SchemeInstance& inst, const std::vector<Element>& answers);

struct IndependenceCheck {
  std::string family;  // "sec[l]" or "priv"
  std::size_t w = 0;
  bool exhaustive = true;
  codes::IndependenceResult result;
};

struct CertifyOptions {
  std::uint64_t seed = 1;
  int products_per_family = 100;
  std::uint64_t sampled_subsets = 2000;
};

struct CertifyReport {
  SchemeParams params;
  int rate_num = 0;
  int rate_den = 0;
  std::vector<int> sec_dual_bounds;
  int priv_dual_bound = 0;
  bool sec_bounds_ok = false;
  bool priv_bound_ok = false;
  std::vector<IndependenceCheck> independence;
  bool independence_ok = false;
  int noise_count = 0;
  int noise_expected = 0;
  bool noise_count_ok = false;
  bool fallback_used = false;
  int products_tested = 0;
  bool noise_contained = false;
  std::size_t decode_rank = 0;
  std::size_t expected_rank = 0;
  bool rank_ok = false;
  std::size_t info_rank = 0;
  std::size_t noise_rank = 0;
  bool rank_additive = false;

  bool all_passed() const;
};

CertifyReport certify_instance(const SchemeInstance& inst, const CertifyOptions& opts = {});

// Pointwise product of two evaluation vectors.
std::vector<Element> hadamard(const gf::Field& f, const std::vector<Element>& a, const std::vector<Element>& b);
// sum_k coeff[k] * column k of m.
std::vector<Element> combine_columns(const Matrix& m, const std::vector<Element>& coeff);

}  // namespace hermpir::pir
