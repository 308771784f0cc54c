#include "hermpir/xstpir.hpp"

#include <algorithm>
#include <set>

namespace hermpir::pir {

namespace {

int floor_div(int a, int b) {
  int d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

std::string ineq(const std::string& what, long long lhs, const char* op, long long rhs) {
  return what + " (" + std::to_string(lhs) + " " + op + " " + std::to_string(rhs) + ")";
}

Matrix monomial_matrix(const gf::Field& f, std::shared_ptr<const gf::Field> fp, const std::vector<curve::Point>& pts,
                       const std::vector<curve::MonomialIndex>& monos) {
  Matrix m(std::move(fp), pts.size(), monos.size());
  for (std::size_t r = 0; r < pts.size(); ++r) {
    for (std::size_t c = 0; c < monos.size(); ++c) {
      m.set(r, c, f.mul(f.pow(pts[r].x, monos[c].i), f.pow(pts[r].y, monos[c].j)));
    }
  }
  return m;
}

std::vector<Element> random_vector(const gf::Field& f, std::size_t n, gf::Rng& rng) {
  std::vector<Element> v(n);
  for (auto& e : v) e = f.sample(rng);
  return v;
}

Matrix columns_to_matrix(std::shared_ptr<const gf::Field> fp, std::size_t rows,
                         const std::vector<std::vector<Element>>& cols) {
  Matrix m(std::move(fp), rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
  }
  return m;
}

// Every product spanning the noise families: priv monomials, sec monomials,
// and sec[l] column times priv column.
Matrix product_spanning_set(const gf::Field& f, const std::vector<Matrix>& sec, const Matrix& sec_plain,
                            const Matrix& priv) {
  const std::size_t rows = priv.rows();
  std::vector<std::vector<Element>> cols;
  for (std::size_t c = 0; c < priv.cols(); ++c) cols.push_back(priv.column(c));
  for (std::size_t c = 0; c < sec_plain.cols(); ++c) cols.push_back(sec_plain.column(c));
  for (const auto& s : sec) {
    for (std::size_t a = 0; a < s.cols(); ++a) {
      const auto sa = s.column(a);
      for (std::size_t b = 0; b < priv.cols(); ++b) cols.push_back(hadamard(f, sa, priv.column(b)));
    }
  }
  return columns_to_matrix(priv.field_ptr(), rows, cols);
}

}  // namespace

SchemeParams validate_params(int q, int X, int T, std::optional<int> m, int files, std::uint64_t seed) {
  if (q < 2) throw InfeasibleParams("q must be at least 2");
  try {
    gf::factor_prime_power(static_cast<std::uint64_t>(q));
  } catch (const InvalidArgument&) {
    throw InfeasibleParams("q = " + std::to_string(q) + " is not a prime power");
  }
  if (static_cast<std::uint64_t>(q) * q > gf::kMaxFieldSize) throw InfeasibleParams("q^2 exceeds the field size budget");
  if (X < 1) throw InfeasibleParams("X >= 1 violated");
  if (T < 1) throw InfeasibleParams("T >= 1 violated");
  if (files < 1) throw InfeasibleParams("M >= 1 violated");

  SchemeParams p;
  p.q = q;
  p.X = X;
  p.T = T;
  p.M = files;
  p.seed = seed;
  p.g = q * (q - 1) / 2;
  const long long q3 = 1LL * q * q * q;
  p.m = m ? *m : floor_div(static_cast<int>(q3 - 3LL * q * q + q + 1 - (X + T)), 2 * q);
  if (p.m < q - 1) throw InfeasibleParams(ineq("q-1 <= m violated", q - 1, ">", p.m));
  if (p.m > q * q - 1) throw InfeasibleParams(ineq("m <= q^2-1 violated", p.m, ">", q * q - 1));
  p.L = p.m * q - p.g;
  if (p.L < p.g) throw InfeasibleParams(ineq("g <= L violated", p.g, ">", p.L));
  if (p.L > q3 - p.g) throw InfeasibleParams(ineq("L <= q^3-g violated", p.L, ">", q3 - p.g));
  if ((p.L + p.g) % q != 0) throw InfeasibleParams("L+g = 0 mod q violated");
  const long long need = 2LL * p.L + X + T + 4LL * q * q - 2LL * q;
  if (q3 + 1 < need) throw InfeasibleParams(ineq("q^3+1 >= 2L+X+T+4q^2-2q violated", q3 + 1, "<", need));
  p.N = p.L + X + T + 3 * q * q - q - 2;
  return p;
}

SchemeInstance::SchemeInstance(const SchemeParams& p)
    : params_(p),
      curve_(curve::HermitianCurve::over(static_cast<std::uint32_t>(p.q))),
      b_info_(curve_.tower().field_ptr(), 0, 0),
      b_noise_(curve_.tower().field_ptr(), 0, 0),
      decode_(curve_.tower().field_ptr(), 0, 0),
      priv_(curve_.tower().field_ptr(), 0, 0) {}

SchemeInstance SchemeInstance::build(const SchemeParams& params, const BuildOptions& opts) {
  const SchemeParams p = validate_params(params.q, params.X, params.T, params.m, params.M, params.seed);
  SchemeInstance inst(p);
  const auto& c = inst.curve_;
  const auto& f = c.field();
  const auto fp = c.tower().field_ptr();
  const int q = p.q;
  const int g = p.g;

  inst.alphas_ = curve::default_alphas(c, p.m);
  inst.data_points_ = curve::fiber_points(c, inst.alphas_);
  const std::set<Element> alpha_set(inst.alphas_.begin(), inst.alphas_.end());
  for (const auto& pt : c.affine_points()) {
    if (alpha_set.count(pt.x)) continue;
    if (pt.x.is_zero() && pt.y.is_zero()) continue;
    inst.pool_points_.push_back(pt);
  }
  if (inst.pool_points_.size() < static_cast<std::size_t>(p.N)) {
    throw InternalError("server pool has " + std::to_string(inst.pool_points_.size()) + " points, need " +
                        std::to_string(p.N));
  }
  const auto& pool = inst.pool_points_;

  inst.info_functions_ = curve::info_basis(c, inst.alphas_);
  const auto noise = curve::two_point_monomial_set(q, p.X + p.T + 4 * g + q - 2, q * q - 1);
  inst.noise_monomials_ = noise.monomials;
  inst.noise_expected_dimension_ = noise.expected_dimension;
  inst.sec_monomials_ = curve::one_point_basis(p.X + 2 * g - 1, q);
  inst.priv_monomials_ = curve::one_point_basis(p.T + 2 * g - 1, q);

  std::vector<curve::CurveFunction> info_fns;
  for (const auto& b : inst.info_functions_) info_fns.push_back(b.function);
  const Matrix info_pool = codes::evaluation_matrix(info_fns, pool).transpose();
  Matrix noise_pool = monomial_matrix(f, fp, pool, inst.noise_monomials_);
  const Matrix sec_plain = monomial_matrix(f, fp, pool, inst.sec_monomials_);
  const Matrix priv_pool = monomial_matrix(f, fp, pool, inst.priv_monomials_);

  // sec[l] = h_l^{-1} * monomial; h_l vanishes only at P_0 among affine points.
  std::vector<Matrix> sec_pool;
  for (std::size_t l = 0; l < info_fns.size(); ++l) {
    Matrix s(fp, pool.size(), sec_plain.cols());
    for (std::size_t r = 0; r < pool.size(); ++r) {
      const Element inv_h = f.inv(info_pool.at(r, l));
      for (std::size_t k = 0; k < sec_plain.cols(); ++k) s.set(r, k, f.mul(inv_h, sec_plain.at(r, k)));
    }
    sec_pool.push_back(std::move(s));
  }

  const Matrix products = product_spanning_set(f, sec_pool, sec_plain, priv_pool);
  const std::size_t noise_rank = linalg::rank(noise_pool);
  const bool contained = linalg::rank(noise_pool.hconcat(products)) == noise_rank;
  if (!contained || opts.force_fallback) {
    noise_pool = noise_pool.hconcat(products);
    inst.fallback_used_ = true;
  }

  const Matrix full_pool = info_pool.hconcat(noise_pool);
  inst.pool_rank_ = linalg::rank(full_pool);
  if (inst.pool_rank_ > static_cast<std::size_t>(p.N)) {
    throw InternalError("decode rank " + std::to_string(inst.pool_rank_) + " exceeds N");
  }
  inst.server_pool_indices_ = linalg::select_full_rank_rows(full_pool, inst.pool_rank_, static_cast<std::size_t>(p.N));
  const auto& idx = inst.server_pool_indices_;
  for (const auto i : idx) inst.server_points_.push_back(pool[i]);
  inst.b_info_ = info_pool.select_rows(idx);
  inst.b_noise_ = noise_pool.select_rows(idx);
  inst.decode_ = inst.b_info_.hconcat(inst.b_noise_);
  for (const auto& s : sec_pool) inst.sec_.push_back(s.select_rows(idx));
  inst.priv_ = priv_pool.select_rows(idx);
  return inst;
}

std::vector<Element> Grid::server_slice(int n) const {
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(M) * L);
  for (int mu = 0; mu < M; ++mu) {
    for (int l = 0; l < L; ++l) out.push_back(at(mu, l, n));
  }
  return out;
}

std::vector<Element> hadamard(const gf::Field& f, const std::vector<Element>& a, const std::vector<Element>& b) {
  if (a.size() != b.size()) throw InvalidArgument("hadamard: lengths differ");
  std::vector<Element> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(a[i], b[i]);
  return out;
}

std::vector<Element> combine_columns(const Matrix& m, const std::vector<Element>& coeff) {
  if (coeff.size() != m.cols()) throw InvalidArgument("combine_columns: coefficient count differs");
  return m.multiply(coeff);
}

StorageShares encode_storage(const SchemeInstance& inst, const std::vector<std::vector<Element>>& files, gf::Rng& rng,
                             Noise noise) {
  const auto& p = inst.params();
  const auto& f = inst.field();
  if (static_cast<int>(files.size()) != p.M) {
    throw InvalidArgument("expected " + std::to_string(p.M) + " files, got " + std::to_string(files.size()));
  }
  StorageShares out(p.M, p.L, p.N);
  for (int mu = 0; mu < p.M; ++mu) {
    if (static_cast<int>(files[mu].size()) != p.L) {
      throw InvalidArgument("file " + std::to_string(mu) + " must have " + std::to_string(p.L) + " symbols");
    }
    for (int l = 0; l < p.L; ++l) {
      const Matrix& sec = inst.sec_basis()[l];
      std::vector<Element> z(p.N);
      if (noise == Noise::random) z = combine_columns(sec, random_vector(f, sec.cols(), rng));
      for (int n = 0; n < p.N; ++n) out.at(mu, l, n) = f.add(files[mu][l], z[n]);
    }
  }
  return out;
}

QueryBundle make_queries(const SchemeInstance& inst, int desired, gf::Rng& rng, Noise noise) {
  const auto& p = inst.params();
  const auto& f = inst.field();
  if (desired < 0 || desired >= p.M) {
    throw InvalidArgument("desired file index " + std::to_string(desired) + " outside [0, " + std::to_string(p.M) + ")");
  }
  QueryBundle out(p.M, p.L, p.N);
  const Matrix& priv = inst.priv_basis();
  for (int mu = 0; mu < p.M; ++mu) {
    for (int l = 0; l < p.L; ++l) {
      std::vector<Element> r(p.N);
      if (noise == Noise::random) r = combine_columns(priv, random_vector(f, priv.cols(), rng));
      for (int n = 0; n < p.N; ++n) {
        const Element h = mu == desired ? inst.b_info().at(n, l) : Element{};
        out.at(mu, l, n) = f.add(h, r[n]);
      }
    }
  }
  return out;
}

Element server_answer(const gf::Field& f, const std::vector<Element>& shares, const std::vector<Element>& queries) {
  if (shares.size() != queries.size()) throw InvalidArgument("share and query grids are not aligned");
  Element acc;
  for (std::size_t i = 0; i < shares.size(); ++i) acc = f.add(acc, f.mul(shares[i], queries[i]));
  return acc;
}

std::vector<Element> collect_answers(const SchemeInstance& inst, const StorageShares& shares,
                                     const QueryBundle& queries) {
  const auto& p = inst.params();
  std::vector<Element> a(p.N);
  for (int n = 0; n < p.N; ++n) a[n] = server_answer(inst.field(), shares.server_slice(n), queries.server_slice(n));
  return a;
}

std::vector<Element> reconstruct(const SchemeInstance& inst, const std::vector<Element>& answers) {
  try {
    return linalg::solve_prefix(inst.decode_matrix(), answers, static_cast<std::size_t>(inst.params().L));
  } catch (const linalg::InconsistentSystem& e) {
    throw DecodeFailure(std::string("answers are inconsistent: ") + e.what());
  } catch (const linalg::NonUniquePrefix& e) {
    throw DecodeFailure(std::string("file symbols not determined: ") + e.what());
  }
}

bool CertifyReport::all_passed() const {
  return sec_bounds_ok && priv_bound_ok && independence_ok && noise_count_ok && noise_contained && rank_ok &&
         rank_additive;
}

CertifyReport certify_instance(const SchemeInstance& inst, const CertifyOptions& opts) {
  const auto& p = inst.params();
  const auto& f = inst.field();
  CertifyReport rep;
  rep.params = p;
  rep.rate_num = p.L;
  rep.rate_den = p.N;

  const int sec_deg = p.X + 2 * p.g - 1;
  const int priv_deg = p.T + 2 * p.g - 1;
  rep.sec_bounds_ok = true;
  for (int l = 0; l < p.L; ++l) {
    const int b = sec_deg - 2 * p.g + 2;
    rep.sec_dual_bounds.push_back(b);
    rep.sec_bounds_ok = rep.sec_bounds_ok && b >= p.X + 1;
  }
  rep.priv_dual_bound = priv_deg - 2 * p.g + 2;
  rep.priv_bound_ok = rep.priv_dual_bound >= p.T + 1;

  rep.independence_ok = true;
  auto run = [&](const std::string& family, const Matrix& basis, int threshold) {
    const Matrix gen = basis.transpose();
    const std::size_t top = static_cast<std::size_t>(std::max(2, threshold));
    for (std::size_t w = 1; w <= top; ++w) {
      IndependenceCheck chk;
      chk.family = family;
      chk.w = w;
      chk.exhaustive = w <= 2;
      if (chk.exhaustive) {
        chk.result = codes::check_w_wise_independence(gen, w, codes::Exhaustive{});
      } else {
        chk.result = codes::check_w_wise_independence(gen, w, codes::Sampled{opts.sampled_subsets, opts.seed + w});
      }
      rep.independence_ok = rep.independence_ok && chk.result.independent;
      rep.independence.push_back(std::move(chk));
    }
  };
  for (int l = 0; l < p.L; ++l) run("sec[" + std::to_string(l + 1) + "]", inst.sec_basis()[l], p.X);
  run("priv", inst.priv_basis(), p.T);

  rep.noise_count = static_cast<int>(inst.noise_monomials().size());
  rep.noise_expected = inst.noise_expected_dimension();
  rep.noise_count_ok = rep.noise_count == rep.noise_expected;
  rep.fallback_used = inst.noise_fallback_used();

  // Sampled members of the three product families.
  gf::Rng rng(opts.seed);
  std::uniform_int_distribution<int> pick_l(0, p.L - 1);
  const Matrix& priv = inst.priv_basis();
  std::vector<std::vector<Element>> cols;
  for (int t = 0; t < opts.products_per_family; ++t) {
    cols.push_back(combine_columns(priv, random_vector(f, priv.cols(), rng)));
  }
  for (int t = 0; t < opts.products_per_family; ++t) {
    const int l = pick_l(rng);
    const Matrix& sec = inst.sec_basis()[l];
    const auto z = combine_columns(sec, random_vector(f, sec.cols(), rng));
    cols.push_back(hadamard(f, z, inst.b_info().column(l)));
  }
  for (int t = 0; t < opts.products_per_family; ++t) {
    const int l = pick_l(rng);
    const Matrix& sec = inst.sec_basis()[l];
    const auto z = combine_columns(sec, random_vector(f, sec.cols(), rng));
    const auto r = combine_columns(priv, random_vector(f, priv.cols(), rng));
    cols.push_back(hadamard(f, z, r));
  }
  rep.products_tested = static_cast<int>(cols.size());
  rep.noise_rank = linalg::rank(inst.b_noise());
  const Matrix prods = columns_to_matrix(inst.b_noise().field_ptr(), static_cast<std::size_t>(p.N), cols);
  rep.noise_contained = linalg::rank(inst.b_noise().hconcat(prods)) == rep.noise_rank;

  rep.info_rank = linalg::rank(inst.b_info());
  rep.decode_rank = linalg::rank(inst.decode_matrix());
  rep.expected_rank = static_cast<std::size_t>(p.N - p.g);
  rep.rank_ok = rep.decode_rank == rep.expected_rank;
  rep.rank_additive = rep.info_rank + rep.noise_rank == rep.decode_rank;
  return rep;
}

}  // namespace hermpir::pir
