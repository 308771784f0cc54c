#include "hermpir/hermitian.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace hermpir::curve {

namespace {

int floor_div(int a, int b) {
  int d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

BivariatePolynomial linear_poly(Element alpha, const gf::Field& f) {
  return BivariatePolynomial::monomial(1, 0, f.one()).add(BivariatePolynomial::constant(f.neg(alpha)), f);
}

BivariatePolynomial power(const BivariatePolynomial& base, int e, std::uint32_t q, const gf::Field& f) {
  BivariatePolynomial acc = BivariatePolynomial::constant(f.one());
  for (int k = 0; k < e; ++k) acc = acc.mul(base, f).reduced(q, f);
  return acc;
}

void check_alphas(std::span<const Element> alphas) {
  std::set<Element> seen;
  for (const auto a : alphas) {
    if (a.is_zero()) throw InvalidArgument("alpha must be nonzero");
    if (!seen.insert(a).second) throw InvalidArgument("alphas must be pairwise distinct");
  }
}

}  // namespace

Place Place::at(const Point& p) {
  if (p.at_infinity) return infinity();
  if (p.x.is_zero() && p.y.is_zero()) return zero();
  return {PlaceKind::affine, p};
}

void Divisor::add(const Place& place, int coefficient) {
  const int c = (terms_.count(place) ? terms_[place] : 0) + coefficient;
  if (c == 0) {
    terms_.erase(place);
  } else {
    terms_[place] = c;
  }
}

int Divisor::coefficient(const Place& place) const {
  const auto it = terms_.find(place);
  return it == terms_.end() ? 0 : it->second;
}

int Divisor::degree() const {
  int d = 0;
  for (const auto& [_, c] : terms_) d += c;
  return d;
}

bool Divisor::operator<=(const Divisor& other) const {
  for (const auto& [place, c] : terms_) {
    if (c > other.coefficient(place)) return false;
  }
  for (const auto& [place, c] : other.terms_) {
    if (!terms_.count(place) && c < 0) return false;
  }
  return true;
}

BivariatePolynomial BivariatePolynomial::constant(Element c) {
  BivariatePolynomial p;
  if (!c.is_zero()) p.terms_[{0, 0}] = c;
  return p;
}

BivariatePolynomial BivariatePolynomial::monomial(int i, int j, Element c) {
  if (i < 0 || j < 0) throw InvalidArgument("polynomial exponents must be nonnegative");
  BivariatePolynomial p;
  if (!c.is_zero()) p.terms_[{i, j}] = c;
  return p;
}

int BivariatePolynomial::y_degree() const {
  int d = -1;
  for (const auto& [m, _] : terms_) d = std::max(d, m.j);
  return d;
}

void BivariatePolynomial::accumulate(MonomialIndex m, Element c, const gf::Field& f) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = f.add(it->second, c);
  if (it->second.is_zero()) terms_.erase(it);
}

BivariatePolynomial BivariatePolynomial::add(const BivariatePolynomial& o, const gf::Field& f) const {
  BivariatePolynomial out = *this;
  for (const auto& [m, c] : o.terms_) out.accumulate(m, c, f);
  return out;
}

BivariatePolynomial BivariatePolynomial::mul(const BivariatePolynomial& o, const gf::Field& f) const {
  BivariatePolynomial out;
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) out.accumulate({a.i + b.i, a.j + b.j}, f.mul(ca, cb), f);
  }
  return out;
}

BivariatePolynomial BivariatePolynomial::reduced(std::uint32_t q, const gf::Field& f) const {
  const int qi = static_cast<int>(q);
  BivariatePolynomial out = *this;
  while (true) {
    auto it = std::find_if(out.terms_.begin(), out.terms_.end(), [&](const auto& t) { return t.first.j >= qi; });
    if (it == out.terms_.end()) break;
    const MonomialIndex m = it->first;
    const Element c = it->second;
    out.terms_.erase(it);
    out.accumulate({m.i + qi + 1, m.j - qi}, c, f);
    out.accumulate({m.i, m.j - qi + 1}, f.neg(c), f);
  }
  return out;
}

Element BivariatePolynomial::evaluate(Element x, Element y, const gf::Field& f) const {
  Element acc = f.zero();
  for (const auto& [m, c] : terms_) acc = f.add(acc, f.mul(c, f.mul(f.pow(x, m.i), f.pow(y, m.j))));
  return acc;
}

FunctionShape FunctionShape::times(const FunctionShape& o, const gf::Field& f) const {
  FunctionShape out;
  out.coefficient = f.mul(coefficient, o.coefficient);
  out.x_exponent = x_exponent + o.x_exponent;
  out.y_exponent = y_exponent + o.y_exponent;
  std::map<Element, int> merged;
  for (const auto& l : linear) merged[l.alpha] += l.exponent;
  for (const auto& l : o.linear) merged[l.alpha] += l.exponent;
  for (const auto& [alpha, e] : merged) {
    if (e != 0) out.linear.push_back({alpha, e});
  }
  return out;
}

FunctionShape FunctionShape::inverse(const gf::Field& f) const {
  FunctionShape out;
  out.coefficient = f.inv(coefficient);
  out.x_exponent = -x_exponent;
  out.y_exponent = -y_exponent;
  for (const auto& l : linear) out.linear.push_back({l.alpha, -l.exponent});
  return out;
}

int valuation_at_infinity(const FunctionShape& s, int q) {
  int v = -q * s.x_exponent - (q + 1) * s.y_exponent;
  for (const auto& l : s.linear) v -= q * l.exponent;
  return v;
}

int valuation_at_zero(const FunctionShape& s, int q) { return s.x_exponent + (q + 1) * s.y_exponent; }

CurveFunction::CurveFunction(std::shared_ptr<const gf::FieldTower> tower, BivariatePolynomial numerator,
                             BivariatePolynomial denominator)
    : tower_(std::move(tower)) {
  const auto& f = tower_->field();
  num_ = numerator.reduced(tower_->q(), f);
  den_ = denominator.reduced(tower_->q(), f);
  if (den_.is_zero()) throw InvalidArgument("denominator vanishes on the curve");
}

CurveFunction::CurveFunction(std::shared_ptr<const gf::FieldTower> tower, FunctionShape shape)
    : tower_(std::move(tower)) {
  const auto& f = tower_->field();
  const auto q = tower_->q();
  if (shape.coefficient.is_zero()) throw InvalidArgument("shape coefficient must be nonzero");
  BivariatePolynomial num = BivariatePolynomial::monomial(std::max(shape.x_exponent, 0),
                                                          std::max(shape.y_exponent, 0), shape.coefficient);
  BivariatePolynomial den = BivariatePolynomial::monomial(std::max(-shape.x_exponent, 0),
                                                          std::max(-shape.y_exponent, 0), f.one());
  num = num.reduced(q, f);
  den = den.reduced(q, f);
  for (const auto& l : shape.linear) {
    if (l.alpha.is_zero()) throw UnsupportedShape("linear factor with alpha = 0");
    const auto lin = linear_poly(l.alpha, f);
    if (l.exponent > 0) {
      num = num.mul(power(lin, l.exponent, q, f), f).reduced(q, f);
    } else {
      den = den.mul(power(lin, -l.exponent, q, f), f).reduced(q, f);
    }
  }
  num_ = std::move(num);
  den_ = std::move(den);
  shape_ = std::move(shape);
}

CurveFunction CurveFunction::constant(std::shared_ptr<const gf::FieldTower> tower, Element c) {
  if (c.is_zero()) {
    const auto one = tower->field().one();
    return CurveFunction(tower, BivariatePolynomial{}, BivariatePolynomial::constant(one));
  }
  FunctionShape s;
  s.coefficient = c;
  return CurveFunction(std::move(tower), std::move(s));
}

CurveFunction CurveFunction::monomial(std::shared_ptr<const gf::FieldTower> tower, int i, int j) {
  FunctionShape s;
  s.x_exponent = i;
  s.y_exponent = j;
  return CurveFunction(std::move(tower), std::move(s));
}

CurveFunction CurveFunction::linear(std::shared_ptr<const gf::FieldTower> tower, Element alpha) {
  FunctionShape s;
  if (alpha.is_zero()) {
    s.x_exponent = 1;
  } else {
    s.linear.push_back({alpha, 1});
  }
  return CurveFunction(std::move(tower), std::move(s));
}

CurveFunction CurveFunction::operator*(const CurveFunction& o) const {
  const auto& f = tower_->field();
  if (shape_ && o.shape_) return CurveFunction(tower_, shape_->times(*o.shape_, f));
  return CurveFunction(tower_, num_.mul(o.num_, f), den_.mul(o.den_, f));
}

CurveFunction CurveFunction::inverse() const {
  if (num_.is_zero()) throw InvalidArgument("inverse of the zero function");
  if (shape_) return CurveFunction(tower_, shape_->inverse(tower_->field()));
  return CurveFunction(tower_, den_, num_);
}

Element CurveFunction::evaluate(const Point& p) const {
  if (p.at_infinity) throw EvaluationAtInfinity("cannot evaluate at P_inf");
  const auto& f = tower_->field();
  const Element d = den_.evaluate(p.x, p.y, f);
  if (d.is_zero()) {
    throw PoleError("denominator vanishes at (" + f.to_string(p.x) + ", " + f.to_string(p.y) + ")");
  }
  return f.div(num_.evaluate(p.x, p.y, f), d);
}

bool CurveFunction::has_pole_at(const Point& p) const {
  if (p.at_infinity) return valuation_at_infinity() < 0;
  return den_.evaluate(p.x, p.y, tower_->field()).is_zero();
}

int CurveFunction::valuation_at_infinity() const {
  if (!shape_) throw UnsupportedShape("function has no factored shape");
  return curve::valuation_at_infinity(*shape_, static_cast<int>(tower_->q()));
}

int CurveFunction::valuation_at_zero() const {
  if (!shape_) throw UnsupportedShape("function has no factored shape");
  return curve::valuation_at_zero(*shape_, static_cast<int>(tower_->q()));
}

HermitianCurve::HermitianCurve(std::shared_ptr<const gf::FieldTower> tower) : tower_(std::move(tower)) {
  for (const auto y : tower_->enumerate()) trace_fibers_[tower_->trace(y).value].push_back(y);
}

HermitianCurve HermitianCurve::over(std::uint32_t q) {
  const auto pp = gf::factor_prime_power(q);
  return HermitianCurve(gf::create_tower(pp.p, pp.h));
}

bool HermitianCurve::contains(Element x, Element y) const { return tower_->norm(x) == tower_->trace(y); }

std::vector<Element> HermitianCurve::fiber_of_x(Element alpha) const {
  const auto it = trace_fibers_.find(tower_->norm(alpha).value);
  if (it == trace_fibers_.end()) throw InternalError("norm outside the trace image");
  return it->second;
}

std::vector<Point> HermitianCurve::affine_points() const {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(q()) * q() * q());
  for (const auto x : tower_->enumerate()) {
    for (const auto y : fiber_of_x(x)) out.push_back(Point::affine(x, y));
  }
  return out;
}

std::vector<Point> HermitianCurve::enumerate_points() const {
  auto out = affine_points();
  out.push_back(Point::infinity());
  return out;
}

std::vector<MonomialIndex> one_point_basis(int m, int q) {
  std::vector<MonomialIndex> out;
  if (m < 0) return out;
  for (int j = 0; j < q; ++j) {
    for (int i = 0; i * q + j * (q + 1) <= m; ++i) out.push_back({i, j});
  }
  std::sort(out.begin(), out.end(), [q](const MonomialIndex& a, const MonomialIndex& b) {
    return a.i * q + a.j * (q + 1) < b.i * q + b.j * (q + 1);
  });
  return out;
}

TwoPointSet two_point_monomial_set(int q, int a, int b) {
  if (a < 0 || b < 0) throw InvalidArgument("two-point degrees must be nonnegative");
  TwoPointSet out;
  for (int i = 0; i <= q; ++i) {
    const int j_hi = floor_div(a - i * q, q + 1);
    const int j_lo = ceil_div(-b - i, q + 1);
    for (int j = j_lo; j <= j_hi; ++j) out.monomials.push_back({i, j});
  }
  std::sort(out.monomials.begin(), out.monomials.end(), [q](const MonomialIndex& x, const MonomialIndex& y) {
    return x.i * q + x.j * (q + 1) < y.i * q + y.j * (q + 1);
  });
  const int g = q * (q - 1) / 2;
  out.expected_dimension = a + b - g + 1;
  out.count_matches = static_cast<int>(out.monomials.size()) == out.expected_dimension;
  return out;
}

std::vector<Element> default_alphas(const HermitianCurve& c, int m) {
  const int max_m = static_cast<int>(c.tower().order()) - 1;
  if (m < 1 || m > max_m) {
    throw InvalidArgument("m must lie in [1, " + std::to_string(max_m) + "], got " + std::to_string(m));
  }
  std::vector<Element> out;
  for (int k = 1; k <= m; ++k) out.push_back(c.field().element(static_cast<std::uint32_t>(k)));
  return out;
}

CurveFunction build_h(const HermitianCurve& c, std::span<const Element> alphas) {
  check_alphas(alphas);
  FunctionShape s;
  for (const auto a : alphas) s.linear.push_back({a, -1});
  std::sort(s.linear.begin(), s.linear.end(), [](const auto& u, const auto& v) { return u.alpha < v.alpha; });
  return CurveFunction(c.tower_ptr(), std::move(s));
}

std::vector<BasisFunction> interpolation_basis(const HermitianCurve& c, std::span<const Element> alphas) {
  check_alphas(alphas);
  const int q = static_cast<int>(c.q());
  const int m = static_cast<int>(alphas.size());
  if (2 * m < q + 1) throw InvalidArgument("interpolation basis needs 2m >= q + 1");
  if (m > q * q - 1) throw InvalidArgument("m exceeds q^2 - 1");
  std::vector<BasisFunction> out;
  for (int z = 1; z <= q; ++z) {
    const int top = m - z + 1;
    for (int i = 1; i <= top; ++i) {
      FunctionShape s;
      s.y_exponent = z - 1;
      for (int k = 1; k <= top; ++k) {
        if (k != i) s.linear.push_back({alphas[static_cast<std::size_t>(k - 1)], 1});
      }
      std::sort(s.linear.begin(), s.linear.end(), [](const auto& u, const auto& v) { return u.alpha < v.alpha; });
      out.push_back({z, i, CurveFunction(c.tower_ptr(), std::move(s))});
    }
  }
  return out;
}

std::vector<BasisFunction> info_basis(const HermitianCurve& c, std::span<const Element> alphas) {
  const auto h = build_h(c, alphas);
  auto out = interpolation_basis(c, alphas);
  for (auto& b : out) b.function = h * b.function;
  return out;
}

std::vector<Point> fiber_points(const HermitianCurve& c, std::span<const Element> alphas) {
  std::vector<Point> out;
  for (const auto a : alphas) {
    for (const auto b : c.fiber_of_x(a)) out.push_back(Point::affine(a, b));
  }
  return out;
}

}  // namespace hermpir::curve
