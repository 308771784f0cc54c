#pragma once
//
// The Hermitian curve x^{q+1} = y^q + y over F_{q^2}: rational points, functions
// written as fractions of bivariate polynomials reduced modulo the curve
// equation, valuations at P_inf and P_0, and the Riemann-Roch bases used by the
// retrieval scheme.
//
// Valuations are tracked through an optional factored "shape"
// x^a y^b prod (x - alpha)^e with alpha != 0, using
//   v_inf(x) = -q, v_inf(y) = -(q+1), v_inf(x - alpha) = -q,
//   v_0(x) = 1,    v_0(y) = q+1,      v_0(x - alpha) = 0.

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hermpir/error.hpp"
#include "hermpir/gf.hpp"

namespace hermpir::curve {

using gf::Element;

class PoleError : public Error {
 public:
  using Error::Error;
};

class EvaluationAtInfinity : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

struct Point {
  Element x;
  Element y;
  bool at_infinity = false;

  static Point affine(Element x, Element y) { return Point{x, y, false}; }
  static Point infinity() { return Point{Element{}, Element{}, true}; }

  friend auto operator<=>(const Point&, const Point&) = default;
};

enum class PlaceKind { infinity, zero, affine };

struct Place {
  PlaceKind kind = PlaceKind::affine;
  Point point;

  static Place infinity() { return {PlaceKind::infinity, Point::infinity()}; }
  static Place zero() { return {PlaceKind::zero, Point::affine(Element{}, Element{})}; }
  // Normalises (0,0) to the P_0 tag.
  static Place at(const Point& p);

  friend auto operator<=>(const Place&, const Place&) = default;
};

class Divisor {
 public:
  void add(const Place& place, int coefficient);
  int coefficient(const Place& place) const;
  int degree() const;
  const std::map<Place, int>& support() const { return terms_; }
  bool operator<=(const Divisor& other) const;

 private:
  std::map<Place, int> terms_;
};

// Exponent pair of x^i y^j; j may be negative in two-point sets.
struct MonomialIndex {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const MonomialIndex&, const MonomialIndex&) = default;
};

class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  static BivariatePolynomial constant(Element c);
  static BivariatePolynomial monomial(int i, int j, Element c);

  const std::map<MonomialIndex, Element>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int y_degree() const;

  BivariatePolynomial add(const BivariatePolynomial& o, const gf::Field& f) const;
  BivariatePolynomial mul(const BivariatePolynomial& o, const gf::Field& f) const;
  // Rewrites y^q = x^{q+1} - y until every y-exponent is below q.
  BivariatePolynomial reduced(std::uint32_t q, const gf::Field& f) const;
  Element evaluate(Element x, Element y, const gf::Field& f) const;

 private:
  void accumulate(MonomialIndex m, Element c, const gf::Field& f);
  std::map<MonomialIndex, Element> terms_;
};

struct LinearFactor {
  Element alpha;  // nonzero
  int exponent = 0;
  friend bool operator==(const LinearFactor&, const LinearFactor&) = default;
};

// coefficient * x^{x_exponent} y^{y_exponent} prod (x - alpha)^exponent.
struct FunctionShape {
  Element coefficient{1};  // nonzero
  int x_exponent = 0;
  int y_exponent = 0;
  std::vector<LinearFactor> linear;  // sorted by alpha, no zero exponents

  FunctionShape times(const FunctionShape& o, const gf::Field& f) const;
  FunctionShape inverse(const gf::Field& f) const;
  friend bool operator==(const FunctionShape&, const FunctionShape&) = default;
};

int valuation_at_infinity(const FunctionShape& s, int q);
int valuation_at_zero(const FunctionShape& s, int q);

class CurveFunction {
 public:
  // Throws InvalidArgument when the reduced denominator is zero.
  CurveFunction(std::shared_ptr<const gf::FieldTower> tower, BivariatePolynomial numerator,
                BivariatePolynomial denominator);
  // Numerator and denominator are expanded from the shape.
  CurveFunction(std::shared_ptr<const gf::FieldTower> tower, FunctionShape shape);

  static CurveFunction constant(std::shared_ptr<const gf::FieldTower> tower, Element c);
  // x^i y^j; j < 0 puts y^{-j} in the denominator.
  static CurveFunction monomial(std::shared_ptr<const gf::FieldTower> tower, int i, int j);
  // x - alpha.
  static CurveFunction linear(std::shared_ptr<const gf::FieldTower> tower, Element alpha);

  CurveFunction operator*(const CurveFunction& o) const;
  CurveFunction inverse() const;

  const BivariatePolynomial& numerator() const { return num_; }
  const BivariatePolynomial& denominator() const { return den_; }
  const std::optional<FunctionShape>& shape() const { return shape_; }
  const gf::FieldTower& tower() const { return *tower_; }

  // Throws EvaluationAtInfinity or PoleError.
  Element evaluate(const Point& p) const;
  bool has_pole_at(const Point& p) const;

  // Throws UnsupportedShape when no factored shape is known.
  int valuation_at_infinity() const;
  int valuation_at_zero() const;

 private:
  std::shared_ptr<const gf::FieldTower> tower_;
  BivariatePolynomial num_;
  BivariatePolynomial den_;
  std::optional<FunctionShape> shape_;
};

class HermitianCurve {
 public:
  explicit HermitianCurve(std::shared_ptr<const gf::FieldTower> tower);
  // Builds the tower for q = p^h.
  static HermitianCurve over(std::uint32_t q);

  std::uint32_t q() const { return tower_->q(); }
  int genus() const { return static_cast<int>(q() * (q() - 1) / 2); }
  const gf::FieldTower& tower() const { return *tower_; }
  std::shared_ptr<const gf::FieldTower> tower_ptr() const { return tower_; }
  const gf::Field& field() const { return tower_->field(); }

  bool contains(Element x, Element y) const;
  // {y : y^q + y = alpha^{q+1}}, always exactly q values, in canonical order.
  std::vector<Element> fiber_of_x(Element alpha) const;
  // q^3 affine points ordered by (x, y), followed by P_inf.
  std::vector<Point> enumerate_points() const;
  std::vector<Point> affine_points() const;
  Point origin() const { return Point::affine(Element{}, Element{}); }

 private:
  std::shared_ptr<const gf::FieldTower> tower_;
  std::map<std::uint32_t, std::vector<Element>> trace_fibers_;
};

// Monomials x^i y^j of L(m P_inf): iq + j(q+1) <= m, i >= 0, 0 <= j <= q-1,
// ordered by pole order. Empty for m < 0.
std::vector<MonomialIndex> one_point_basis(int m, int q);

struct TwoPointSet {
  std::vector<MonomialIndex> monomials;
  int expected_dimension = 0;  // a + b - g + 1
  bool count_matches = false;
};

// x^i y^j with 0 <= i <= q, iq + j(q+1) <= a and i + j(q+1) >= -b.
TwoPointSet two_point_monomial_set(int q, int a, int b);

// The first m nonzero elements in enumeration order.
std::vector<Element> default_alphas(const HermitianCurve& c, int m);

// prod 1/(x - alpha_i); alphas distinct and nonzero.
CurveFunction build_h(const HermitianCurve& c, std::span<const Element> alphas);

struct BasisFunction {
  int z = 0;  // 1-based
  int i = 0;  // 1-based
  CurveFunction function;
};

// The functions y^{z-1} prod_{i' in [m-z+1] \ {i}} (x - alpha_{i'}), z-major.
// Requires 2m >= q + 1.
std::vector<BasisFunction> interpolation_basis(const HermitianCurve& c, std::span<const Element> alphas);

// h times each interpolation basis function.
std::vector<BasisFunction> info_basis(const HermitianCurve& c, std::span<const Element> alphas);

// The data points P_{i,z} = (alpha_i, beta_{i,z}) in (i, z) order.
std::vector<Point> fiber_points(const HermitianCurve& c, std::span<const Element> alphas);

}  // namespace hermpir::curve
