#pragma once

#include <Eigen/Dense>
#include <vector>

namespace h2curl {

using Point = Eigen::Vector2d;

enum class Axis { X, Y };

/// Local variables xi = s (x - cx), eta = s (y - cy) of a polynomial.
struct Frame {
  double cx = 0.0;
  double cy = 0.0;
  double s = 1.0;
  bool operator==(const Frame&) const = default;
};

/// Bivariate polynomial sum_{i,j} c(i,j) xi^i eta^j with dense coefficient
/// storage, in the variables of its frame (x, y by default). Row index is the
/// power of xi, column index the power of eta. Trailing zero rows/columns are
/// trimmed on construction so that degree_x()/degree_y() are tight. Mixed-frame
/// arithmetic re-expands the right operand into the left one's frame.
class Poly2D {
 public:
  Poly2D();
  explicit Poly2D(Eigen::MatrixXd coeffs, Frame frame = {});

  static Poly2D constant(double c);
  static Poly2D monomial(int i, int j, double c = 1.0);

  int degree_x() const { return static_cast<int>(coeffs_.rows()) - 1; }
  int degree_y() const { return static_cast<int>(coeffs_.cols()) - 1; }
  int total_degree() const;
  bool is_zero() const;

  /// Coefficients in the polynomial's own frame.
  double coeff(int i, int j) const;
  const Eigen::MatrixXd& coeffs() const { return coeffs_; }
  const Frame& frame() const { return frame_; }

  /// The same polynomial expanded in another frame.
  Poly2D in_frame(const Frame& target) const;

  double operator()(double x, double y) const;
  double operator()(const Point& p) const { return (*this)(p.x(), p.y()); }

  Poly2D& operator+=(const Poly2D& other);
  Poly2D& operator-=(const Poly2D& other);
  Poly2D& operator*=(double s);

  friend Poly2D operator+(Poly2D a, const Poly2D& b) { return a += b; }
  friend Poly2D operator-(Poly2D a, const Poly2D& b) { return a -= b; }
  friend Poly2D operator*(Poly2D a, double s) { return a *= s; }
  friend Poly2D operator*(double s, Poly2D a) { return a *= s; }
  friend Poly2D operator-(Poly2D a) { return a *= -1.0; }
  friend Poly2D operator*(const Poly2D& a, const Poly2D& b);

 private:
  void trim();

  Eigen::MatrixXd coeffs_;
  Frame frame_;
};

/// Two-component polynomial field. Component degrees are independent.
struct VecPoly2D {
  Poly2D u1;
  Poly2D u2;

  Eigen::Vector2d operator()(const Point& p) const { return {u1(p), u2(p)}; }
  bool is_zero() const { return u1.is_zero() && u2.is_zero(); }

  VecPoly2D& operator+=(const VecPoly2D& o) {
    u1 += o.u1;
    u2 += o.u2;
    return *this;
  }
  VecPoly2D& operator*=(double s) {
    u1 *= s;
    u2 *= s;
    return *this;
  }
  friend VecPoly2D operator+(VecPoly2D a, const VecPoly2D& b) { return a += b; }
  friend VecPoly2D operator*(double s, VecPoly2D a) { return a *= s; }
};

Poly2D partial(const Poly2D& p, Axis axis);

/// du2/dx - du1/dy.
Poly2D scalar_curl(const VecPoly2D& u);

/// (ds/dy, -ds/dx).
VecPoly2D vector_curl(const Poly2D& s);

VecPoly2D gradient(const Poly2D& s);
Poly2D laplacian(const Poly2D& s);
Poly2D dot(const VecPoly2D& a, const VecPoly2D& b);

/// p(s (x - cx), s (y - cy)), kept in the shifted frame (no re-expansion).
Poly2D substitute_scaled(const Poly2D& p, double cx, double cy, double s);

/// s * (x, y).
VecPoly2D times_position(const Poly2D& s);

// Scalar monomial families. Negative degrees yield empty sets.
std::vector<Poly2D> p_basis(int degree);
std::vector<Poly2D> q_basis(int degree_x, int degree_y);
std::vector<Poly2D> homogeneous_basis(int degree);
/// Q_d without the constant monomial.
std::vector<Poly2D> q_tilde_basis(int degree);

/// Vector polynomial spaces used by the reference elements.
enum class VectorSpace {
  RectLocal,        ///< Q_{k-1,k} x Q_{k,k-1}
  TriLocal,         ///< R_k = (P_{k-1})^2 + Phi_k
  PhiK,             ///< homogeneous degree-k fields p with x.p = 0
  RectMomentX,      ///< Q_{k-2} * x
  RectMomentCurl,   ///< curl of Q~_{k-3}
  RectInteriorTest, ///< RectMomentX followed by RectMomentCurl
  TriInteriorTest,  ///< (P_{k-5})^2 + P~_{k-5} x + P~_{k-4} x + P~_{k-3} x
};

/// Monomial-type spanning set of the requested space; linearly independent.
/// Rectangle families reject k < 3, triangle families k < 4.
std::vector<VecPoly2D> monomial_basis(VectorSpace space, int k);

}  // namespace h2curl
