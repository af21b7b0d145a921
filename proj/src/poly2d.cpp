#include "h2curl/poly2d.hpp"

#include <algorithm>
#include <string>

#include "h2curl/error.hpp"

namespace h2curl {

Poly2D::Poly2D() : coeffs_(Eigen::MatrixXd::Zero(1, 1)) {}

Poly2D::Poly2D(Eigen::MatrixXd coeffs, Frame frame) : coeffs_(std::move(coeffs)), frame_(frame) {
  if (coeffs_.size() == 0) coeffs_ = Eigen::MatrixXd::Zero(1, 1);
  trim();
}

Poly2D Poly2D::constant(double c) {
  Eigen::MatrixXd m(1, 1);
  m(0, 0) = c;
  return Poly2D(std::move(m));
}

Poly2D Poly2D::monomial(int i, int j, double c) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(i + 1, j + 1);
  m(i, j) = c;
  return Poly2D(std::move(m));
}

void Poly2D::trim() {
  Eigen::Index rows = coeffs_.rows();
  Eigen::Index cols = coeffs_.cols();
  while (rows > 1 && (coeffs_.row(rows - 1).head(cols).array() == 0.0).all()) --rows;
  while (cols > 1 && (coeffs_.col(cols - 1).head(rows).array() == 0.0).all()) --cols;
  if (rows != coeffs_.rows() || cols != coeffs_.cols()) {
    Eigen::MatrixXd trimmed = coeffs_.topLeftCorner(rows, cols);
    coeffs_ = std::move(trimmed);
  }
}

int Poly2D::total_degree() const {
  int deg = 0;
  for (Eigen::Index i = 0; i < coeffs_.rows(); ++i)
    for (Eigen::Index j = 0; j < coeffs_.cols(); ++j)
      if (coeffs_(i, j) != 0.0) deg = std::max(deg, static_cast<int>(i + j));
  return deg;
}

bool Poly2D::is_zero() const { return (coeffs_.array() == 0.0).all(); }

double Poly2D::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i >= coeffs_.rows() || j >= coeffs_.cols()) return 0.0;
  return coeffs_(i, j);
}

namespace {

// Coefficients of q(xi, eta) = p(ax xi + bx, ay eta + by).
Eigen::MatrixXd substitute_affine(const Eigen::MatrixXd& c, double ax, double bx, double ay, double by) {
  const Eigen::Index nr = c.rows(), nc = c.cols();
  // powers[i](l) = coefficient of t^l in (a t + b)^i
  const auto powers = [](Eigen::Index n, double a, double b) {
    std::vector<Eigen::VectorXd> out{Eigen::VectorXd::Ones(1)};
    for (Eigen::Index i = 1; i < n; ++i) {
      Eigen::VectorXd next = Eigen::VectorXd::Zero(i + 1);
      next.head(i) += b * out.back();
      next.tail(i) += a * out.back();
      out.push_back(std::move(next));
    }
    return out;
  };
  const auto px = powers(nr, ax, bx);
  const auto py = powers(nc, ay, by);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(nr, nc);
  for (Eigen::Index i = 0; i < nr; ++i)
    for (Eigen::Index j = 0; j < nc; ++j)
      if (c(i, j) != 0.0) out.topLeftCorner(i + 1, j + 1) += c(i, j) * px[i] * py[j].transpose();
  return out;
}

}  // namespace

Poly2D Poly2D::in_frame(const Frame& target) const {
  if (target == frame_) return *this;
  // xi_own = (s_own / s_t) xi_t + s_own (c_t - c_own)
  const double a = frame_.s / target.s;
  return Poly2D(substitute_affine(coeffs_, a, frame_.s * (target.cx - frame_.cx), a,
                                  frame_.s * (target.cy - frame_.cy)),
                target);
}

double Poly2D::operator()(double x, double y) const {
  x = frame_.s * (x - frame_.cx);
  y = frame_.s * (y - frame_.cy);
  // Horner in y over columns, each column by Horner in x.
  double result = 0.0;
  for (Eigen::Index j = coeffs_.cols() - 1; j >= 0; --j) {
    double col = 0.0;
    for (Eigen::Index i = coeffs_.rows() - 1; i >= 0; --i) col = col * x + coeffs_(i, j);
    result = result * y + col;
  }
  return result;
}

Poly2D& Poly2D::operator+=(const Poly2D& other_in) {
  if (other_in.is_zero()) return *this;
  if (is_zero()) frame_ = other_in.frame_;
  const Poly2D other = other_in.frame_ == frame_ ? other_in : other_in.in_frame(frame_);
  const Eigen::Index rows = std::max(coeffs_.rows(), other.coeffs_.rows());
  const Eigen::Index cols = std::max(coeffs_.cols(), other.coeffs_.cols());
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(rows, cols);
  sum.topLeftCorner(coeffs_.rows(), coeffs_.cols()) = coeffs_;
  sum.topLeftCorner(other.coeffs_.rows(), other.coeffs_.cols()) += other.coeffs_;
  coeffs_ = std::move(sum);
  trim();
  return *this;
}

Poly2D& Poly2D::operator-=(const Poly2D& other) { return *this += -1.0 * other; }

Poly2D& Poly2D::operator*=(double s) {
  coeffs_ *= s;
  trim();
  return *this;
}

Poly2D operator*(const Poly2D& a, const Poly2D& b_in) {
  if (a.frame_ != b_in.frame_ && a.coeffs_.size() == 1) return a.coeffs_(0, 0) * b_in;
  const Poly2D b = a.frame_ == b_in.frame_ ? b_in : b_in.in_frame(a.frame_);
  const auto& ca = a.coeffs_;
  const auto& cb = b.coeffs_;
  Eigen::MatrixXd prod = Eigen::MatrixXd::Zero(ca.rows() + cb.rows() - 1, ca.cols() + cb.cols() - 1);
  for (Eigen::Index i = 0; i < ca.rows(); ++i)
    for (Eigen::Index j = 0; j < ca.cols(); ++j) {
      if (ca(i, j) == 0.0) continue;
      prod.block(i, j, cb.rows(), cb.cols()) += ca(i, j) * cb;
    }
  return Poly2D(std::move(prod), a.frame_);
}

Poly2D partial(const Poly2D& p, Axis axis) {
  // d/dx = s d/dxi
  const auto& c = p.coeffs();
  const double s = p.frame().s;
  if (axis == Axis::X) {
    if (c.rows() == 1) return Poly2D();
    Eigen::MatrixXd d(c.rows() - 1, c.cols());
    for (Eigen::Index i = 1; i < c.rows(); ++i) d.row(i - 1) = (s * static_cast<double>(i)) * c.row(i);
    return Poly2D(std::move(d), p.frame());
  }
  if (c.cols() == 1) return Poly2D();
  Eigen::MatrixXd d(c.rows(), c.cols() - 1);
  for (Eigen::Index j = 1; j < c.cols(); ++j) d.col(j - 1) = (s * static_cast<double>(j)) * c.col(j);
  return Poly2D(std::move(d), p.frame());
}

Poly2D scalar_curl(const VecPoly2D& u) { return partial(u.u2, Axis::X) - partial(u.u1, Axis::Y); }

VecPoly2D vector_curl(const Poly2D& s) { return {partial(s, Axis::Y), -partial(s, Axis::X)}; }

VecPoly2D gradient(const Poly2D& s) { return {partial(s, Axis::X), partial(s, Axis::Y)}; }

Poly2D laplacian(const Poly2D& s) {
  return partial(partial(s, Axis::X), Axis::X) + partial(partial(s, Axis::Y), Axis::Y);
}

Poly2D dot(const VecPoly2D& a, const VecPoly2D& b) { return a.u1 * b.u1 + a.u2 * b.u2; }

Poly2D substitute_scaled(const Poly2D& p, double cx, double cy, double s) {
  // p(s_p (z - c_p)) at z = s (x - c) equals the same coefficients in frame
  // (c + c_p / s, s_p s).
  const Frame& f = p.frame();
  return Poly2D(p.coeffs(), Frame{cx + f.cx / s, cy + f.cy / s, f.s * s});
}

VecPoly2D times_position(const Poly2D& s) {
  return {s * Poly2D::monomial(1, 0), s * Poly2D::monomial(0, 1)};
}

std::vector<Poly2D> p_basis(int degree) {
  std::vector<Poly2D> basis;
  for (int d = 0; d <= degree; ++d)
    for (int j = 0; j <= d; ++j) basis.push_back(Poly2D::monomial(d - j, j));
  return basis;
}

std::vector<Poly2D> q_basis(int degree_x, int degree_y) {
  std::vector<Poly2D> basis;
  if (degree_x < 0 || degree_y < 0) return basis;
  for (int j = 0; j <= degree_y; ++j)
    for (int i = 0; i <= degree_x; ++i) basis.push_back(Poly2D::monomial(i, j));
  return basis;
}

std::vector<Poly2D> homogeneous_basis(int degree) {
  std::vector<Poly2D> basis;
  if (degree < 0) return basis;
  for (int j = 0; j <= degree; ++j) basis.push_back(Poly2D::monomial(degree - j, j));
  return basis;
}

std::vector<Poly2D> q_tilde_basis(int degree) {
  auto basis = q_basis(degree, degree);
  if (!basis.empty()) basis.erase(basis.begin());
  return basis;
}

namespace {

void require_order(int k, int minimum, const char* what) {
  if (k < minimum)
    throw OrderTooLow(std::string(what) + " requires k >= " + std::to_string(minimum) + ", got " +
                      std::to_string(k));
}

void append_times_position(std::vector<VecPoly2D>& out, const std::vector<Poly2D>& scalars) {
  for (const auto& s : scalars) out.push_back(times_position(s));
}

}  // namespace

std::vector<VecPoly2D> monomial_basis(VectorSpace space, int k) {
  std::vector<VecPoly2D> basis;
  switch (space) {
    case VectorSpace::RectLocal:
      require_order(k, 3, "rectangle space");
      for (const auto& m : q_basis(k - 1, k)) basis.push_back({m, Poly2D()});
      for (const auto& m : q_basis(k, k - 1)) basis.push_back({Poly2D(), m});
      break;
    case VectorSpace::TriLocal:
      require_order(k, 4, "triangle space");
      for (const auto& m : p_basis(k - 1)) basis.push_back({m, Poly2D()});
      for (const auto& m : p_basis(k - 1)) basis.push_back({Poly2D(), m});
      for (auto&& phi : monomial_basis(VectorSpace::PhiK, k)) basis.push_back(std::move(phi));
      break;
    case VectorSpace::PhiK:
      if (k < 1) throw OrderTooLow("Phi_k requires k >= 1");
      // x^a y^b (y, -x) with a + b = k - 1
      for (const auto& m : homogeneous_basis(k - 1))
        basis.push_back({m * Poly2D::monomial(0, 1), m * Poly2D::monomial(1, 0, -1.0)});
      break;
    case VectorSpace::RectMomentX:
      require_order(k, 3, "rectangle interior moments");
      append_times_position(basis, q_basis(k - 2, k - 2));
      break;
    case VectorSpace::RectMomentCurl:
      require_order(k, 3, "rectangle interior moments");
      for (const auto& m : q_tilde_basis(k - 3)) basis.push_back(vector_curl(m));
      break;
    case VectorSpace::RectInteriorTest:
      basis = monomial_basis(VectorSpace::RectMomentX, k);
      for (auto&& q : monomial_basis(VectorSpace::RectMomentCurl, k)) basis.push_back(std::move(q));
      break;
    case VectorSpace::TriInteriorTest:
      require_order(k, 4, "triangle interior moments");
      for (const auto& m : p_basis(k - 5)) basis.push_back({m, Poly2D()});
      for (const auto& m : p_basis(k - 5)) basis.push_back({Poly2D(), m});
      for (int d = k - 5; d <= k - 3; ++d) append_times_position(basis, homogeneous_basis(d));
      break;
  }
  return basis;
}

}  // namespace h2curl
