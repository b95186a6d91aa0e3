#include "hyperpara/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "hyperpara/error.hpp"

namespace hyperpara {

namespace {

using cd = std::complex<double>;

struct CMat {
  std::size_t n;
  std::vector<cd> a;
  explicit CMat(std::size_t n_) : n(n_), a(n_ * n_) {}
  cd& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  cd operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

CMat operator*(const CMat& x, const CMat& y) {
  CMat r(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k)
      for (std::size_t j = 0; j < x.n; ++j) r(i, j) += x(i, k) * y(k, j);
  return r;
}
CMat lin(cd s, const CMat& x, cd t, const CMat& y) {
  CMat r(x.n);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = s * x.a[i] + t * y.a[i];
  return r;
}
// E^j_k, 1-based
CMat E(std::size_t n, std::size_t j, std::size_t k) {
  CMat r(n);
  r(j - 1, k - 1) = 1;
  return r;
}
double B(const CMat& x, const CMat& y) {
  cd t;
  CMat p = x * y;
  for (std::size_t i = 0; i < p.n; ++i) t += p(i, i);
  return 0.5 * t.real();
}

// Dense real n×n matrix, column j the image of e_j.
struct RMat {
  std::size_t n;
  std::vector<double> a;
  explicit RMat(std::size_t n_) : n(n_), a(n_ * n_) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};
RMat operator*(const RMat& x, const RMat& y) {
  RMat r(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k)
      if (x(i, k) != 0)
        for (std::size_t j = 0; j < x.n; ++j) r(i, j) += x(i, k) * y(k, j);
  return r;
}

RMat invert(RMat m) {
  std::size_t n = m.n;
  RMat inv(n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(p, c))) p = r;
    if (std::abs(m(p, c)) < 1e-9) throw Error(ErrorCode::Degenerate, "float fallback: singular Gram matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(p, j), m(c, j));
      std::swap(inv(p, j), inv(c, j));
    }
    double f = 1 / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= f;
      inv(c, j) *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0) continue;
      double g = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= g * m(c, j);
        inv(r, j) -= g * inv(c, j);
      }
    }
  }
  return inv;
}

// Alternating 3-form stored as a dense n³ array.
struct Form3 {
  std::size_t n;
  std::vector<double> a;
  explicit Form3(std::size_t n_) : n(n_), a(n_ * n_ * n_) {}
  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return a[(i * n + j) * n + k]; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return a[(i * n + j) * n + k]; }
  void set(std::size_t i, std::size_t j, std::size_t k, double v) {
    (*this)(i, j, k) = (*this)(j, k, i) = (*this)(k, i, j) = v;
    (*this)(j, i, k) = (*this)(i, k, j) = (*this)(k, j, i) = -v;
  }
};

class Engine {
 public:
  Engine(int m, double tol) : m_(m), tol_(tol) {}

  FloatKillingReport run() {
    build();
    FloatKillingReport r;
    r.m = m_;
    r.dim = n_;
    r.tolerance = tol_;
    r.paraquaternionic = check("paraquaternionic identities", paraquaternionic_residual());
    r.integrable = check("Nijenhuis tensors", nijenhuis_residual());
    r.compatible = check("metric compatibility", compatibility_residual());
    r.biinvariant = check("bi-invariance", biinvariance_residual());
    std::array<Form3, 3> daFa{Form3(n_), Form3(n_), Form3(n_)};
    for (int a = 1; a <= 3; ++a) daFa[a - 1] = d_a_F(a);
    r.hpkt = check("d1F1 = d2F2 = d3F3", std::max(diff(daFa[0], daFa[1]), diff(daFa[1], daFa[2])));
    Form3 T = killing_torsion();
    r.torsion_matches = check("torsion = -B([,],)", diff(daFa[0], T));
    r.strong = check("dT = 0", dT_residual(daFa[0]));
    r.flat = check("HPKT connection = 0", connection_residual(daFa[0]));
    auto [c, res] = einstein();
    r.einstein_constant = c;
    r.einstein = check("Ric = c B", res);
    r.max_residual = max_residual_;
    r.failures = failures_;
    return r;
  }

 private:
  bool check(const std::string& what, double residual) {
    if (residual > tol_) {
      failures_.push_back(what + " (residual " + std::to_string(residual) + ")");
      return false;
    }
    max_residual_ = std::max(max_residual_, residual);
    return true;
  }

  void build() {
    std::size_t N = static_cast<std::size_t>(2 * m_ - 1), M = static_cast<std::size_t>(m_);
    const cd I(0, 1);
    std::vector<CMat> zs;
    for (std::size_t j = 1; j < M; ++j) {
      CMat z = lin(I, lin(1, E(N, j, j), 1, E(N, 2 * M - j, 2 * M - j)), -2.0 * I, E(N, M, M));
      for (const auto& q : zs) z = lin(1, z, -B(z, q) / B(q, q), q);
      zs.push_back(lin(1 / std::sqrt(-B(z, z)), z, 0, z));
    }
    std::vector<std::array<std::size_t, 4>> xywz, uvst;
    auto push = [&](CMat x) {
      mats_.push_back(std::move(x));
      return mats_.size() - 1;
    };
    for (std::size_t j = 1; j < M; ++j) {
      std::size_t c = 2 * M - j;
      std::size_t X = push(lin(I, E(N, j, j), -I, E(N, c, c)));
      std::size_t Y = push(lin(1, E(N, j, c), 1, E(N, c, j)));
      std::size_t W = push(lin(I, E(N, j, c), -I, E(N, c, j)));
      std::size_t Z = push(zs[j - 1]);
      xywz.push_back({X, Y, W, Z});
    }
    for (std::size_t j = 1; j < M; ++j)
      for (std::size_t k = j + 1; k < 2 * M - j; ++k) {
        std::size_t c = 2 * M - j;
        std::size_t U, V, S, T;
        if (k <= M) {
          U = push(lin(1, E(N, j, k), -1, E(N, k, j)));
          V = push(lin(I, E(N, j, k), I, E(N, k, j)));
          S = push(lin(1, E(N, k, c), 1, E(N, c, k)));
          T = push(lin(I, E(N, k, c), -I, E(N, c, k)));
        } else {
          U = push(lin(1, E(N, k, c), -1, E(N, c, k)));
          V = push(lin(I, E(N, k, c), I, E(N, c, k)));
          S = push(lin(-1, E(N, j, k), -1, E(N, k, j)));
          T = push(lin(I, E(N, k, j), -I, E(N, j, k)));
        }
        uvst.push_back({U, V, S, T});
      }
    n_ = mats_.size();
    g_ = RMat(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) g_(i, j) = B(mats_[i], mats_[j]);
    ginv_ = invert(g_);
    // structure constants through the Gram matrix, then a closure check
    c_.assign(n_ * n_, std::vector<double>(n_, 0.0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        CMat br = lin(1, mats_[i] * mats_[j], -1, mats_[j] * mats_[i]);
        std::vector<double> b(n_);
        for (std::size_t l = 0; l < n_; ++l) b[l] = B(br, mats_[l]);
        std::vector<double> x(n_, 0.0);
        for (std::size_t k = 0; k < n_; ++k)
          for (std::size_t l = 0; l < n_; ++l) x[k] += ginv_(k, l) * b[l];
        CMat rest = br;
        for (std::size_t k = 0; k < n_; ++k) rest = lin(1, rest, -x[k], mats_[k]);
        double err = 0;
        for (auto v : rest.a) err = std::max(err, std::abs(v));
        if (err > tol_) throw Error(ErrorCode::NotClosedUnderBracket, "float fallback: basis not closed");
        for (auto& v : x)
          if (std::abs(v) < 1e-15) v = 0;
        c_[i * n_ + j] = x;
        for (std::size_t k = 0; k < n_; ++k) c_[j * n_ + i][k] = -x[k];
      }
    // sparse brackets
    sc_.assign(n_ * n_, {});
    for (std::size_t p = 0; p < n_ * n_; ++p)
      for (std::size_t k = 0; k < n_; ++k)
        if (c_[p][k] != 0) sc_[p].emplace_back(k, c_[p][k]);
    // same block maps as the exact entry: J e_a = s·e_b, J e_b = sq·s·e_a
    RMat J2(n_), J3(n_);
    auto setm = [](RMat& J, std::size_t a, std::size_t b, double sq) {
      J(b, a) = 1;
      J(a, b) = sq;
    };
    for (const auto& [X, Y, W, Z] : xywz) {
      setm(J3, Z, X, -1);
      setm(J3, Y, W, -1);
      setm(J2, Z, W, 1);
      setm(J2, X, Y, 1);
    }
    for (const auto& [U, V, S, T] : uvst) {
      setm(J3, U, V, -1);
      setm(J3, S, T, -1);
      setm(J2, U, T, 1);
      setm(J2, V, S, 1);
    }
    J_ = {J3 * J2, J2, J3};
  }

  const RMat& J(int a) const { return J_[static_cast<std::size_t>(a - 1)]; }

  std::vector<double> apply(const RMat& A, const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) y[i] += A(i, j) * x[j];
    return y;
  }
  std::vector<double> bracket(const std::vector<double>& x, const std::vector<double>& y) const {
    std::vector<double> r(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (y[j] == 0) continue;
        for (const auto& [k, v] : sc_[i * n_ + j]) r[k] += x[i] * y[j] * v;
      }
    }
    return r;
  }
  std::vector<double> col(const RMat& A, std::size_t j) const {
    std::vector<double> v(n_);
    for (std::size_t i = 0; i < n_; ++i) v[i] = A(i, j);
    return v;
  }
  static double maxabs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }

  double paraquaternionic_residual() const {
    double r = 0;
    RMat J12 = J(1) * J(2), J21 = J(2) * J(1);
    RMat sq[3] = {J(1) * J(1), J(2) * J(2), J(3) * J(3)};
    double s[3] = {1, 1, -1};
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        double id = i == j ? 1 : 0;
        for (int a = 0; a < 3; ++a) r = std::max(r, std::abs(sq[a](i, j) - s[a] * id));
        r = std::max(r, std::abs(J12(i, j) + J21(i, j)));
        r = std::max(r, std::abs(J12(i, j) - J(3)(i, j)));
      }
    return r;
  }

  double nijenhuis_residual() const {
    double r = 0;
    for (int a = 1; a <= 3; ++a) {
      const RMat& A = J(a);
      double sq = a == 3 ? -1 : 1;
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) {
          std::vector<double> x(n_);
          std::vector<double> ei(n_, 0.0), ej(n_, 0.0);
          ei[i] = ej[j] = 1;
          auto Ji = col(A, i), Jj = col(A, j);
          auto t1 = bracket(Ji, Jj);
          auto t2 = apply(A, bracket(Ji, ej));
          auto t3 = apply(A, bracket(ei, Jj));
          auto t4 = bracket(ei, ej);
          for (std::size_t k = 0; k < n_; ++k) x[k] = t1[k] - t2[k] - t3[k] + sq * t4[k];
          r = std::max(r, maxabs(x));
        }
    }
    return r;
  }

  double compatibility_residual() const {
    double r = 0;
    for (int a = 1; a <= 3; ++a) {
      RMat Jt(n_);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) Jt(i, j) = J(a)(j, i);
      RMat p = Jt * g_ * J(a);
      double s = a == 3 ? 1 : -1;
      for (std::size_t i = 0; i < n_ * n_; ++i) r = std::max(r, std::abs(p.a[i] - s * g_.a[i]));
    }
    return r;
  }

  // g([x,y],z) + g(y,[x,z])
  double biinvariance_residual() const {
    double r = 0;
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        for (std::size_t z = 0; z < n_; ++z) {
          double v = 0;
          for (const auto& [k, c] : sc_[x * n_ + y]) v += c * g_(k, z);
          for (const auto& [k, c] : sc_[x * n_ + z]) v += c * g_(y, k);
          r = std::max(r, std::abs(v));
        }
    return r;
  }

  // F(e_i,e_j) = g(e_i, J e_j)
  RMat kaehler(int a) const { return g_ * J(a); }

  // (M*ω)(X,Y) = ω(MX,MY)
  RMat pull2(const RMat& M, const RMat& w) const {
    RMat Mt(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) Mt(i, j) = M(j, i);
    return Mt * w * M;
  }
  Form3 pull3(const RMat& M, const Form3& w) const {
    std::vector<std::vector<std::pair<std::size_t, double>>> cols(n_);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i)
        if (M(i, j) != 0) cols[j].emplace_back(i, M(i, j));
    Form3 out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        for (std::size_t k = j + 1; k < n_; ++k) {
          double v = 0;
          for (const auto& [p, a] : cols[i])
            for (const auto& [q, b] : cols[j])
              for (const auto& [s, c] : cols[k]) v += a * b * c * w(p, q, s);
          out.set(i, j, k, v);
        }
    return out;
  }
  // dω(x,y,z) = −ω([x,y],z) + ω([x,z],y) − ω([y,z],x)
  Form3 d2(const RMat& w) const {
    Form3 out(n_);
    auto wb = [&](std::size_t x, std::size_t y, std::size_t z) {
      double v = 0;
      for (const auto& [k, c] : sc_[x * n_ + y]) v += c * w(k, z);
      return v;
    };
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        for (std::size_t k = j + 1; k < n_; ++k) out.set(i, j, k, -wb(i, j, k) + wb(i, k, j) - wb(j, k, i));
    return out;
  }
  // d_a F = −J_a d J_a F (a = 1, 2), d₃F = J₃ d J₃ F; J on a 3-form is −pullback.
  Form3 d_a_F(int a) const {
    Form3 w = pull3(J(a), d2(pull2(J(a), kaehler(a))));
    if (a == 3)
      for (auto& v : w.a) v = -v;
    return w;
  }
  Form3 killing_torsion() const {
    Form3 t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        for (std::size_t k = j + 1; k < n_; ++k) {
          double v = 0;
          for (const auto& [p, c] : sc_[i * n_ + j]) v += c * g_(p, k);
          t.set(i, j, k, -v);
        }
    return t;
  }
  static double diff(const Form3& a, const Form3& b) {
    double r = 0;
    for (std::size_t i = 0; i < a.a.size(); ++i) r = std::max(r, std::abs(a.a[i] - b.a[i]));
    return r;
  }
  // dT(x0,…,x3) = Σ_{i<j} (−1)^{i+j} T([x_i,x_j], …)
  double dT_residual(const Form3& T) const {
    double r = 0;
    auto tb = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
      double v = 0;
      for (const auto& [k, s] : sc_[a * n_ + b]) v += s * T(k, c, d);
      return v;
    };
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = a + 1; b < n_; ++b)
        for (std::size_t c = b + 1; c < n_; ++c)
          for (std::size_t d = c + 1; d < n_; ++d) {
            double v = -tb(a, b, c, d) + tb(a, c, b, d) - tb(a, d, b, c) - tb(b, c, a, d) + tb(b, d, a, c) -
                       tb(c, d, a, b);
            r = std::max(r, std::abs(v));
          }
    return r;
  }
  // g(∇_x y, z) = Koszul + ½T(x,y,z)
  double connection_residual(const Form3& T) const {
    double r = 0;
    auto gb = [&](std::size_t x, std::size_t y, std::size_t z) {
      double v = 0;
      for (const auto& [k, c] : sc_[x * n_ + y]) v += c * g_(k, z);
      return v;
    };
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        for (std::size_t z = 0; z < n_; ++z) {
          double v = 0.5 * (gb(x, y, z) - gb(y, z, x) + gb(z, x, y)) + 0.5 * T(x, y, z);
          r = std::max(r, std::abs(v));
        }
    return r;
  }
  // Levi-Civita Λ_x y from Koszul; R(x,y)z = Λ_xΛ_yz − Λ_yΛ_xz − Λ_{[x,y]}z; Ric(y,z) = tr(x ↦ R(x,y)z)
  std::pair<double, double> einstein() const {
    std::vector<RMat> L(n_, RMat(n_));
    for (std::size_t x = 0; x < n_; ++x) {
      RMat low(n_);  // low(z, y) = g(Λ_x y, z)
      for (std::size_t y = 0; y < n_; ++y)
        for (std::size_t z = 0; z < n_; ++z) {
          double v = 0;
          for (const auto& [k, c] : sc_[x * n_ + y]) v += c * g_(k, z);
          for (const auto& [k, c] : sc_[y * n_ + z]) v -= c * g_(k, x);
          for (const auto& [k, c] : sc_[z * n_ + x]) v += c * g_(k, y);
          low(z, y) = 0.5 * v;
        }
      L[x] = ginv_ * low;
    }
    RMat ric(n_);
    std::vector<double> tr1(n_, 0.0);  // Σ_x Λ_x(x, w)
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t w = 0; w < n_; ++w) tr1[w] += L[x](x, w);
    for (std::size_t y = 0; y < n_; ++y)
      for (std::size_t z = 0; z < n_; ++z) {
        double v = 0;
        for (std::size_t w = 0; w < n_; ++w) v += tr1[w] * L[y](w, z);
        for (std::size_t x = 0; x < n_; ++x)
          for (std::size_t w = 0; w < n_; ++w) v -= L[y](x, w) * L[x](w, z);
        for (std::size_t x = 0; x < n_; ++x)
          for (const auto& [k, c] : sc_[x * n_ + y]) v -= c * L[k](x, z);
        ric(y, z) = v;
      }
    std::size_t p = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (std::abs(g_(i, i)) > std::abs(g_(p, p))) p = i;
    double c = ric(p, p) / g_(p, p);
    double r = 0;
    for (std::size_t i = 0; i < n_ * n_; ++i) r = std::max(r, std::abs(ric.a[i] - c * g_.a[i]));
    return {c, r};
  }

  int m_;
  double tol_;
  std::size_t n_ = 0;
  std::vector<CMat> mats_;
  RMat g_{0}, ginv_{0};
  std::vector<std::vector<double>> c_;
  std::vector<std::vector<std::pair<std::size_t, double>>> sc_;
  std::array<RMat, 3> J_{RMat(0), RMat(0), RMat(0)};
  double max_residual_ = 0;
  std::vector<std::string> failures_;
};

}  // namespace

FloatKillingReport float_killing(int m, double tolerance) {
  if (m < 2 || m > 6) throw Error(ErrorCode::UnsupportedParameter, "float fallback supports 2 <= m <= 6");
  return Engine(m, tolerance).run();
}

}  // namespace hyperpara
