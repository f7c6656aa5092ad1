#include "strength/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace strength {

ExactVector to_exact(const std::vector<Rational>& v) {
  ExactVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

Eigen::VectorXd to_double(const ExactVector& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = to_double(v[i]).value;
  return out;
}

IntVector to_int_vector(const std::vector<Rational>& v) {
  IntVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_integer() || !v[i].num().fits_slong_p()) throw std::invalid_argument("coefficient is not a small integer");
    out[static_cast<Eigen::Index>(i)] = v[i].num().get_si();
  }
  return out;
}

namespace {

// The incident points shifted by -C, accessed sparsely.
class ShiftedPoints {
 public:
  ShiftedPoints(const ExtremePointSet& pts, const Eigen::VectorXd& C, int threads)
      : pts_(pts), C_(C), threads_(std::max(1, threads)) {
    cc_ = C.squaredNorm();
  }

  std::size_t size() const { return pts_.size(); }

  Eigen::VectorXd dense(std::size_t i) const {
    Eigen::VectorXd v = -C_;
    for (auto e : pts_.point(i)) v[e] += 1.0;
    return v;
  }

  double dot(std::size_t i, const Eigen::VectorXd& x, double xc) const {
    double s = 0.0;
    for (auto e : pts_.point(i)) s += x[e];
    return s - xc;
  }

  double norm2(std::size_t i) const {
    double s = 0.0;
    auto p = pts_.point(i);
    for (auto e : p) s += C_[e];
    return static_cast<double>(p.size()) - 2.0 * s + cc_;
  }

  // argmin_i f(i), scanning in chunks when more than one thread is allowed.
  template <typename F>
  std::pair<std::size_t, double> argmin(F&& f) const {
    auto scan = [&](std::size_t lo, std::size_t hi) {
      std::pair<std::size_t, double> best{lo, std::numeric_limits<double>::infinity()};
      for (std::size_t i = lo; i < hi; ++i) {
        double v = f(i);
        if (v < best.second) best = {i, v};
      }
      return best;
    };
    const std::size_t n = size();
    if (threads_ == 1 || n < 20000) return scan(0, n);
    std::vector<std::pair<std::size_t, double>> parts(threads_);
    std::vector<std::thread> pool;
    std::size_t chunk = (n + threads_ - 1) / threads_;
    for (int t = 0; t < threads_; ++t) {
      std::size_t lo = std::min(n, t * chunk), hi = std::min(n, lo + chunk);
      pool.emplace_back([&, t, lo, hi] { parts[t] = lo < hi ? scan(lo, hi) : std::pair<std::size_t, double>{lo, std::numeric_limits<double>::infinity()}; });
    }
    for (auto& th : pool) th.join();
    auto best = parts[0];
    for (const auto& p : parts)
      if (p.second < best.second) best = p;  // lowest chunk wins ties, so results are deterministic
    return best;
  }

 private:
  const ExtremePointSet& pts_;
  const Eigen::VectorXd& C_;
  int threads_;
  double cc_ = 0.0;
};

struct ActiveSet {
  std::vector<std::size_t> ids;
  std::vector<Eigen::VectorXd> vecs;
  std::vector<double> lambda;

  Eigen::VectorXd point() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(vecs.front().size());
    for (std::size_t i = 0; i < vecs.size(); ++i) x += lambda[i] * vecs[i];
    return x;
  }

  void erase(std::size_t i) {
    ids.erase(ids.begin() + static_cast<long>(i));
    vecs.erase(vecs.begin() + static_cast<long>(i));
    lambda.erase(lambda.begin() + static_cast<long>(i));
  }
};

// Minimiser of |y| over the affine hull of the active vectors; false when they
// are affinely dependent.
bool affine_minimizer(const ActiveSet& s, std::vector<double>& mu) {
  const std::size_t k = s.vecs.size();
  mu.assign(k, 0.0);
  if (k == 1) {
    mu[0] = 1.0;
    return true;
  }
  const auto& p0 = s.vecs[0];
  Eigen::MatrixXd D(p0.size(), static_cast<Eigen::Index>(k - 1));
  for (std::size_t i = 1; i < k; ++i) D.col(static_cast<Eigen::Index>(i - 1)) = s.vecs[i] - p0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D);
  qr.setThreshold(1e-12);
  if (qr.rank() < static_cast<Eigen::Index>(k - 1)) return false;
  Eigen::VectorXd z = qr.solve(-p0);
  double rest = 1.0;
  for (std::size_t i = 1; i < k; ++i) {
    mu[i] = z[static_cast<Eigen::Index>(i - 1)];
    rest -= mu[i];
  }
  mu[0] = rest;
  return true;
}

// Away-step Frank-Wolfe from the current active set.
void frank_wolfe(const ShiftedPoints& sp, const Eigen::VectorXd& C, ActiveSet& s, const HullOptions& opt,
                 HullDistanceResult& out) {
  out.used_fallback = true;
  Eigen::VectorXd x = s.point();
  for (int it = 0; it < opt.max_iterations; ++it) {
    double xx = x.squaredNorm();
    double xc = x.dot(C);
    auto [j, val] = sp.argmin([&](std::size_t i) { return sp.dot(i, x, xc); });
    out.certificate_gap = xx - val;
    out.iterations++;
    if (out.certificate_gap <= opt.gap_tolerance) return;
    std::size_t away = 0;
    double away_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.ids.size(); ++i) {
      double v = s.vecs[i].dot(x);
      if (v > away_val) {
        away_val = v;
        away = i;
      }
    }
    Eigen::VectorXd pj = sp.dense(j);
    bool toward = (xx - val) >= (away_val - xx) || s.ids.size() == 1;
    Eigen::VectorXd dir = toward ? Eigen::VectorXd(pj - x) : Eigen::VectorXd(x - s.vecs[away]);
    double max_step = toward ? 1.0 : s.lambda[away] / (1.0 - s.lambda[away]);
    double dd = dir.squaredNorm();
    if (dd == 0.0) return;
    double step = std::clamp(-x.dot(dir) / dd, 0.0, max_step);
    if (toward) {
      auto pos = std::find(s.ids.begin(), s.ids.end(), j);
      for (auto& l : s.lambda) l *= (1.0 - step);
      if (pos == s.ids.end()) {
        s.ids.push_back(j);
        s.vecs.push_back(pj);
        s.lambda.push_back(step);
      } else {
        s.lambda[static_cast<std::size_t>(pos - s.ids.begin())] += step;
      }
    } else {
      for (auto& l : s.lambda) l *= (1.0 + step);
      s.lambda[away] -= step;
      if (s.lambda[away] <= 1e-15) s.erase(away);
    }
    x = s.point();
  }
}

HullDistanceResult wolfe(const ShiftedPoints& sp, const Eigen::VectorXd& C, const HullOptions& opt) {
  HullDistanceResult out;
  auto [j0, n0] = sp.argmin([&](std::size_t i) { return sp.norm2(i); });
  (void)n0;
  ActiveSet s;
  s.ids = {j0};
  s.vecs = {sp.dense(j0)};
  s.lambda = {1.0};
  Eigen::VectorXd x = s.vecs[0];
  std::vector<double> mu;
  bool converged = false;
  for (int major = 0; major < opt.max_iterations; ++major) {
    out.iterations++;
    double xx = x.squaredNorm();
    double xc = x.dot(C);
    auto [j, val] = sp.argmin([&](std::size_t i) { return sp.dot(i, x, xc); });
    out.certificate_gap = xx - val;
    if (out.certificate_gap <= opt.gap_tolerance) {
      converged = true;
      break;
    }
    if (std::find(s.ids.begin(), s.ids.end(), j) != s.ids.end()) break;
    s.ids.push_back(j);
    s.vecs.push_back(sp.dense(j));
    s.lambda.push_back(0.0);
    bool degenerate = false;
    for (int minor = 0; minor < 10000; ++minor) {
      if (!affine_minimizer(s, mu)) {
        degenerate = true;
        break;
      }
      bool interior = std::all_of(mu.begin(), mu.end(), [](double v) { return v > 1e-14; });
      if (interior) {
        s.lambda = mu;
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu[i] <= 1e-14) theta = std::min(theta, s.lambda[i] / (s.lambda[i] - mu[i]));
      for (std::size_t i = 0; i < mu.size(); ++i) s.lambda[i] += theta * (mu[i] - s.lambda[i]);
      for (std::size_t i = s.lambda.size(); i-- > 0;)
        if (s.lambda[i] <= 1e-14) s.erase(i);
      double total = 0.0;
      for (double l : s.lambda) total += l;
      for (double& l : s.lambda) l /= total;
    }
    if (degenerate) {
      // Drop the dependent newcomer and let Frank-Wolfe finish the job.
      s.erase(s.ids.size() - 1);
      break;
    }
    x = s.point();
  }
  if (!converged) frank_wolfe(sp, C, s, opt, out);
  x = s.point();
  out.distance_squared = x.squaredNorm();
  for (std::size_t i = 0; i < s.ids.size(); ++i) out.weights.emplace_back(s.ids[i], s.lambda[i]);
  std::sort(out.weights.begin(), out.weights.end());
  return out;
}

HullDistanceResult affine_projection(const ShiftedPoints& sp, const Eigen::VectorXd& C) {
  HullDistanceResult out;
  const Eigen::Index m = C.size();
  Eigen::VectorXd p0 = sp.dense(0);
  Eigen::MatrixXd Q(m, 0);
  std::vector<std::size_t> chosen;
  for (std::size_t i = 1; i < sp.size() && Q.cols() < m; ++i) {
    Eigen::VectorXd v = sp.dense(i) - p0;
    double vn = v.norm();
    Eigen::VectorXd r = v;
    for (int pass = 0; pass < 2; ++pass) r -= Q * (Q.transpose() * r);
    double rn = r.norm();
    if (rn > 1e-9 * (1.0 + vn)) {
      Q.conservativeResize(Eigen::NoChange, Q.cols() + 1);
      Q.col(Q.cols() - 1) = r / rn;
      chosen.push_back(i);
    }
  }
  Eigen::VectorXd x = p0 - Q * (Q.transpose() * p0);
  x -= Q * (Q.transpose() * x);
  out.distance_squared = x.squaredNorm();
  out.iterations = 1;
  // Affine weights of x in terms of the chosen points.
  double w0 = 1.0;
  if (!chosen.empty()) {
    Eigen::MatrixXd D(m, static_cast<Eigen::Index>(chosen.size()));
    for (std::size_t c = 0; c < chosen.size(); ++c) D.col(static_cast<Eigen::Index>(c)) = sp.dense(chosen[c]) - p0;
    Eigen::VectorXd z = D.colPivHouseholderQr().solve(x - p0);
    for (std::size_t c = 0; c < chosen.size(); ++c) {
      out.weights.emplace_back(chosen[c], z[static_cast<Eigen::Index>(c)]);
      w0 -= z[static_cast<Eigen::Index>(c)];
    }
  }
  out.weights.insert(out.weights.begin(), {0, w0});
  // Orthogonality residual: x must be normal to every difference p_i - p_0.
  double xc = x.dot(C);
  double base = sp.dot(0, x, xc);
  double worst = 0.0;
  for (std::size_t i = 1; i < sp.size(); ++i) worst = std::max(worst, std::fabs(sp.dot(i, x, xc) - base));
  out.certificate_gap = worst;
  return out;
}

}  // namespace

HullDistanceResult hull_distance(const ExtremePointSet& points, const Eigen::VectorXd& C, HullMode mode,
                                 const HullOptions& options) {
  if (C.size() != points.indexer().m()) throw std::invalid_argument("centroid dimension mismatch");
  if (points.size() == 0) {
    HullDistanceResult r;
    r.infinite = true;
    r.distance_squared = std::numeric_limits<double>::infinity();
    return r;
  }
  if (points.size() > options.max_points)
    throw ResourceGuardError("incident point set exceeds the hull_distance budget");
  ShiftedPoints sp(points, C, options.threads);
  return mode == HullMode::Convex ? wolfe(sp, C, options) : affine_projection(sp, C);
}

AngleResult interior_angle_first_principles(const IntVector& a1, const IntVector& a2, const IntVector& c) {
  if (a1.size() != c.size() || a2.size() != c.size()) throw std::invalid_argument("angle dimension mismatch");
  BigInt s = exact_dot(c, c);
  BigInt r1 = exact_dot(a1, c);
  BigInt r2 = exact_dot(a2, c);
  if (!s.fits_slong_p() || !r1.fits_slong_p() || !r2.fits_slong_p())
    throw std::overflow_error("angle coefficients too large");
  const std::int64_t sv = s.get_si(), r1v = r1.get_si(), r2v = r2.get_si();
  IntVector h1 = a1 * sv - c * r1v;
  IntVector h2 = a2 * sv - c * r2v;
  if (exact_dot(h1, c) != 0 || exact_dot(h2, c) != 0)
    throw std::logic_error("projected normal is not orthogonal to the affine hull");
  AngleResult out;
  out.numerator = exact_dot(h1, h2);
  BigInt n1 = exact_dot(h1, h1), n2 = exact_dot(h2, h2);
  if (n1 == 0 || n2 == 0) throw std::domain_error("zero projection: facet parallel to the affine hull");
  out.denominator_squared = n1 * n2;
  // cos phi = num / sqrt(den2), evaluated through logs to stay clear of overflow.
  double cosphi = 0.0;
  if (out.numerator != 0) {
    double lg = log_abs(out.numerator) - 0.5 * log_abs(out.denominator_squared);
    cosphi = sgn(out.numerator) * std::exp(lg);
  }
  cosphi = std::clamp(cosphi, -1.0, 1.0);
  out.theta = std::numbers::pi - std::acos(cosphi);
  return out;
}

}  // namespace strength
