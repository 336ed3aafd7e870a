#include "acp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace acp::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

double golden_section(const std::function<double(double)>& f, double lo, double hi, double tol,
                      double* arg, int* iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    ++*iterations;
    if (f1 <= f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  *arg = f1 <= f2 ? x1 : x2;
  return std::min(f1, f2);
}

// R^T M R for R = [[cos, -sin], [sin, cos]].
Sym2 rotate(const Sym2& m, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // M R
  const double mr11 = m[0] * c + m[1] * s;
  const double mr12 = -m[0] * s + m[1] * c;
  const double mr21 = m[1] * c + m[2] * s;
  const double mr22 = -m[1] * s + m[2] * c;
  return {c * mr11 + s * mr21, c * mr12 + s * mr22, -s * mr12 + c * mr22};
}

// R diag(d1, d2) R^T.
Sym2 unrotate_diag(double d1, double d2, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * c * d1 + s * s * d2, c * s * d1 - s * c * d2, s * s * d1 + c * c * d2};
}

Sym2 commit(const Sym2& m, double theta) {
  const Sym2 r = rotate(m, theta);
  return unrotate_diag(r[0], r[2], theta);
}

double distance_at(const Sym2& a, const Sym2& b, double theta) {
  const Sym2 ap = commit(a, theta);
  const Sym2 bp = commit(b, theta);
  return sym2_norm({a[0] - ap[0], a[1] - ap[1], a[2] - ap[2]}) +
         sym2_norm({b[0] - bp[0], b[1] - bp[1], b[2] - bp[2]});
}

}  // namespace

double sym2_norm(const Sym2& m) {
  const double mean = 0.5 * (m[0] + m[2]);
  const double half = 0.5 * (m[0] - m[2]);
  const double rad = std::sqrt(half * half + m[1] * m[1]);
  return std::abs(mean) + rad;
}

BruteForce2x2 brute_force_2x2(const Sym2& a, const Sym2& b) {
  constexpr std::size_t grid = 10000;
  const double h = 0.5 * kPi / grid;
  std::vector<double> values(grid);
  for (std::size_t k = 0; k < grid; ++k) values[k] = distance_at(a, b, k * h);

  BruteForce2x2 out;
  out.report.grid_resolution = grid;
  std::size_t best_k = 0;
  for (std::size_t k = 1; k < grid; ++k)
    if (values[k] < values[best_k]) best_k = k;
  out.report.grid_value = values[best_k];

  // Refine every grid local minimum within 1e-2 of the best.
  std::vector<std::size_t> starts;
  for (std::size_t k = 0; k < grid; ++k) {
    const double left = values[(k + grid - 1) % grid];
    const double right = values[(k + 1) % grid];
    if (values[k] <= left && values[k] <= right && values[k] <= values[best_k] + 1e-2)
      starts.push_back(k);
  }
  double best = values[best_k];
  double best_theta = best_k * h;
  auto f = [&](double t) { return distance_at(a, b, t); };
  for (std::size_t k : starts) {
    double theta = 0.0;
    const double v = golden_section(f, (k - 1.0) * h, (k + 1.0) * h, 1e-10, &theta,
                                    &out.report.refinement_iterations);
    if (v < best) {
      best = v;
      best_theta = theta;
    }
  }
  out.distance = best;
  out.report.best_value = best;
  out.report.argument = {best_theta};
  out.a_prime = commit(a, best_theta);
  out.b_prime = commit(b, best_theta);
  return out;
}

template <class T>
double rotated_off_energy(std::span<const DenseMatrix<T>> mats, std::size_t i, std::size_t j,
                          double c, const T& s) {
  double energy = 0.0;
  for (const auto& m : mats) {
    const std::size_t n = m.size();
    // Full rotation matrix, then U* M U by plain triple loops.
    DenseMatrix<T> u = DenseMatrix<T>::identity(n);
    u(i, i) = T{c};
    u(j, j) = T{c};
    u(j, i) = s;
    u(i, j) = -Algebra<T>::conj(s);
    DenseMatrix<T> mu(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t q = 0; q < n; ++q) {
        T acc{};
        for (std::size_t k = 0; k < n; ++k) acc += m(r, k) * u(k, q);
        mu(r, q) = acc;
      }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t q = 0; q < n; ++q) {
        if (r == q) continue;
        T acc{};
        for (std::size_t k = 0; k < n; ++k) acc += Algebra<T>::conj(u(k, r)) * mu(k, q);
        energy += Algebra<T>::norm2(acc);
      }
  }
  return energy;
}

namespace {

// Maps the parameter vector to (c, s).
template <class T>
std::pair<double, T> rotation_from_params(const std::vector<double>& p) {
  const double theta = p[0];
  double comp[4] = {0.0, 0.0, 0.0, 0.0};
  if constexpr (Algebra<T>::dim == 1) {
    comp[0] = std::sin(theta);
  } else if constexpr (Algebra<T>::dim == 2) {
    comp[0] = std::sin(theta) * std::cos(p[1]);
    comp[1] = std::sin(theta) * std::sin(p[1]);
  } else {
    const double psi = p[1];
    const double chi = p[2];
    const double phi = p[3];
    const double st = std::sin(theta);
    comp[0] = st * std::cos(psi);
    comp[1] = st * std::sin(psi) * std::cos(chi);
    comp[2] = st * std::sin(psi) * std::sin(chi) * std::cos(phi);
    comp[3] = st * std::sin(psi) * std::sin(chi) * std::sin(phi);
  }
  return {std::cos(theta), Algebra<T>::from_components(comp)};
}

}  // namespace

template <class T>
OracleReport numeric_rotation_min(std::span<const DenseMatrix<T>> mats, std::size_t i,
                                  std::size_t j) {
  constexpr int d = Algebra<T>::dim;
  // Parameter boxes and grid sizes per algebra.
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<int> counts;
  if constexpr (d == 1) {
    lo = {-0.5 * kPi}; hi = {0.5 * kPi}; counts = {4000};
  } else if constexpr (d == 2) {
    lo = {0.0, 0.0}; hi = {0.5 * kPi, 2.0 * kPi}; counts = {96, 192};
  } else {
    lo = {0.0, 0.0, 0.0, 0.0}; hi = {0.5 * kPi, kPi, kPi, 2.0 * kPi}; counts = {14, 14, 14, 28};
  }
  const std::size_t dims = lo.size();
  auto energy = [&](const std::vector<double>& p) {
    const auto [c, s] = rotation_from_params<T>(p);
    return rotated_off_energy<T>(mats, i, j, c, s);
  };

  OracleReport rep;
  std::size_t total = 1;
  for (int c : counts) total *= static_cast<std::size_t>(c);
  rep.grid_resolution = total;
  std::vector<double> p(dims);
  std::vector<double> best_p(dims);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = 0; k < dims; ++k) {
      const auto ck = static_cast<std::size_t>(counts[k]);
      const std::size_t idx = rem % ck;
      rem /= ck;
      p[k] = lo[k] + (hi[k] - lo[k]) * (static_cast<double>(idx) + 0.5) / static_cast<double>(ck);
    }
    const double e = energy(p);
    if (e < best) {
      best = e;
      best_p = p;
    }
  }
  rep.grid_value = best;

  // Compass search with step halving.
  std::vector<double> step(dims);
  for (std::size_t k = 0; k < dims; ++k) step[k] = (hi[k] - lo[k]) / counts[k];
  while (*std::max_element(step.begin(), step.end()) > 1e-11) {
    bool improved = false;
    for (std::size_t k = 0; k < dims; ++k) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> trial = best_p;
        trial[k] += sign * step[k];
        const double e = energy(trial);
        ++rep.refinement_iterations;
        if (e < best) {
          best = e;
          best_p = trial;
          improved = true;
        }
      }
    }
    if (!improved)
      for (auto& s : step) s *= 0.5;
  }
  rep.best_value = best;
  rep.argument = best_p;
  return rep;
}

template OracleReport numeric_rotation_min<double>(std::span<const DenseMatrix<double>>, std::size_t, std::size_t);
template OracleReport numeric_rotation_min<cplx>(std::span<const DenseMatrix<cplx>>, std::size_t, std::size_t);
template OracleReport numeric_rotation_min<Quaternion>(std::span<const DenseMatrix<Quaternion>>, std::size_t, std::size_t);
template double rotated_off_energy<double>(std::span<const DenseMatrix<double>>, std::size_t, std::size_t, double, const double&);
template double rotated_off_energy<cplx>(std::span<const DenseMatrix<cplx>>, std::size_t, std::size_t, double, const cplx&);
template double rotated_off_energy<Quaternion>(std::span<const DenseMatrix<Quaternion>>, std::size_t, std::size_t, double, const Quaternion&);

double power_norm(const ComplexMatrix& a, int iters) {
  const auto n = static_cast<std::size_t>(a.cols());
  const auto m = static_cast<std::size_t>(a.rows());
  if (n == 0) return 0.0;
  std::vector<cplx> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = 1.0 + 0.1 * std::sin(static_cast<double>(k + 1));
  std::vector<cplx> av(m);
  double estimate = 0.0;
  for (int it = 0; it < std::max(1, iters); ++it) {
    double nv = 0.0;
    for (const auto& x : v) nv += std::norm(x);
    nv = std::sqrt(nv);
    if (nv == 0.0) return 0.0;
    for (auto& x : v) x /= nv;
    double nav = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      cplx acc = 0.0;
      for (std::size_t c = 0; c < n; ++c) acc += a(Eigen::Index(r), Eigen::Index(c)) * v[c];
      av[r] = acc;
      nav += std::norm(acc);
    }
    estimate = std::sqrt(nav);
    // v <- A* A v
    for (std::size_t c = 0; c < n; ++c) {
      cplx acc = 0.0;
      for (std::size_t r = 0; r < m; ++r) acc += std::conj(a(Eigen::Index(r), Eigen::Index(c))) * av[r];
      v[c] = acc;
    }
  }
  return estimate;
}

}  // namespace acp::oracle
