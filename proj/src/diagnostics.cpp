#include "polyva/diagnostics.hpp"

#include <cmath>

#include "polyva/legendre.hpp"

namespace polyva {

double ortho_defect(const ArnoldiBasis& basis) {
  const Index n = basis.basis_size();
  Matrix gram = basis.Q.transpose() * basis.Q / static_cast<double>(basis.sample_count());
  gram -= Matrix::Identity(n, n);
  return gram.norm();
}

double lebesgue_estimate(const ArnoldiBasis& basis, const SampleSet& eval_mesh) {
  const Index m = basis.sample_count();
  const Index k = eval_mesh.count();
  const Index chunk = 1024;
  double best = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : best)
  for (Index start = 0; start < k; start += chunk) {
    const Index rows = std::min(chunk, k - start);
    const Matrix phi = evaluate_basis<double>(basis.H, basis.index_set,
                                              eval_mesh.points.middleRows(start, rows));
    const double local =
        (phi * basis.Q.transpose()).cwiseAbs().rowwise().sum().maxCoeff();
    best = std::max(best, local);
  }
  return best / static_cast<double>(m);
}

double qqstar_factor(const ArnoldiBasis& basis) {
  const Index m = basis.sample_count();
  const Index chunk = 1024;
  double best = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : best)
  for (Index start = 0; start < m; start += chunk) {
    const Index rows = std::min(chunk, m - start);
    const double local = (basis.Q.middleRows(start, rows) * basis.Q.transpose())
                             .cwiseAbs()
                             .rowwise()
                             .sum()
                             .maxCoeff();
    best = std::max(best, local);
  }
  return best / static_cast<double>(m);
}

double s_n_statistic(const ArnoldiBasis& basis) {
  return basis.Q.rowwise().sum().cwiseAbs().sum() /
         static_cast<double>(basis.sample_count());
}

double q_max_statistic(const ArnoldiBasis& basis) {
  return basis.Q.cwiseAbs().maxCoeff();
}

double legendre_deviation(const ArnoldiBasis& basis, Index mesh_factor) {
  if (basis.index_set.dimension != 1)
    throw std::invalid_argument("legendre_deviation: basis must be one-dimensional");
  const double a = basis.points.col(0).minCoeff();
  const double b = basis.points.col(0).maxCoeff();

  const Index k = mesh_factor * basis.sample_count();
  Matrix mesh(k, 1);
  for (Index i = 0; i < k; ++i)
    mesh(i, 0) = a + (b - a) * static_cast<double>(i) / static_cast<double>(k - 1);

  const Matrix phi = evaluate_basis<double>(basis.H, basis.index_set, mesh);
  const Vector eta = (2.0 * (mesh.col(0).array() - a) / (b - a) - 1.0).matrix();
  const Matrix legendre = legendre_matrix<double>(eta, basis.basis_size());

  double worst = 0.0;
  for (Index j = 0; j < basis.basis_size(); ++j) {
    const double scale = std::sqrt(2.0 * static_cast<double>(j) + 1.0);
    const double deviation =
        (phi.col(j) - scale * legendre.col(j)).lpNorm<Eigen::Infinity>() / scale;
    worst = std::max(worst, deviation);
  }
  return worst;
}

double sup_error(const Approximant& approx, const std::function<double(const Vector&)>& f,
                 const SampleSet& eval_mesh) {
  return sup_difference(
      [&](const Matrix& pts) { return evaluate<double>(approx, pts); }, f, eval_mesh);
}

double sup_difference(const std::function<Vector(const Matrix&)>& model,
                      const std::function<double(const Vector&)>& f,
                      const SampleSet& eval_mesh) {
  const Index k = eval_mesh.count();
  const Index chunk = 32768;
  double best = 0.0;
  for (Index start = 0; start < k; start += chunk) {
    const Index rows = std::min(chunk, k - start);
    const Matrix block = eval_mesh.points.middleRows(start, rows);
    const Vector predicted = model(block);
    for (Index i = 0; i < rows; ++i) {
      const double truth = f(block.row(i).transpose());
      best = std::max(best, std::abs(truth - predicted(i)));
    }
  }
  return best;
}

std::function<double(const Vector&)> smoothness_family(int k) {
  if (k == -1)
    return [](const Vector& x) {
      double s = 0.0;
      for (Index r = 0; r < x.size(); ++r) s += std::sin(std::exp(x(r)) * std::cos(x(r)));
      return s;
    };
  if (k < 0 || k > 2)
    throw std::invalid_argument("smoothness_family: k must be in {0,1,2} or -1");
  const double p = 2.0 * k + 1.0;
  return [p](const Vector& x) {
    double s = 0.0;
    for (Index r = 0; r < x.size(); ++r) s += std::pow(std::abs(x(r)), p);
    return s;
  };
}

double smoothness_slope(const Domain& domain, int k, const std::vector<int>& degrees) {
  if (domain.dimension() > 2)
    throw std::invalid_argument("smoothness_slope: d must be 1 or 2");
  const auto f = smoothness_family(k);
  std::vector<double> ns, errs;
  for (int n : degrees) {
    const MultiIndexSet idx = total_degree_indices(domain.dimension(), n);
    const Index m = idx.size() * idx.size();
    const SampleSet samples = equispaced_mesh_for_count(domain, m);
    Vector values(samples.count());
    for (Index i = 0; i < samples.count(); ++i)
      values(i) = f(samples.points.row(i).transpose());
    const ArnoldiFit fit_result = fit_mv(samples, values, idx);
    const SampleSet mesh = equispaced_mesh_for_count(domain, 10 * samples.count());
    ns.push_back(static_cast<double>(n));
    errs.push_back(sup_error(fit_result.approximant, f, mesh));
  }
  return loglog_slope(ns, errs);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope: need at least two points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace polyva
