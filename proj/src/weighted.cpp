#include "polyva/weighted.hpp"

#include <cmath>

namespace polyva {

LeverageDistribution compute_pi(const Matrix& q) {
  LeverageDistribution dist;
  dist.pi = q.rowwise().squaredNorm();
  dist.pi /= dist.pi.sum();
  return dist;
}

Index min_subsample_count(Index basis_size, double eps_m, double delta_hat,
                          double alpha_hat) {
  if (basis_size < 1) throw std::invalid_argument("min_subsample_count: N must be >= 1");
  if (!(eps_m >= 0.0 && eps_m < 1.0))
    throw std::invalid_argument("min_subsample_count: eps_m must be in [0,1)");
  if (!(delta_hat > 0.0 && delta_hat < 1.0 - eps_m))
    throw std::invalid_argument("min_subsample_count: delta_hat must be in (0,1-eps_m)");
  if (!(alpha_hat > 0.0 && alpha_hat < 0.5))
    throw std::invalid_argument("min_subsample_count: alpha_hat must be in (0,1/2)");
  const double n = static_cast<double>(basis_size);
  return static_cast<Index>(std::ceil(4.0 * n * (1.0 + eps_m) / (delta_hat * delta_hat) *
                                      std::log(2.0 * n / alpha_hat)));
}

WeightedSelection select_and_scale(const Matrix& q, const Vector& values,
                                   const LeverageDistribution& pi, Index subsample_count,
                                   std::uint64_t seed) {
  const Index m = q.rows();
  if (values.size() != m)
    throw std::invalid_argument("select_and_scale: value count mismatch");
  if (pi.pi.size() != m)
    throw std::invalid_argument("select_and_scale: distribution size mismatch");
  if (subsample_count < q.cols())
    throw std::invalid_argument("select_and_scale: subsample count below basis size");

  // Inverse-CDF sampling keeps the draw stream identical across platforms.
  Vector cdf(m);
  double acc = 0.0;
  for (Index i = 0; i < m; ++i) {
    acc += pi.pi(i);
    cdf(i) = acc;
  }
  cdf(m - 1) = 1.0;

  Rng rng(seed);
  WeightedSelection sel;
  sel.rows.resize(static_cast<size_t>(subsample_count));
  sel.Qhat.resize(subsample_count, q.cols());
  sel.fhat.resize(subsample_count);
  const double m_d = static_cast<double>(m);
  const double mhat_d = static_cast<double>(subsample_count);
  for (Index i = 0; i < subsample_count; ++i) {
    const double u = rng.next_double();
    const Index k = std::lower_bound(cdf.data(), cdf.data() + m, u) - cdf.data();
    const double w = 1.0 / std::sqrt(mhat_d * m_d * pi.pi(k));
    sel.rows[static_cast<size_t>(i)] = k;
    sel.Qhat.row(i) = q.row(k) * w;
    sel.fhat(i) = values(k) * w;
  }
  return sel;
}

GramReport gram_report(const WeightedSelection& selection, double delta_hat,
                       double eps_m) {
  const Matrix gram = selection.Qhat.transpose() * selection.Qhat;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  const Vector& lambda = eig.eigenvalues();
  const double lo = lambda(0);
  const double hi = lambda(lambda.size() - 1);

  GramReport report;
  report.kappa2 = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  report.spectral_deviation = std::max(std::abs(hi - 1.0), std::abs(lo - 1.0));
  const double slack = delta_hat + eps_m;
  report.stability_constant = slack < 1.0
                                  ? std::sqrt(1.0 + slack) / (1.0 - slack)
                                  : std::numeric_limits<double>::infinity();
  return report;
}

namespace {

Vector sample_values(const SampleSet& samples,
                     const std::function<double(const Vector&)>& f) {
  Vector values(samples.count());
  for (Index i = 0; i < samples.count(); ++i)
    values(i) = f(samples.points.row(i).transpose());
  return values;
}

}  // namespace

VaWeightFit va_weight_fit(const Domain& domain,
                          const std::function<double(const Vector&)>& f,
                          const MultiIndexSet& index_set, Index sample_count,
                          Index subsample_count, std::uint64_t seed,
                          int max_resample_rounds) {
  if (sample_count < subsample_count || subsample_count < index_set.size())
    throw std::invalid_argument("va_weight_fit: need M >= M_hat >= N");

  VaWeightFit result;
  bool have_basis = false;
  for (int round = 0; round <= max_resample_rounds; ++round) {
    result.samples =
        rejection_sample(domain, sample_count, derive_seed(seed, static_cast<std::uint64_t>(round)));
    try {
      result.basis = arnoldi_basis<double>(result.samples.points, index_set,
                                           result.samples.provenance);
      result.resample_rounds = round;
      have_basis = true;
      break;
    } catch (const RankDeficiencyError&) {
      // Sample set failed the rank check; redraw with a fresh seed.
    }
  }
  if (!have_basis)
    throw RankDeficiencyError("va_weight_fit: rank deficiency persisted after resampling",
                              -1);

  result.values = sample_values(result.samples, f);
  result.pi = compute_pi(result.basis);
  result.selection = select_and_scale(result.basis, result.values, result.pi,
                                      subsample_count, derive_seed(seed, 0x5e1ec7));
  result.approximant =
      Approximant{Eigen::HouseholderQR<Matrix>(result.selection.Qhat).solve(result.selection.fhat),
                  result.basis.H, result.basis.index_set};

  const Matrix gram_probe = (result.basis.Q.transpose() * result.basis.Q) /
                                static_cast<double>(result.basis.sample_count()) -
                            Matrix::Identity(index_set.size(), index_set.size());
  result.gram = gram_report(result.selection, 0.5, gram_probe.norm());
  return result;
}

QrWeightFit qr_weight_fit(const Domain& domain,
                          const std::function<double(const Vector&)>& f,
                          const MultiIndexSet& index_set, Index sample_count,
                          Index subsample_count, std::uint64_t seed,
                          bool rescale_to_unit_box) {
  if (sample_count < subsample_count || subsample_count < index_set.size())
    throw std::invalid_argument("qr_weight_fit: need M >= M_hat >= N");

  QrWeightFit result;
  result.samples = rejection_sample(domain, sample_count, derive_seed(seed, 0));
  result.values = sample_values(result.samples, f);

  result.approximant.index_set = index_set;
  result.approximant.map = rescale_to_unit_box
                               ? AffineMap::to_unit_box(result.samples.points)
                               : AffineMap::identity(result.samples.dimension());
  const Matrix a =
      monomial_matrix(result.approximant.map.apply(result.samples.points), index_set);

  const double sqrt_m = std::sqrt(static_cast<double>(sample_count));
  Eigen::HouseholderQR<Matrix> qr(a);
  result.q = qr.householderQ() * Matrix::Identity(sample_count, index_set.size());
  result.q *= sqrt_m;
  result.approximant.r_factor =
      qr.matrixQR().topRows(index_set.size()).triangularView<Eigen::Upper>();
  result.approximant.r_factor /= sqrt_m;

  result.pi = compute_pi(result.q);
  result.selection = select_and_scale(result.q, result.values, result.pi, subsample_count,
                                      derive_seed(seed, 0x5e1ec7));
  result.approximant.d =
      Eigen::HouseholderQR<Matrix>(result.selection.Qhat).solve(result.selection.fhat);

  const Matrix gram_probe = (result.q.transpose() * result.q) /
                                static_cast<double>(sample_count) -
                            Matrix::Identity(index_set.size(), index_set.size());
  result.gram = gram_report(result.selection, 0.5, gram_probe.norm());
  return result;
}

Vector eval_qr_weight(const QrWeightApproximant& approx, const Matrix& eval_points) {
  // p(y) = mono(y) * R^{-1} d, with the triangular solve done once.
  const Vector c = approx.r_factor.triangularView<Eigen::Upper>().solve(approx.d);
  MonomialApproximant mono{c, approx.index_set, approx.map, 0.0};
  return eval_monomial(mono, eval_points);
}

}  // namespace polyva
