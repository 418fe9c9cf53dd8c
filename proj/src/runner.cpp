#include "polyva/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "polyva/baselines.hpp"
#include "polyva/diagnostics.hpp"
#include "polyva/exprlang.hpp"
#include "polyva/lawson.hpp"
#include "polyva/serialize.hpp"
#include "polyva/weighted.hpp"

namespace polyva {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string csv_field(const std::optional<double>& v) {
  return v ? format_double(*v) : "";
}

std::string escape_csv(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += "\"";
  return out;
}

ReportRow run_sweep_point(const ExperimentConfig& config, const Domain& domain,
                          const Expr& expr, int n, std::uint64_t row_seed) {
  const auto started = std::chrono::steady_clock::now();
  ReportRow row;
  row.n = n;

  const MultiIndexSet index_set = config.space_kind == SpaceKind::TotalDegree
                                      ? total_degree_indices(domain.dimension(), n)
                                      : max_degree_indices(domain.dimension(), n);
  row.N = static_cast<int>(index_set.size());
  row.M = config.sample_rule.evaluate(index_set.size());
  if (config.sampling_kind == SamplingKind::Random) row.seed = row_seed;

  auto f = [&expr](const Vector& x) { return eval_expression(expr, x); };

  try {
    const SampleSet eval_mesh =
        equispaced_mesh_for_count(domain, static_cast<Index>(config.eval_k_factor) * row.M);

    auto draw_samples = [&]() {
      return config.sampling_kind == SamplingKind::Equispaced
                 ? equispaced_mesh_for_count(domain, row.M)
                 : rejection_sample(domain, row.M, row_seed);
    };
    auto values_at = [&](const SampleSet& samples) {
      Vector values(samples.count());
      for (Index i = 0; i < samples.count(); ++i)
        values(i) = f(samples.points.row(i).transpose());
      return values;
    };
    auto basis_diagnostics = [&](const ArnoldiBasis& basis) {
      row.ortho_defect = ortho_defect(basis);
      row.s_n = s_n_statistic(basis);
      row.q_max = q_max_statistic(basis);
      if (config.diag_lebesgue) row.lebesgue_estimate = lebesgue_estimate(basis, eval_mesh);
      if (config.diag_qqstar) row.qqstar_factor = qqstar_factor(basis);
    };

    switch (config.method) {
      case Method::Va: {
        const SampleSet samples = draw_samples();
        row.M = samples.count();
        const ArnoldiFit result = fit_mv(samples, values_at(samples), index_set);
        row.sup_error = sup_error(result.approximant, f, eval_mesh);
        basis_diagnostics(result.basis);
        break;
      }
      case Method::Vandermonde: {
        const SampleSet samples = draw_samples();
        row.M = samples.count();
        const MonomialApproximant approx =
            vandermonde_fit(samples, values_at(samples), index_set);
        row.sup_error = sup_difference(
            [&](const Matrix& pts) { return eval_monomial(approx, pts); }, f, eval_mesh);
        row.cond_G = approx.kappa2;
        break;
      }
      case Method::BoundingTensor: {
        const BoundingTensorFit result =
            bounding_tensor_fit(domain, f, index_set, row.M, row_seed);
        row.sup_error = sup_error(result.fit.approximant, f, eval_mesh);
        basis_diagnostics(result.fit.basis);
        break;
      }
      case Method::VaWeight: {
        row.M_hat = config.subsample_rule.evaluate(index_set.size());
        const VaWeightFit result =
            va_weight_fit(domain, f, index_set, row.M, *row.M_hat, row_seed);
        row.sup_error = sup_error(result.approximant, f, eval_mesh);
        row.cond_G = result.gram.kappa2;
        basis_diagnostics(result.basis);
        break;
      }
      case Method::QrWeight: {
        row.M_hat = config.subsample_rule.evaluate(index_set.size());
        const QrWeightFit result =
            qr_weight_fit(domain, f, index_set, row.M, *row.M_hat, row_seed);
        row.sup_error = sup_difference(
            [&](const Matrix& pts) { return eval_qr_weight(result.approximant, pts); }, f,
            eval_mesh);
        row.cond_G = result.gram.kappa2;
        break;
      }
      case Method::VaLawson: {
        const SampleSet samples = draw_samples();
        row.M = samples.count();
        const Vector values = values_at(samples);
        const ArnoldiFit plain = fit_mv(samples, values, index_set);
        const LawsonResult refined =
            lawson_refine(plain.basis, values, config.lawson_iterations);
        row.sup_error = sup_error(refined.approximant, f, eval_mesh);
        basis_diagnostics(plain.basis);
        break;
      }
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }

  row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
  return row;
}

}  // namespace

int thread_budget() {
  const char* env = std::getenv("POLYVA_THREADS");
  if (!env) return 0;
  const int v = std::atoi(env);
  return v > 0 ? v : 0;
}

std::vector<ReportRow> run(const ExperimentConfig& config) {
  const Domain domain = config.make_domain();
  const auto expr = parse_expression(config.function_source, domain.dimension());
  const std::uint64_t base_seed = config.seed.value_or(0);

  const auto point_count = config.degree_sweep.size();
  std::vector<ReportRow> rows(point_count);
  const int threads = std::min<int>(thread_budget(), static_cast<int>(point_count));

  auto work = [&](size_t i) {
    rows[i] = run_sweep_point(config, domain, *expr, config.degree_sweep[i],
                              base_seed + static_cast<std::uint64_t>(i));
  };

  if (threads <= 1) {
    for (size_t i = 0; i < point_count; ++i) work(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < point_count; i = next.fetch_add(1)) work(i);
      });
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string report_csv_header() {
  return "N,n,M,M_hat,sup_error,ortho_defect,lebesgue_estimate,qqstar_factor,s_n,"
         "q_max,cond_G,runtime_ms,seed,error";
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::string out = report_csv_header() + "\r\n";
  for (const ReportRow& row : rows) {
    out += std::to_string(row.N) + "," + std::to_string(row.n) + "," +
           std::to_string(row.M) + ",";
    out += row.M_hat ? std::to_string(*row.M_hat) : "";
    out += "," + csv_field(row.sup_error) + "," + csv_field(row.ortho_defect) + "," +
           csv_field(row.lebesgue_estimate) + "," + csv_field(row.qqstar_factor) + "," +
           csv_field(row.s_n) + "," + csv_field(row.q_max) + "," + csv_field(row.cond_G) +
           "," + std::to_string(row.runtime_ms) + ",";
    out += row.seed ? std::to_string(*row.seed) : "";
    out += "," + escape_csv(row.error) + "\r\n";
  }
  return out;
}

void write_report(const ExperimentConfig& config, const std::vector<ReportRow>& rows,
                  const std::string& csv_path) {
  write_text_file(csv_path, rows_to_csv(rows));

  nlohmann::json sidecar;
  sidecar["report_version"] = 1;
  sidecar["config"] = {
      {"domain", config.domain_json},
      {"function", config.function_source},
      {"space_kind", config.space_kind == SpaceKind::TotalDegree ? "total" : "max"},
      {"degree_sweep", config.degree_sweep},
      {"sampling_kind",
       config.sampling_kind == SamplingKind::Equispaced ? "equispaced" : "random"},
      {"method", method_name(config.method)},
      {"eval_k_factor", config.eval_k_factor},
      {"lawson_iterations", config.lawson_iterations},
  };
  if (config.seed) sidecar["config"]["seed"] = *config.seed;
  write_text_file(csv_path + ".meta.json", sidecar.dump(2) + "\n");
}

}  // namespace polyva
