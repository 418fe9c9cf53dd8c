#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "polyva/baselines.hpp"
#include "polyva/diagnostics.hpp"
#include "polyva/exprlang.hpp"
#include "polyva/lawson.hpp"
#include "polyva/runner.hpp"
#include "polyva/serialize.hpp"
#include "polyva/weighted.hpp"

namespace {

using namespace polyva;

ExperimentConfig load_with_overrides(const std::string& config_path,
                                     const std::optional<std::uint64_t>& seed,
                                     const std::optional<std::string>& out) {
  ExperimentConfig config = load_config(config_path);
  if (seed) config.seed = *seed;
  if (out) config.output_path = *out;
  return config;
}

int require_single_degree(const ExperimentConfig& config) {
  if (config.degree_sweep.size() != 1)
    throw std::invalid_argument(
        "this subcommand needs a config with a single sweep degree");
  return config.degree_sweep.front();
}

struct SinglePointSetup {
  Domain domain;
  MultiIndexSet index_set;
  SampleSet samples;
  Vector values;
  std::function<double(const Vector&)> f;
};

SinglePointSetup prepare_single_point(const ExperimentConfig& config) {
  Domain domain = config.make_domain();
  const int n = require_single_degree(config);
  MultiIndexSet index_set = config.space_kind == SpaceKind::TotalDegree
                                ? total_degree_indices(domain.dimension(), n)
                                : max_degree_indices(domain.dimension(), n);
  const Index m = config.sample_rule.evaluate(index_set.size());
  SampleSet samples = config.sampling_kind == SamplingKind::Equispaced
                          ? equispaced_mesh_for_count(domain, m)
                          : rejection_sample(domain, m, config.seed.value_or(0));
  auto expr = std::shared_ptr<Expr>(
      parse_expression(config.function_source, domain.dimension()));
  std::function<double(const Vector&)> f = [expr](const Vector& x) {
    return eval_expression(*expr, x);
  };
  Vector values(samples.count());
  for (Index i = 0; i < samples.count(); ++i)
    values(i) = f(samples.points.row(i).transpose());
  return SinglePointSetup{std::move(domain), std::move(index_set), std::move(samples),
                          std::move(values), std::move(f)};
}

std::string points_csv(const Matrix& points) {
  std::string out;
  for (Index c = 0; c < points.cols(); ++c)
    out += (c ? "," : "") + ("x" + std::to_string(c + 1));
  out += "\r\n";
  char buf[40];
  for (Index i = 0; i < points.rows(); ++i) {
    for (Index c = 0; c < points.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.16e", points(i, c));
      out += (c ? "," : "") + std::string(buf);
    }
    out += "\r\n";
  }
  return out;
}

Matrix read_points_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    bool numeric = true;
    while (std::getline(fields, field, ',')) {
      try {
        size_t used = 0;
        row.push_back(std::stod(field, &used));
        if (used != field.size()) numeric = false;
      } catch (...) {
        numeric = false;
      }
      if (!numeric) break;
    }
    if (!numeric) continue;  // header line
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("inconsistent column count in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("no points found in " + path);
  Matrix points(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < points.rows(); ++i)
    for (Index c = 0; c < points.cols(); ++c)
      points(i, c) = rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
  return points;
}

int cmd_run(const ExperimentConfig& config) {
  const std::vector<ReportRow> rows = run(config);
  const std::string out = config.output_path.value_or("report.csv");
  write_report(config, rows, out);
  std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
  for (const ReportRow& row : rows)
    if (!row.error.empty())
      std::cerr << "warning: n=" << row.n << " failed: " << row.error << "\n";
  return 0;
}

int cmd_fit(const ExperimentConfig& config) {
  SinglePointSetup setup = prepare_single_point(config);
  const ArnoldiFit result = fit_mv(setup.samples, setup.values, setup.index_set);
  const std::string out = config.output_path.value_or("model.json");
  write_text_file(out,
                  approximant_to_json(result.approximant, setup.domain).dump() + "\n");
  std::cout << "fitted N=" << setup.index_set.size() << " on M=" << setup.samples.count()
            << " samples; ortho_defect=" << ortho_defect(result.basis) << "; wrote " << out
            << "\n";
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& points_path,
             const std::optional<std::string>& out) {
  const StoredApproximant stored =
      approximant_from_json(nlohmann::json::parse(read_text_file(model_path)));
  const Matrix points = read_points_csv(points_path);
  if (points.cols() != stored.domain.dimension())
    throw std::runtime_error("point dimension does not match the stored model");

  Index outside = 0;
  for (Index i = 0; i < points.rows(); ++i)
    if (!indicator(stored.domain, points.row(i).transpose())) ++outside;
  if (outside > 0)
    std::cerr << "warning: " << outside << " of " << points.rows()
              << " points lie outside the fitted domain; extrapolated values have no "
                 "accuracy guarantee\n";

  const Vector values = eval_mv(stored.approximant, points);
  std::string csv;
  for (Index c = 0; c < points.cols(); ++c) csv += "x" + std::to_string(c + 1) + ",";
  csv += "value\r\n";
  char buf[40];
  for (Index i = 0; i < points.rows(); ++i) {
    for (Index c = 0; c < points.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.16e", points(i, c));
      csv += std::string(buf) + ",";
    }
    std::snprintf(buf, sizeof(buf), "%.16e", values(i));
    csv += std::string(buf) + "\r\n";
  }
  const std::string out_path = out.value_or("values.csv");
  write_text_file(out_path, csv);
  std::cout << "evaluated " << points.rows() << " points; wrote " << out_path << "\n";
  return 0;
}

int cmd_mesh(const ExperimentConfig& config) {
  SinglePointSetup setup = prepare_single_point(config);
  const std::string out = config.output_path.value_or("mesh.csv");
  write_text_file(out, points_csv(setup.samples.points));
  std::cout << "wrote " << setup.samples.count() << " points to " << out << "\n";
  return 0;
}

int cmd_lebesgue(const ExperimentConfig& config) {
  SinglePointSetup setup = prepare_single_point(config);
  const ArnoldiBasis basis =
      arnoldi_basis<double>(setup.samples.points, setup.index_set,
                            setup.samples.provenance);
  const SampleSet mesh = equispaced_mesh_for_count(
      setup.domain, static_cast<Index>(config.eval_k_factor) * setup.samples.count());
  std::printf("lebesgue_estimate %.16e (N=%ld, M=%ld, eval mesh %ld)\n",
              lebesgue_estimate(basis, mesh), static_cast<long>(setup.index_set.size()),
              static_cast<long>(setup.samples.count()), static_cast<long>(mesh.count()));
  return 0;
}

int cmd_weighted_fit(const ExperimentConfig& config) {
  SinglePointSetup setup = prepare_single_point(config);
  const Index m = config.sample_rule.evaluate(setup.index_set.size());
  const Index m_hat = config.subsample_rule.evaluate(setup.index_set.size());
  const SampleSet mesh = equispaced_mesh_for_count(
      setup.domain, static_cast<Index>(config.eval_k_factor) * m);

  if (config.method == Method::QrWeight) {
    const QrWeightFit result = qr_weight_fit(setup.domain, setup.f, setup.index_set, m,
                                             m_hat, config.seed.value_or(0));
    const double err = sup_difference(
        [&](const Matrix& pts) { return eval_qr_weight(result.approximant, pts); },
        setup.f, mesh);
    std::printf("qr_weight: M=%ld M_hat=%ld sup_error=%.16e cond_G=%.16e "
                "gram_deviation=%.16e\n",
                static_cast<long>(m), static_cast<long>(m_hat), err, result.gram.kappa2,
                result.gram.spectral_deviation);
    return 0;
  }

  const VaWeightFit result = va_weight_fit(setup.domain, setup.f, setup.index_set, m,
                                           m_hat, config.seed.value_or(0));
  const double err = sup_error(result.approximant, setup.f, mesh);
  std::printf("va_weight: M=%ld M_hat=%ld sup_error=%.16e cond_G=%.16e "
              "gram_deviation=%.16e stability_C=%.16e\n",
              static_cast<long>(m), static_cast<long>(m_hat), err, result.gram.kappa2,
              result.gram.spectral_deviation, result.gram.stability_constant);
  if (config.output_path)
    write_text_file(*config.output_path,
                    approximant_to_json(result.approximant, setup.domain).dump() + "\n");
  return 0;
}

int cmd_lawson(const ExperimentConfig& config, int iters_override) {
  SinglePointSetup setup = prepare_single_point(config);
  const int iters = iters_override >= 0 ? iters_override : config.lawson_iterations;
  const ArnoldiFit plain = fit_mv(setup.samples, setup.values, setup.index_set);
  const LawsonResult refined = lawson_refine(plain.basis, setup.values, iters);

  const SampleSet mesh = equispaced_mesh_for_count(
      setup.domain, static_cast<Index>(config.eval_k_factor) * setup.samples.count());
  const double initial = sup_error(plain.approximant, setup.f, mesh);
  const double final_err = sup_error(refined.approximant, setup.f, mesh);
  std::printf("lawson: iterations=%d initial_sup_error=%.16e final_sup_error=%.16e\n",
              iters, initial, final_err);
  std::printf("sample-set sup error per iteration:");
  for (double h : refined.state.history) std::printf(" %.3e", h);
  std::printf("\n");
  if (config.output_path)
    write_text_file(*config.output_path,
                    approximant_to_json(refined.approximant, setup.domain).dump() + "\n");
  return 0;
}

int cmd_compare(const ExperimentConfig& config, const std::string& baseline) {
  Method baseline_method;
  if (baseline == "vandermonde") baseline_method = Method::Vandermonde;
  else if (baseline == "bounding_tensor") baseline_method = Method::BoundingTensor;
  else if (baseline == "qr_weight") baseline_method = Method::QrWeight;
  else if (baseline == "va_weight") baseline_method = Method::VaWeight;
  else throw std::invalid_argument("unknown baseline '" + baseline + "'");

  const std::string stem = config.output_path.value_or("compare");
  ExperimentConfig va_config = config;
  va_config.method = Method::Va;
  write_report(va_config, run(va_config), stem + ".va.csv");
  ExperimentConfig baseline_config = config;
  baseline_config.method = baseline_method;
  write_report(baseline_config, run(baseline_config), stem + "." + baseline + ".csv");
  std::cout << "wrote " << stem << ".va.csv and " << stem << "." << baseline << ".csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyva: polynomial least-squares approximation on irregular domains"};
  app.require_subcommand(1);

  std::string config_path, model_path, points_path, baseline = "vandermonde";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  int lawson_iters = -1;

  auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
    if (needs_config)
      cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
    cmd->add_option("--seed,-s", seed, "override sampling seed");
    cmd->add_option("--out,-o", out, "output path");
  };

  add_common(app.add_subcommand("run", "run a degree sweep and write the report CSV"));
  add_common(app.add_subcommand("fit", "fit one approximant and store it as JSON"));
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a stored approximant at points");
  eval_cmd->add_option("--model", model_path, "stored approximant JSON")->required();
  eval_cmd->add_option("--points", points_path, "CSV of evaluation points")->required();
  eval_cmd->add_option("--out,-o", out, "output path");
  add_common(app.add_subcommand("mesh", "emit the sample mesh as CSV"));
  add_common(app.add_subcommand("lebesgue", "print the Lebesgue-constant estimate"));
  add_common(app.add_subcommand("weighted-fit", "run the leverage-weighted fit"));
  auto* lawson_cmd =
      app.add_subcommand("lawson", "refine a fit toward minimax with Lawson iterations");
  add_common(lawson_cmd);
  lawson_cmd->add_option("--iters", lawson_iters, "Lawson iterations (default 10)");
  auto* compare_cmd =
      app.add_subcommand("compare", "run va plus a named baseline on one config");
  add_common(compare_cmd);
  compare_cmd->add_option("--baseline", baseline,
                          "vandermonde | bounding_tensor | qr_weight | va_weight");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("eval")) return cmd_eval(model_path, points_path, out);
    const ExperimentConfig config = load_with_overrides(config_path, seed, out);
    if (app.got_subcommand("run")) return cmd_run(config);
    if (app.got_subcommand("fit")) return cmd_fit(config);
    if (app.got_subcommand("mesh")) return cmd_mesh(config);
    if (app.got_subcommand("lebesgue")) return cmd_lebesgue(config);
    if (app.got_subcommand("weighted-fit")) return cmd_weighted_fit(config);
    if (app.got_subcommand("lawson")) return cmd_lawson(config, lawson_iters);
    if (app.got_subcommand("compare")) return cmd_compare(config, baseline);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
