#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tbloop/creation.hpp"
#include "tbloop/estimation.hpp"
#include "tbloop/json_io.hpp"
#include "tbloop/series_io.hpp"
#include "tbloop/tb_loop.hpp"

namespace tbloop::cli {

using nlohmann::json;

namespace {

std::string output_path(const RunConfig& config, const std::string& name) {
  std::filesystem::create_directories(config.output_dir);
  return (std::filesystem::path(config.output_dir) / name).string();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

json meta(const RunConfig& config) { return json{{"config_hash", config_hash(config)}, {"seed", config.seed}}; }

}  // namespace

MixtureParams creation_truth(double sigma) { return MixtureParams::create({0.3, 0.5, 0.2}, {-2.0, 2.0, 5.0}, sigma); }

std::vector<std::string> cmd_simulate(const RunConfig& config, const MixtureParams& truth, std::size_t n,
                                      const std::string& out_name, bool emit_components) {
  validate(config);
  RngStream rng = RngStream(config.seed, 0).substream("simulate");
  const SimulatedSeries sim = simulate_with_components(truth, n, rng);

  std::vector<ExtraColumn> extra;
  if (emit_components) {
    ExtraColumn col{"component", {}};
    for (std::size_t c : sim.components) col.cells.push_back(std::to_string(c));
    extra.push_back(std::move(col));
  }
  std::ostringstream os;
  const std::string comments[] = {provenance(config)};
  write_series_csv(os, sim.series, comments, extra);
  const std::string path = output_path(config, out_name);
  write_file(path, os.str());
  return {path};
}

std::vector<std::string> cmd_tb_run(const RunConfig& config, const std::string& initial_csv,
                                    const std::string& stream_csv, const std::string& prefix) {
  validate(config);
  const ObservationSeries initial = read_series_csv_file(initial_csv);
  const ObservationSeries stream = read_series_csv_file(stream_csv);
  const TbRun run = run_stream(initial, stream, to_tb_config(config));

  std::ostringstream transcript;
  transcript << json{{"_meta", meta(config)}}.dump() << '\n';
  std::size_t n_transform = 0;
  std::vector<std::size_t> k_after;
  for (const TbEvent& e : run.events) {
    transcript << json(e).dump() << '\n';
    if (e.decision == Decision::Transform) ++n_transform;
    k_after.push_back(e.model_after.k());
  }

  json summary = meta(config);
  summary["n_initial"] = initial.size();
  summary["n_stream"] = stream.size();
  summary["n_refine"] = run.events.size() - n_transform;
  summary["n_transform"] = n_transform;
  summary["initial_model"] = run.initial.model;
  summary["final_model"] = run.final_state.model;
  summary["k_after_each_event"] = k_after;

  const std::string t_path = output_path(config, prefix + ".jsonl");
  const std::string s_path = output_path(config, prefix + "_summary.json");
  write_file(t_path, transcript.str());
  write_file(s_path, summary.dump(2) + "\n");
  return {t_path, s_path};
}

std::vector<std::string> cmd_select_k(const RunConfig& config, const std::string& data_csv, const std::string& prefix) {
  validate(config);
  const ObservationSeries data = read_series_csv_file(data_csv);
  const TbConfig tb = to_tb_config(config);
  const RngStream rng = RngStream(config.seed, 0).substream("select-k");
  const SelectionReport report = select_k(data, config.method, selection_config_for(tb), rng);

  std::ostringstream csv;
  csv << "# " << provenance(config) << '\n' << "n,method,k_hat";
  for (const auto& s : report.per_k) csv << ",score_k" << s.k;
  csv << '\n' << report.n << ',' << to_string(report.method) << ',' << report.k_hat;
  for (const auto& s : report.per_k) csv << ',' << format_real(s.score);
  csv << '\n';

  json j = meta(config);
  j["report"] = report;

  const std::string c_path = output_path(config, prefix + ".csv");
  const std::string j_path = output_path(config, prefix + ".json");
  write_file(c_path, csv.str());
  write_file(j_path, j.dump(2) + "\n");
  return {c_path, j_path};
}

std::vector<std::size_t> default_creation_checkpoints() {
  std::vector<std::size_t> out;
  for (std::size_t n = 20; n <= 400; n += 20) out.push_back(n);
  return out;
}

std::vector<std::string> cmd_fig_creation(const RunConfig& config, const FigCreationOptions& options,
                                          const std::string& out_name) {
  validate(config);
  const std::vector<std::size_t> checkpoints =
      options.checkpoints.empty() ? default_creation_checkpoints() : options.checkpoints;
  const RngStream root = RngStream(config.seed, 0).substream("fig-creation");
  RngStream data_rng = root.substream("stream");
  const ObservationSeries stream = simulate(creation_truth(config.sigma), checkpoints.back(), data_rng);

  TbConfig tb = to_tb_config(config);
  SelectionConfig sel = selection_config_for(tb);
  if (sel.k_max == 0) sel.k_max = options.k_max;

  std::ostringstream csv;
  csv << "# " << provenance(config) << '\n' << "n,k_bic,k_cv\n";
  for (std::size_t n : checkpoints) {
    SelectionConfig at_n = sel;
    at_n.k_max = std::min(sel.k_max, std::max<std::size_t>(1, n / 2));
    const ObservationSeries prefix = stream.prefix(n);
    const SelectionReport bic = bic_select(prefix, at_n);
    const SelectionReport cv = cv_select(prefix, at_n, root.substream("cv").substream(n));
    csv << n << ',' << bic.k_hat << ',' << cv.k_hat << '\n';
  }
  const std::string path = output_path(config, out_name);
  write_file(path, csv.str());
  return {path};
}

std::vector<std::string> cmd_fig_two_means(const RunConfig& config, const FigTwoMeansOptions& options,
                                           const std::string& out_name) {
  validate(config);
  if (options.grid_points < 2 || options.n_initial < 2)
    throw std::invalid_argument("fig-two-means: need at least two grid points and two initial observations");
  RngStream rng = RngStream(config.seed, 0).substream("fig-two-means");
  const MixtureParams null_model = MixtureParams::create({1.0}, {0.0}, config.sigma);
  const ObservationSeries initial = simulate(null_model, options.n_initial, rng);

  const TbConfig tb = to_tb_config(config);
  TbState state{initial, MixtureParams::create({1.0}, {initial.mean()}, config.sigma), config.alpha};
  const EmConfig em = em_config_for(tb);

  std::ostringstream csv;
  csv << "# " << provenance(config) << " ybar=" << format_real(initial.mean()) << '\n'
      << "y,decision,tail_prob,phi1,phi2,pi1\n";
  for (std::size_t i = 0; i < options.grid_points; ++i) {
    const double y = options.y_lo + (options.y_hi - options.y_lo) * static_cast<double>(i) /
                                        static_cast<double>(options.grid_points - 1);
    const Evaluation ev = evaluate(state, y, config.two_sided);
    const EmResult fit = em_fit(initial.appended(y), 2, em);
    csv << format_real(y) << ',' << to_string(ev.reject ? Decision::Transform : Decision::Refine) << ','
        << format_real(ev.tail_prob) << ',' << format_real(fit.params.means()[0]) << ','
        << format_real(fit.params.means()[1]) << ',' << format_real(fit.params.weights()[0]) << '\n';
  }
  const std::string path = output_path(config, out_name);
  write_file(path, csv.str());
  return {path};
}

ImQuery parse_im_query(const std::string& s) {
  if (s == "curve" || s == "CURVE") return ImQuery::Curve;
  if (s == "pl-interval" || s == "PL_INTERVAL") return ImQuery::PlInterval;
  if (s == "cp-interval" || s == "CP_INTERVAL") return ImQuery::CpInterval;
  throw std::invalid_argument("unknown im query '" + s + "'");
}

std::vector<std::string> cmd_im(const RunConfig& config, int n, int x, ImQuery query, double alpha,
                                std::size_t grid_points, const std::string& out_name) {
  validate(config);
  const BinomialObservation obs = BinomialObservation::create(n, x);
  if (query == ImQuery::Curve) {
    std::ostringstream csv;
    csv << "# " << provenance(config) << " n=" << n << " x=" << x << '\n' << "theta,plausibility\n";
    for (const auto& [theta, pl] : plausibility_curve(obs, grid_points))
      csv << format_real(theta) << ',' << format_real(pl) << '\n';
    const std::string path = output_path(config, out_name.empty() ? "im_curve.csv" : out_name);
    write_file(path, csv.str());
    return {path};
  }

  const bool pl = query == ImQuery::PlInterval;
  const ThetaInterval interval = pl ? plausibility_interval(alpha, obs) : clopper_pearson(alpha, obs);
  json j = meta(config);
  j["n"] = n;
  j["x"] = x;
  j["lo"] = interval.lo;
  j["hi"] = interval.hi;
  j["alpha"] = alpha;
  j["method"] = pl ? "PLAUSIBILITY" : "CLOPPER_PEARSON";
  const std::string path = output_path(config, out_name.empty() ? "im_interval.json" : out_name);
  write_file(path, j.dump(2) + "\n");
  return {path};
}

}  // namespace tbloop::cli
