#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "tbloop/series_io.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace tbloop;
  using namespace tbloop::cli;

  CLI::App app{"Transformational-belief loop for normal mixtures and binomial inferential models"};
  app.require_subcommand(1);

  std::string config_path;
  RunConfig flags;
  std::string method_text = "BIC";
  std::string penalty_text = "PAPER_K_LOG_N";
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", flags.seed, "Random seed");
  auto* sigma_opt = app.add_option("--sigma", flags.sigma, "Component standard deviation");
  auto* alpha_opt = app.add_option("--alpha", flags.alpha, "Test level");
  auto* kmax_opt = app.add_option("--k-max", flags.k_max, "Largest K considered (0: min(10, n/2))");
  auto* method_opt = app.add_option("--method", method_text, "BIC or CV");
  auto* reps_opt = app.add_option("--cv-reps", flags.cv_reps, "Cross-validation replications");
  auto* frac_opt = app.add_option("--train-fraction", flags.train_fraction, "Cross-validation training share");
  auto* two_opt = app.add_flag("--two-sided", flags.two_sided, "Double the tail probability in the test");
  auto* pen_opt = app.add_option("--penalty-variant", penalty_text, "PAPER_K_LOG_N or PARAM_COUNT");
  auto* out_opt = app.add_option("--output-dir", flags.output_dir, "Directory for output files");

  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate observations from a normal mixture");
  std::size_t sim_n = 100;
  std::string sim_weights = "0.3,0.5,0.2";
  std::string sim_means = "-2,2,5";
  std::string sim_out = "observations.csv";
  bool sim_components = false;
  simulate_cmd->add_option("--n", sim_n, "Number of observations");
  simulate_cmd->add_option("--weights", sim_weights, "Comma-separated mixture weights");
  simulate_cmd->add_option("--means", sim_means, "Comma-separated component means");
  simulate_cmd->add_option("--out", sim_out, "Output file name");
  simulate_cmd->add_flag("--with-components", sim_components, "Add the drawn component index column");

  auto* tb_cmd = app.add_subcommand("tb-run", "Run the creation/evaluation loop over a stream");
  std::string tb_initial;
  std::string tb_stream;
  std::string tb_prefix = "transcript";
  tb_cmd->add_option("--initial", tb_initial, "Initial observations CSV")->required();
  tb_cmd->add_option("--stream", tb_stream, "Streamed observations CSV")->required();
  tb_cmd->add_option("--prefix", tb_prefix, "Output file prefix");

  auto* sel_cmd = app.add_subcommand("select-k", "Select the number of mixture components");
  std::string sel_data;
  std::string sel_prefix = "selection";
  sel_cmd->add_option("--data", sel_data, "Observations CSV")->required();
  sel_cmd->add_option("--prefix", sel_prefix, "Output file prefix");

  auto* figc_cmd = app.add_subcommand("fig-creation", "K estimates by sample size for BIC and CV");
  FigCreationOptions figc;
  std::string figc_out = "fig_creation.csv";
  figc_cmd->add_option("--checkpoints", figc.checkpoints, "Sample sizes (default 20,40,...,400)")->delimiter(',');
  figc_cmd->add_option("--fig-k-max", figc.k_max, "K cap when --k-max is 0");
  figc_cmd->add_option("--out", figc_out, "Output file name");

  auto* fig2_cmd = app.add_subcommand("fig-two-means", "Refine/transform regions for one new observation");
  FigTwoMeansOptions fig2;
  std::string fig2_out = "fig_two_means.csv";
  fig2_cmd->add_option("--n-initial", fig2.n_initial, "Initial sample size");
  fig2_cmd->add_option("--grid-points", fig2.grid_points, "Number of y grid points");
  fig2_cmd->add_option("--out", fig2_out, "Output file name");

  auto* im_cmd = app.add_subcommand("im", "Binomial inferential-model queries");
  int im_n = 10;
  int im_x = 4;
  std::string im_query = "curve";
  double im_alpha = 0.1;
  std::size_t im_points = 1001;
  std::string im_out;
  im_cmd->add_option("--n", im_n, "Number of trials");
  im_cmd->add_option("--x", im_x, "Number of successes");
  im_cmd->add_option("--query", im_query, "curve, pl-interval or cp-interval");
  im_cmd->add_option("--level", im_alpha, "Plausibility / error level for intervals");
  im_cmd->add_option("--grid-points", im_points, "Curve grid size");
  im_cmd->add_option("--out", im_out, "Output file name");

  CLI11_PARSE(app, argc, argv);

  try {
    // defaults < config file < environment (output_dir) < flags
    RunConfig config = config_path.empty() ? RunConfig{} : load_config_file(config_path);
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) config.output_dir = env;
    if (*seed_opt) config.seed = flags.seed;
    if (*sigma_opt) config.sigma = flags.sigma;
    if (*alpha_opt) config.alpha = flags.alpha;
    if (*kmax_opt) config.k_max = flags.k_max;
    if (*method_opt) config.method = parse_selection_method(method_text);
    if (*reps_opt) config.cv_reps = flags.cv_reps;
    if (*frac_opt) config.train_fraction = flags.train_fraction;
    if (*two_opt) config.two_sided = flags.two_sided;
    if (*pen_opt) config.penalty_variant = parse_penalty_variant(penalty_text);
    if (*out_opt) config.output_dir = flags.output_dir;
    validate(config);

    std::vector<std::string> written;
    if (*simulate_cmd) {
      const auto truth = MixtureParams::create(parse_list(sim_weights), parse_list(sim_means), config.sigma);
      written = cmd_simulate(config, truth, sim_n, sim_out, sim_components);
    } else if (*tb_cmd) {
      written = cmd_tb_run(config, tb_initial, tb_stream, tb_prefix);
    } else if (*sel_cmd) {
      written = cmd_select_k(config, sel_data, sel_prefix);
    } else if (*figc_cmd) {
      written = cmd_fig_creation(config, figc, figc_out);
    } else if (*fig2_cmd) {
      written = cmd_fig_two_means(config, fig2, fig2_out);
    } else if (*im_cmd) {
      written = cmd_im(config, im_n, im_x, parse_im_query(im_query), im_alpha, im_points, im_out);
    }
    for (const auto& path : written) std::cout << path << '\n';
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
