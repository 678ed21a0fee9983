#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tbloop/estimation.hpp"
#include "tbloop/mixture.hpp"
#include "tbloop/rng.hpp"

namespace tbloop {

enum class SelectionMethod { Bic, Cv };

// PaperKLogN charges k*log(n); ParamCount charges (2k-1)*log(n), the count
// of free weights and means.
enum class PenaltyVariant { PaperKLogN, ParamCount };

std::string to_string(SelectionMethod m);
std::string to_string(PenaltyVariant p);
SelectionMethod parse_selection_method(const std::string& s);
PenaltyVariant parse_penalty_variant(const std::string& s);

struct SelectionConfig {
  std::size_t k_max = 0;  // 0 selects default_k_max(n)
  PenaltyVariant penalty = PenaltyVariant::PaperKLogN;
  int cv_reps = 50;
  double train_fraction = 0.8;
  EmConfig em;
};

struct CvSettings {
  int reps = 50;
  double train_fraction = 0.8;
};

struct KScore {
  std::size_t k = 0;
  std::optional<EmResult> fit;  // full-data fit; absent when k > n
  double score = 0.0;           // +inf when the candidate could not be scored
  bool flagged = false;
};

struct SelectionReport {
  std::size_t n = 0;
  std::size_t k_hat = 1;
  SelectionMethod method = SelectionMethod::Bic;
  std::vector<KScore> per_k;  // k = 1..k_max in order
  std::optional<CvSettings> cv;

  const EmResult& selected_fit() const { return *per_k.at(k_hat - 1).fit; }
};

// min(10, floor(n/2)), never below 1.
std::size_t default_k_max(std::size_t n);

double bic_penalty(std::size_t k, std::size_t n, PenaltyVariant variant);

// Scores -2 loglik + penalty for k = 1..k_max, each fit from default_init.
// Ties resolve to the smallest k. Requires n >= 2 and k_max <= n.
SelectionReport bic_select(const ObservationSeries& data, const SelectionConfig& config);

// Repeated random train/test splits; the score is the held-out negative
// log-likelihood per point averaged over replications. Replication r draws
// its split from rng.substream(r). Requires n >= 5.
SelectionReport cv_select(const ObservationSeries& data, const SelectionConfig& config, const RngStream& rng);

SelectionReport select_k(const ObservationSeries& data, SelectionMethod method, const SelectionConfig& config,
                         const RngStream& rng);

// Runs the selector on each prefix Y_1..Y_n for n in `checkpoints`
// (strictly increasing, at most the stream length). CV randomness for
// checkpoint n comes from rng.substream(n).
std::vector<SelectionReport> k_path(const ObservationSeries& stream, std::span<const std::size_t> checkpoints,
                                    SelectionMethod method, const SelectionConfig& config, const RngStream& rng);

// Number of positions where consecutive k_hat values differ.
std::size_t count_k_changes(std::span<const SelectionReport> path);

}  // namespace tbloop
