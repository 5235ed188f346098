#ifndef SP_CHECKER_HPP
#define SP_CHECKER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sp/model.hpp"
#include "sp/report.hpp"

namespace sp {

struct CheckConfig {
  /// Sampling budget per axiom family. Finite models quantify exhaustively
  /// over their state set (the budget only caps pathological blowups).
  long samples = 1000;
  std::uint64_t seed = 0;
};

/// One report per axiom family, in the fixed order of the Axiom enum.
/// Identical (model, config) pairs produce identical reports.
std::vector<AxiomReport> run_suite(const SpModel& m, const CheckConfig& cfg);

/// Adversarial variant of run_suite: each round doubles the fraction of
/// near-degenerate configurations (nearly-equal states, near-boundary
/// perturbation families, states nearly inside sampled spans) and keeps the
/// worst margin per axiom across rounds.
std::vector<AxiomReport> run_fuzz(const SpModel& m, const CheckConfig& cfg,
                                  int rounds);

/// Short human-readable model descriptor ("hilbert:4", "sectored:2,3", ...).
std::string model_descriptor(const SpModel& m);

/// Full report document: {"model": ..., "config": ..., "reports": [...]}.
/// Byte-identical for identical (model, config, seed).
nlohmann::ordered_json report_document(const SpModel& m,
                                       const CheckConfig& cfg,
                                       const std::vector<AxiomReport>& reports);

}  // namespace sp

#endif
