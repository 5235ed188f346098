#ifndef SP_REPORT_HPP
#define SP_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace sp {

enum class Axiom {
  Symmetry,
  NonNegativity,
  Boundedness,
  OProjection,
  Factorization,
  Inequality,
  Continuity,
  ObservableLaws,
  MorphismLaws,
};

enum class Verdict { Pass, Fail, NotApplicable };

const char* to_string(Axiom a);
const char* to_string(Verdict v);

/// Outcome of checking one axiom family on one model.
///
/// worst_margin is the most pessimistic signed slack seen: the checked
/// quantity minus its violation boundary, so passing runs sit at or above
/// of the axiom's tolerance band and failures go below it. The law-bundle
/// families (ObservableLaws, MorphismLaws) mix sub-checks with different
/// tolerances, so their margin is normalized: sub-tolerance minus violation.
struct AxiomReport {
  Axiom axiom = Axiom::Symmetry;
  Verdict verdict = Verdict::Pass;
  double worst_margin = 0.0;
  /// Serialized states/sets of the worst configuration (empty object when
  /// nothing was evaluated).
  nlohmann::ordered_json witness = nlohmann::ordered_json::object();
  /// Number of configurations evaluated.
  long samples = 0;
  /// Stream seed this family consumed.
  std::uint64_t seed = 0;
};

nlohmann::ordered_json to_json(const AxiomReport& r);

bool all_pass(const std::vector<AxiomReport>& reports);

}  // namespace sp

#endif
