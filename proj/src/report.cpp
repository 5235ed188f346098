#include "sp/report.hpp"

namespace sp {

const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::Symmetry: return "symmetry";
    case Axiom::NonNegativity: return "non_negativity";
    case Axiom::Boundedness: return "boundedness";
    case Axiom::OProjection: return "o_projection";
    case Axiom::Factorization: return "factorization";
    case Axiom::Inequality: return "inequality";
    case Axiom::Continuity: return "continuity";
    case Axiom::ObservableLaws: return "observable_laws";
    case Axiom::MorphismLaws: return "morphism_laws";
  }
  return "unknown";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not_applicable";
  }
  return "unknown";
}

nlohmann::ordered_json to_json(const AxiomReport& r) {
  nlohmann::ordered_json j;
  j["axiom"] = to_string(r.axiom);
  j["verdict"] = to_string(r.verdict);
  j["worst_margin"] = r.worst_margin;
  j["witness"] = r.witness;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  return j;
}

bool all_pass(const std::vector<AxiomReport>& reports) {
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Fail) return false;
  }
  return true;
}

}  // namespace sp
