#include "sp/io.hpp"

#include <fstream>
#include <sstream>

#include "sp/errors.hpp"
#include "sp/geometry.hpp"

namespace sp {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError("complex entries must be [re, im] pairs");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Vector vector_from(const json& j, Index expected) {
  if (!j.is_array()) throw SchemaError("amplitude list must be an array");
  if (expected >= 0 && static_cast<Index>(j.size()) != expected) {
    throw SchemaError("amplitude list has wrong length");
  }
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Index>(i)] = complex_from(j[i]);
  }
  return v;
}

json field(const json& j, const char* name) {
  if (!j.contains(name)) {
    throw SchemaError(std::string("missing field: ") + name);
  }
  return j.at(name);
}

}  // namespace

SpModel model_from_json(const json& j, Tolerances tol) {
  if (!j.is_object()) throw SchemaError("model document must be an object");
  std::string kind = field(j, "kind").get<std::string>();
  try {
    if (kind == "matrix") {
      Index n = field(j, "n").get<Index>();
      json rows = field(j, "p");
      if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
        throw SchemaError("table must have n rows");
      }
      Eigen::MatrixXd table(n, n);
      for (Index i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != n) {
          throw SchemaError("table rows must have n entries");
        }
        for (Index c = 0; c < n; ++c) {
          table(i, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
      }
      return make_matrix(std::move(table), tol);
    }
    if (kind == "sectored") {
      json dims = field(j, "dims");
      if (!dims.is_array() || dims.empty()) {
        throw SchemaError("dims must be a non-empty array");
      }
      std::vector<Index> d;
      for (const auto& e : dims) d.push_back(e.get<Index>());
      return make_sectored(d, tol);
    }
    if (kind == "hilbert") return make_hilbert(field(j, "dim").get<Index>(), tol);
    if (kind == "classical") return make_classical(field(j, "n").get<Index>(), tol);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad model document: ") + e.what());
  }
  throw SchemaError("unknown model kind: " + kind);
}

SpModel load_model(const std::string& path_or_builtin, Tolerances tol) {
  const std::string prefix = "builtin:";
  if (path_or_builtin.rfind(prefix, 0) == 0) {
    std::string rest = path_or_builtin.substr(prefix.size());
    auto colon = rest.find(':');
    if (colon == std::string::npos) {
      throw ParseError("builtin descriptor needs a parameter: " +
                       path_or_builtin);
    }
    std::string name = rest.substr(0, colon);
    std::string arg = rest.substr(colon + 1);
    try {
      if (name == "hilbert") return make_hilbert(std::stol(arg), tol);
      if (name == "classical") return make_classical(std::stol(arg), tol);
      if (name == "sectored") {
        std::vector<Index> dims;
        std::stringstream ss(arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) dims.push_back(std::stol(tok));
        return make_sectored(dims, tol);
      }
    } catch (const std::logic_error&) {
      throw ParseError("bad builtin parameter: " + path_or_builtin);
    }
    throw ParseError("unknown builtin model: " + name);
  }
  std::ifstream in(path_or_builtin);
  if (!in) throw ParseError("cannot open model file: " + path_or_builtin);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON in ") + path_or_builtin + ": " +
                     e.what());
  }
  return model_from_json(j, tol);
}

State state_from_json(const json& j, const SpModel& m) {
  if (!j.is_object()) throw SchemaError("state document must be an object");
  std::string kind = field(j, "kind").get<std::string>();
  State out;
  try {
    if (kind == "classical_state") {
      out = ClassicalState{field(j, "index").get<Index>()};
    } else if (kind == "hilbert_state") {
      Index dim = field(j, "dim").get<Index>();
      out = HilbertState{vector_from(field(j, "amplitudes"), dim)};
    } else if (kind == "sectored_state") {
      Index sector = field(j, "sector").get<Index>();
      out = SectoredState{sector, vector_from(field(j, "amplitudes"), -1)};
    } else {
      throw SchemaError("unknown state kind: " + kind);
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad state document: ") + e.what());
  }
  validate_state(m, out);
  return out;
}

Observable observable_from_json(const json& j, const SpModel& m) {
  if (!j.is_object()) throw SchemaError("observable document must be an object");
  std::string kind = field(j, "kind").get<std::string>();
  try {
    if (kind == "hermitian") {
      Index dim = field(j, "dim").get<Index>();
      if (dim != m.dimension) {
        throw SchemaError("matrix dimension does not match the model");
      }
      json rows = field(j, "matrix");
      if (!rows.is_array() || static_cast<Index>(rows.size()) != dim) {
        throw SchemaError("matrix must have dim rows");
      }
      Matrix H(dim, dim);
      for (Index r = 0; r < dim; ++r) {
        const json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != dim) {
          throw SchemaError("matrix rows must have dim entries");
        }
        for (Index c = 0; c < dim; ++c) {
          H(r, c) = complex_from(row[static_cast<std::size_t>(c)]);
        }
      }
      return hermitian_to_observable(m, H);
    }
    if (kind == "spectral") {
      json parts = field(j, "parts");
      if (!parts.is_array() || parts.empty()) {
        throw SchemaError("parts must be a non-empty array");
      }
      std::vector<ObservablePart> out;
      for (const auto& pj : parts) {
        double value = field(pj, "lambda").get<double>();
        json basis = field(pj, "basis");
        if (!basis.is_array() || basis.empty()) {
          throw SchemaError("part basis must be a non-empty array");
        }
        std::vector<State> members;
        for (const auto& bj : basis) {
          if (bj.is_number_integer()) {
            members.push_back(ClassicalState{bj.get<Index>()});
          } else {
            members.push_back(extract(m, vector_from(bj, m.dimension)));
          }
        }
        out.push_back(
            ObservablePart{value, span_of(m, make_ortho_set(m, members))});
      }
      return make_observable(m, std::move(out));
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad observable document: ") + e.what());
  }
  throw SchemaError("unknown observable kind: " + kind);
}

ordered_json state_to_json(const SpModel& m, const State& x) {
  ordered_json j;
  if (const auto* c = std::get_if<ClassicalState>(&x)) {
    j["kind"] = "classical_state";
    j["index"] = c->index;
    return j;
  }
  auto amplitudes = [](const Vector& v) {
    ordered_json arr = ordered_json::array();
    for (Index i = 0; i < v.size(); ++i) {
      arr.push_back({v[i].real(), v[i].imag()});
    }
    return arr;
  };
  if (const auto* h = std::get_if<HilbertState>(&x)) {
    j["kind"] = "hilbert_state";
    j["dim"] = h->amplitudes.size();
    j["amplitudes"] = amplitudes(h->amplitudes);
    return j;
  }
  const auto& s = std::get<SectoredState>(x);
  j["kind"] = "sectored_state";
  j["sector"] = s.sector;
  j["amplitudes"] = amplitudes(s.amplitudes);
  (void)m;
  return j;
}

}  // namespace sp
