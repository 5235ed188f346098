#ifndef SP_IO_HPP
#define SP_IO_HPP

#include <string>

#include <json.hpp>

#include "sp/model.hpp"
#include "sp/observables.hpp"

namespace sp {

/// Model from a JSON document. Schemas:
///   {"kind":"matrix","n":N,"p":[[...],...]}        declared similarity table
///   {"kind":"sectored","dims":[d1,d2,...]}          sector dimensions
///   {"kind":"hilbert","dim":D}
///   {"kind":"classical","n":N}
/// Throws SchemaError on anything else.
SpModel model_from_json(const nlohmann::json& j, Tolerances tol = {});

/// Model from a file path or a builtin descriptor:
///   builtin:hilbert:D | builtin:classical:N | builtin:sectored:d1,d2,...
/// Throws ParseError (unreadable/invalid JSON) or SchemaError.
SpModel load_model(const std::string& path_or_builtin, Tolerances tol = {});

/// State fixture. Schemas:
///   {"kind":"hilbert_state","dim":D,"amplitudes":[[re,im],...]}
///   {"kind":"sectored_state","sector":S,"amplitudes":[[re,im],...]}
///   {"kind":"classical_state","index":I}
State state_from_json(const nlohmann::json& j, const SpModel& m);

/// Observable fixture. Schemas:
///   {"kind":"hermitian","dim":D,"matrix":[[[re,im],...],...]}
///   {"kind":"spectral","parts":[{"lambda":v,"basis":[[[re,im],...],...]},...]}
Observable observable_from_json(const nlohmann::json& j, const SpModel& m);

nlohmann::ordered_json state_to_json(const SpModel& m, const State& x);

}  // namespace sp

#endif
