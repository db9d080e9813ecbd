#pragma once

#include <json.hpp>
#include <string>
#include <variant>

#include "symq/stabilizer.hpp"
#include "symq/symmetrize.hpp"

namespace symq::io {

using json = nlohmann::json;

// {"rows": R, "cols": C, "entries": [{"re": x, "im": y}, ...]}, row-major.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

// {"kind": "sym"|"full", "n": N, "d": D,
//  "amplitudes": [{"occ": [...]|"idx": [...], "re": x, "im": y}, ...]};
// omitted basis elements mean amplitude zero.
json state_to_json(const SymState& s);
json state_to_json(const FullState& f);

using AnyState = std::variant<SymState, FullState>;
AnyState state_from_json(const json& j);

// Full states are converted through full_to_sym (throws NotSymmetric).
SymState as_sym(const AnyState& state, double tol = kDefaultTol);

json report_to_json(const ClassReport& r);
json space_to_json(const StabilizerSpace& s);
json symmetrization_to_json(const SymmetrizationResult& r);

json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);

}  // namespace symq::io
