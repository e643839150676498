#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "corrgeom/bloch.hpp"
#include "corrgeom/constructions.hpp"
#include "corrgeom/criteria.hpp"
#include "corrgeom/moments.hpp"
#include "corrgeom/observables.hpp"

namespace corrgeom::io {

using nlohmann::json;

/// {"d1", "d2", "rho_re", "rho_im"}; rho_* are row-major nested arrays.
json state_to_json(const BipartiteState &s);

/// Throws InputError on missing fields, ragged arrays or an unphysical matrix.
BipartiteState state_from_json(const json &j);

/// Parses text first; parse errors become InputError with byte offset and line.
BipartiteState state_from_text(const std::string &text);

json spectrum_to_json(const ObservableSpectrum &a);
json moments_to_json(const MomentPoint &p);
json verdict_to_json(const SchmidtVerdict &v);
json construction_to_json(const Construction &c);
json coverage_to_json(const KinkCoverage &c);

}  // namespace corrgeom::io
