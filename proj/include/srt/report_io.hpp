#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "srt/invariants.hpp"
#include "srt/pipeline.hpp"
#include "srt/spectral.hpp"

namespace srt {

using json = nlohmann::ordered_json;

json to_json(const Functional& f, bool with_values = false);
json to_json(const CriteriaReport& c, bool with_maps = false);
json to_json(const Analysis& a);
json to_json(const std::vector<TableCell>& cells);
json to_json(const InvariantReport& r);
json to_json(const SpectralReport& s);

// one row per grid sample: x, the auxiliary lengths, rho, and the functional maps
void write_profile_csv(std::ostream& os, const Analysis& a);
// flattened scalar report: key,value
void write_report_csv(std::ostream& os, const Analysis& a);
void write_table_csv(std::ostream& os, const std::vector<TableCell>& cells);
void write_covering_csv(std::ostream& os, const Covering& c);
void write_spectrum_csv(std::ostream& os, const SpectralReport& s);
void write_invariants_csv(std::ostream& os, const InvariantReport& r);

}  // namespace srt
