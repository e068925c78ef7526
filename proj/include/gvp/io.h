#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "gvp/battery.h"
#include "gvp/process.h"
#include "gvp/regularity.h"
#include "gvp/sonine.h"

namespace gvp {

using json = nlohmann::json;

// Finite numbers as numbers, +-infinity as "inf"/"-inf", NaN as null.
json number(double x);
double to_double(const json& j);

json to_json(const PowerLaw& f);
json to_json(const KernelTriple& kt);
// Reads {"a": {"coef", "exponent"}, "b", "c", "p", "q", "r", "T", "label"}; "wiener": true for the Wiener preset.
// Attaches the power-law Sonine partner of c when c = C x^{-sigma}, 0 < sigma < 1.
KernelTriple triple_from_json(const json& j);
KernelTriple read_triple_file(const std::string& path);

json to_json(const Admissibility& a);
json to_json(const HolderPrediction& hp);
json to_json(const HolderReport& r);
json to_json(const IdentityReport& r);
json to_json(const BatteryReport& r);
json to_json(const std::vector<ConstancyResult>& r);
json sidecar(const PathSet& ps, const json& kernel_spec);

// Row i: t_i followed by one column per path.
void write_matrix_csv(std::ostream& os, const Matrix& rows_by_path, double step, bool increments);
void write_paths_csv(std::ostream& os, const PathSet& ps);
void write_increments_csv(std::ostream& os, const PathSet& ps);
// Reads a paths CSV back into X (n_paths x (n_steps+1)) and T.
PathSet read_paths_csv(std::istream& is);

void write_text_file(const std::string& path, const std::string& text);
void write_json_file(const std::string& path, const json& j);

}  // namespace gvp
