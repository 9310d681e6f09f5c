#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "snls/analysis.hpp"
#include "snls/config.hpp"
#include "snls/ensemble.hpp"

namespace snls {

using Json = nlohmann::json;

std::string format_double(double v); // %.17g, round-trips exactly

// Columns: functional_columns(). Empty series gives a header-only file.
void write_functionals_csv(const std::string& path, const std::vector<FunctionalRecord>& series);
std::vector<FunctionalRecord> read_functionals_csv(const std::string& path);

// Columns: t, then <name>_mean, <name>_var, <name>_min, <name>_max, <name>_supmean per tracked functional.
void write_ensemble_csv(const std::string& path, const EnsembleResult& r);
void write_path_csv(const std::string& path, const EnsembleResult& r, std::size_t index);

void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const Json& j);
void ensure_directory(const std::string& dir);

Json manifest(const ExperimentConfig& cfg, const Json& extra = Json::object());
Json noise_manifest(const NoisePath& path);
Json to_json(const ItoBudget& b);
Json to_json(const RegimeReport& r);
Json to_json(const CauchyResult& r);
Json to_json(const StrichartzReport& r);
Json to_json(const TailDecayFit& f);
Json to_json(const GrowthFit& f);

std::string regime_table(const std::vector<RegimeReport>& reports);
std::string budget_table(const std::vector<ItoBudget>& budgets);

std::string hex64(std::uint64_t v);

} // namespace snls
