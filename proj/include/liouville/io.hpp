#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "liouville/solver.hpp"

namespace liouville {

using Json = nlohmann::ordered_json;

// 17-significant-digit decimal formatting (value-preserving for doubles).
std::string format_g17(double v);

// Field snapshot: columns i, j, x, y, value over interior nodes.
void write_field_csv(const std::filesystem::path& path, const ScalarField& f);

void write_json(const std::filesystem::path& path, const Json& j);

Json to_json(const ConfigSpaceCheck& c);
Json to_json(const ReductionSolve& r, bool include_field_stats = true);
Json to_json(const BubbleSummary& b);
Json to_json(const SolveReport& r);
Json to_json(const EnergyReport& r);
Json to_json(const MassCheck& m);
Json to_json(const AssumptionReport& a);
Json to_json(const BubbleConfig& c);

} // namespace liouville
