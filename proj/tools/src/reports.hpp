#ifndef DTLURE_TOOLS_REPORTS_HPP
#define DTLURE_TOOLS_REPORTS_HPP

#include <optional>

#include <dtlure/lure.hpp>
#include <dtlure/stability.hpp>

#include "json.hpp"

namespace dtlure::tools {

using ordered_json = nlohmann::ordered_json;

ordered_json validation_json(const TransferFunction& tf);

ordered_json crossing_json(const CrossingSet& cs, const RootCensus& census, double alpha);

ordered_json classification_json(const ClassificationReport& rep,
                                 const std::optional<OscillationHypotheses>& hyp,
                                 const Trajectory& traj);

ordered_json census_json(const CensusResult& res, std::uint64_t seed, double box);

/// Angles are reported in radians rounded to 9 decimal places.
double round_angle(double theta);

}  // namespace dtlure::tools

#endif
