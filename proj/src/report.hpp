#pragma once

// Final stage: one report.json pulling every artifact together, plus two SVG
// renderings (intertopic map, opinion-affinity heatmap). All floating point
// output is rounded to 12 significant digits so reruns are byte-identical.

#include <string>

#include "analysis.hpp"
#include "pipeline.hpp"

namespace tt {

// %.12g round-trip. Rounding before serialization keeps the JSON stable
// across runs and platforms that agree on IEEE doubles.
double round_sig12(double v);

void emit_report(const PipelineConfig& config);

void write_intertopic_svg(const IntertopicMap& map, const std::string& path);
void write_heatmap_svg(const AffinityMatrix& affinity, const std::string& path);

}  // namespace tt
