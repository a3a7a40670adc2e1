// Copyright 2026 The relsurf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RELSURF_REPORT_H_
#define RELSURF_REPORT_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "relsurf/metrics.h"

namespace relsurf {

enum class TableFormat { kCsv, kMarkdown };

std::string SurfaceTable(const ReliabilitySurface& surface, TableFormat format);
std::string AblationTable(const std::vector<AblationRow>& rows, TableFormat format);
std::string RecoveryTable(const std::vector<std::pair<std::string, RecoveryStats>>& rows,
                          TableFormat format);
std::string CostTable(const std::vector<CostRow>& rows, TableFormat format);

struct GradientRow {
  std::string series;
  GridPoint point;
  Axis axis;
  double gradient;
};
std::string GradientTable(const std::vector<GradientRow>& rows, TableFormat format);

struct VolumeRow {
  std::string series;
  double volume;
  double pass_eps0;
  double pass_eps_max;
};
std::string VolumeTable(const std::vector<VolumeRow>& rows, TableFormat format);

// Plot data: CSV with columns series,x,y.
struct PlotPoint {
  std::string series;
  double x;
  double y;
};
void WritePlotData(const std::filesystem::path& path, std::span<const PlotPoint> points);

}  // namespace relsurf

#endif  // RELSURF_REPORT_H_
