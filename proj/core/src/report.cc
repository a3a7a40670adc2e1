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

#include "relsurf/report.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "relsurf/errors.h"

namespace relsurf {

namespace {

std::string Fmt(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string Pct(double fraction) { return Fmt("%.2f", fraction * 100.0); }
std::string Num(double v) { return Fmt("%g", v); }

std::string SignedPct(double fraction) {
  std::string s = Fmt("%+.2f", fraction * 100.0);
  return s == "-0.00" || s == "+0.00" ? "0.00" : s;
}

std::string_view AxisName(Axis a) {
  switch (a) {
    case Axis::kK: return "k";
    case Axis::kEpsilon: return "epsilon";
    case Axis::kLambda: return "lambda";
  }
  return "?";
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void Add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string Render(TableFormat format) const {
    std::ostringstream out;
    if (format == TableFormat::kCsv) {
      WriteCsv(out, header_);
      for (const auto& r : rows_) WriteCsv(out, r);
    } else {
      WriteMd(out, header_);
      out << "|";
      for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "---:|" : "---|");
      out << "\n";
      for (const auto& r : rows_) WriteMd(out, r);
    }
    return out.str();
  }

 private:
  static void WriteCsv(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ",";
      const std::string& c = cells[i];
      if (c.find_first_of(",\"\n") != std::string::npos) {
        out << '"';
        for (char ch : c) {
          if (ch == '"') out << '"';
          out << ch;
        }
        out << '"';
      } else {
        out << c;
      }
    }
    out << "\n";
  }

  static void WriteMd(std::ostream& out, const std::vector<std::string>& cells) {
    out << "|";
    for (const auto& c : cells) out << " " << c << " |";
    out << "\n";
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace

std::string SurfaceTable(const ReliabilitySurface& surface, TableFormat format) {
  Table t(format == TableFormat::kCsv
              ? std::vector<std::string>{"k", "epsilon", "lambda", "pass_k", "ci_low", "ci_high",
                                         "tasks", "trials"}
              : std::vector<std::string>{"k", "ε", "λ", "pass^k (%)", "95% CI (%)", "Tasks",
                                         "Trials"});
  for (const auto& [p, cell] : surface.cells) {
    if (format == TableFormat::kCsv) {
      t.Add({std::to_string(p.k), Num(p.epsilon), Num(p.lambda), Fmt("%.6f", cell.estimate),
             Fmt("%.6f", cell.ci.low), Fmt("%.6f", cell.ci.high), std::to_string(cell.n_tasks),
             std::to_string(cell.n_trials)});
    } else {
      t.Add({std::to_string(p.k), Num(p.epsilon), Num(p.lambda), Pct(cell.estimate),
             Pct(cell.ci.low) + " to " + Pct(cell.ci.high), std::to_string(cell.n_tasks),
             std::to_string(cell.n_trials)});
    }
  }
  return t.Render(format);
}

std::string AblationTable(const std::vector<AblationRow>& rows, TableFormat format) {
  Table t(format == TableFormat::kCsv
              ? std::vector<std::string>{"profile", "episodes", "successes", "pass_rate",
                                         "delta_vs_mixed"}
              : std::vector<std::string>{"Fault Profile", "Episodes", "Pass Rate (%)",
                                         "Δ vs Mixed"});
  for (const auto& r : rows) {
    if (format == TableFormat::kCsv) {
      t.Add({r.profile, std::to_string(r.episodes), std::to_string(r.successes),
             Fmt("%.6f", r.pass_rate), Fmt("%.6f", r.delta_vs_mixed)});
    } else {
      t.Add({r.profile, std::to_string(r.episodes), Pct(r.pass_rate),
             r.profile == "mixed" ? "(baseline)" : SignedPct(r.delta_vs_mixed)});
    }
  }
  return t.Render(format);
}

std::string RecoveryTable(const std::vector<std::pair<std::string, RecoveryStats>>& rows,
                          TableFormat format) {
  Table t(format == TableFormat::kCsv
              ? std::vector<std::string>{"series", "faults_encountered", "successful_recoveries",
                                         "recovery_rate", "extra_tool_calls"}
              : std::vector<std::string>{"Series", "Faults Encountered", "Successful Recoveries",
                                         "Additional Tool Calls on Fault"});
  for (const auto& [name, s] : rows) {
    const std::string extra = s.extra_tool_calls_per_fault
                                  ? Fmt(format == TableFormat::kCsv ? "%.6f" : "%+.1f",
                                        *s.extra_tool_calls_per_fault)
                                  : (format == TableFormat::kCsv ? "" : "n/a");
    if (format == TableFormat::kCsv) {
      t.Add({name, std::to_string(s.faults_encountered), std::to_string(s.successful_recoveries),
             s.recovery_rate ? Fmt("%.6f", *s.recovery_rate) : "", extra});
    } else {
      std::string rec = std::to_string(s.successful_recoveries);
      if (s.recovery_rate) rec += " (" + Fmt("%.1f", *s.recovery_rate * 100.0) + "%)";
      t.Add({name, std::to_string(s.faults_encountered), rec, extra});
    }
  }
  return t.Render(format);
}

std::string CostTable(const std::vector<CostRow>& rows, TableFormat format) {
  Table t(format == TableFormat::kCsv
              ? std::vector<std::string>{"model", "episodes", "tokens_in", "tokens_out",
                                         "total_usd", "usd_per_100_episodes", "ratio"}
              : std::vector<std::string>{"Model", "Episodes", "Input Tokens", "Output Tokens",
                                         "Cost (USD)", "Cost per 100 Episodes", "Ratio"});
  for (const auto& r : rows) {
    t.Add({r.model_id, std::to_string(r.episodes), std::to_string(r.tokens_in),
           std::to_string(r.tokens_out), Fmt("%.4f", r.total_usd),
           Fmt("%.4f", r.usd_per_100_episodes),
           Fmt(format == TableFormat::kCsv ? "%.4f" : "%.1fx", r.ratio_to_cheapest)});
  }
  return t.Render(format);
}

std::string GradientTable(const std::vector<GradientRow>& rows, TableFormat format) {
  Table t(format == TableFormat::kCsv
              ? std::vector<std::string>{"series", "k", "epsilon", "lambda", "axis", "gradient"}
              : std::vector<std::string>{"Series", "k", "ε", "λ", "Axis", "dR per unit"});
  for (const auto& r : rows) {
    t.Add({r.series, std::to_string(r.point.k), Num(r.point.epsilon), Num(r.point.lambda),
           std::string(AxisName(r.axis)), Fmt(format == TableFormat::kCsv ? "%.6f" : "%.3f",
                                              r.gradient)});
  }
  std::string out = t.Render(format);
  if (format == TableFormat::kMarkdown) {
    out += "\nGradients are change in pass^k per unit of the axis value; a step of 0.1 "
           "corresponds to one tenth of the listed figure.\n";
  }
  return out;
}

std::string VolumeTable(const std::vector<VolumeRow>& rows, TableFormat format) {
  Table t(format == TableFormat::kCsv
              ? std::vector<std::string>{"series", "volume", "pass_eps0", "pass_eps_max"}
              : std::vector<std::string>{"Series", "Surface Volume", "ε=0 Pass (%)",
                                         "ε=max Pass (%)"});
  for (const auto& r : rows) {
    if (format == TableFormat::kCsv) {
      t.Add({r.series, Fmt("%.6f", r.volume), Fmt("%.6f", r.pass_eps0),
             Fmt("%.6f", r.pass_eps_max)});
    } else {
      t.Add({r.series, Fmt("%.3f", r.volume), Pct(r.pass_eps0), Pct(r.pass_eps_max)});
    }
  }
  return t.Render(format);
}

void WritePlotData(const std::filesystem::path& path, std::span<const PlotPoint> points) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "series,x,y\n";
  for (const auto& p : points) out << p.series << "," << Num(p.x) << "," << Fmt("%.6f", p.y) << "\n";
}

}  // namespace relsurf
