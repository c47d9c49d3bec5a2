#pragma once

#include "polybound/engine.hpp"

#include <json.hpp>

#include <string>

namespace polybound {

inline constexpr int kReportSchemaVersion = 1;

struct ReportOptions {
    bool timings = true;
};

nlohmann::json report_json(const Program &p, const AnalysisResult &r, const ReportOptions &opts = {});
std::string report_text(const Program &p, const AnalysisResult &r, const ReportOptions &opts = {});

} // namespace polybound
