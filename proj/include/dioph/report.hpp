#pragma once

// CSV and JSON emission for every runner. Output depends only on the report
// contents, so identical inputs give byte-identical files.

#include "dioph/experiments.hpp"
#include "dioph/heights.hpp"

#include <json.hpp>

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace dioph {

enum class ReportFormat { Csv, Json };

/// "csv" or "json"; throws InvalidInput otherwise.
ReportFormat parse_format(const std::string& text);
const char* extension(ReportFormat f);

nlohmann::json to_json(const CriterionReport& r);
nlohmann::json to_json(const TauProfile& p);
nlohmann::json to_json(const SectionCertificate& c);
nlohmann::json to_json(const GcdPipelineReport& r);
nlohmann::json to_json(const HeightReport& r);
nlohmann::json points_to_json(const std::vector<ProjectivePoint>& points);

CriterionReport criterion_report_from_json(const nlohmann::json& j);
TauProfile tau_profile_from_json(const nlohmann::json& j);

/// Columns coord_0..coord_n, h_D1..h_Dk, m_D1..m_Dk, min_h, nearest_orbit,
/// second_proximity; missing values are empty cells.
void write_csv(std::ostream& os, const CriterionReport& r);
/// Columns tier, points, tau_hat, witness_0..witness_n.
void write_csv(std::ostream& os, const TauProfile& p);
/// Columns e_0..e_n, coeff: the certified form, one monomial per row.
void write_csv(std::ostream& os, const SectionCertificate& c);
void write_csv(std::ostream& os, const GcdPipelineReport& r);
/// Columns quantity, place, value.
void write_csv(std::ostream& os, const HeightReport& r);

template <class R>
std::string render(const R& r, ReportFormat f);

/// Writes the report to path; throws Io when the file cannot be written.
template <class R>
void emit_report(const R& r, ReportFormat f, const std::filesystem::path& path);

/// Writes text to path, creating parent directories; throws Io on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dioph
