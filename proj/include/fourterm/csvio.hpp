#ifndef FOURTERM_CSVIO_HPP
#define FOURTERM_CSVIO_HPP

#include <string>

#include <json.hpp>

namespace fourterm::csvio {

inline constexpr const char* kVersion = "0.1.0";

// round-trip-safe text form (17 significant digits)
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);

// <csv_path>.meta.json with the resolved configuration and tolerances
void write_sidecar(const std::string& csv_path, const nlohmann::json& config,
                   const nlohmann::json& tolerances);

}  // namespace fourterm::csvio

#endif
