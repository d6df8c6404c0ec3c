#include "fourterm/csvio.hpp"

#include <cstdio>
#include <fstream>

#include "fourterm/errors.hpp"

namespace fourterm::csvio {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << content;
    if (!out) throw ValidationError("failed writing output file: " + path);
}

void write_sidecar(const std::string& csv_path, const nlohmann::json& config,
                   const nlohmann::json& tolerances) {
    nlohmann::json meta;
    meta["config"] = config;
    meta["tolerances"] = tolerances;
    meta["versions"] = {{"fourterm", kVersion}, {"format", 1}};
    write_text_file(csv_path + ".meta.json", meta.dump(2) + "\n");
}

}  // namespace fourterm::csvio
