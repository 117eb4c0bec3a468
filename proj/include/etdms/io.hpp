#pragma once

// Output plumbing: CSV files with provenance comment headers, raw float64
// snapshots with JSON sidecars, atomic writes, and the config hash.

#include <bit>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "grid.hpp"

namespace etdms {

inline constexpr const char* kArtifactVersion = "0.1.0";

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hash_hex(const std::string& data) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// CSV with "# key=value" provenance lines before the header row.
class CsvBuilder {
  public:
    void provenance(const std::string& key, const std::string& value) {
        body_ += "# " + key + "=" + value + "\n";
    }
    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            body_ += (i ? "," : "") + cols[i];
        body_ += "\n";
    }
    void cell(double v) { sep(); body_ += format_double(v); }
    void cell(long v) { sep(); body_ += std::to_string(v); }
    void cell(int v) { sep(); body_ += std::to_string(v); }
    void cell(const std::string& v) { sep(); body_ += v; }
    void end_row() {
        body_ += "\n";
        row_open_ = false;
    }
    void write(const std::filesystem::path& path) const { write_file_atomic(path, body_); }

  private:
    void sep() {
        if (row_open_) body_ += ",";
        row_open_ = true;
    }
    std::string body_;
    bool row_open_ = false;
};

// Raw little-endian float64 row-major dump plus JSON sidecar.
inline void write_snapshot(const std::filesystem::path& dir, const std::string& base,
                           const std::vector<double>& values, const PeriodicGrid& grid,
                           double t, const std::string& config_hash) {
    static_assert(std::endian::native == std::endian::little,
                  "snapshot format is little-endian");
    std::string raw(reinterpret_cast<const char*>(values.data()),
                    values.size() * sizeof(double));
    write_file_atomic(dir / (base + ".f64"), raw);
    std::string sidecar = "{\n";
    sidecar += "  \"format\": \"float64-le-rowmajor\",\n";
    sidecar += "  \"n\": " + std::to_string(grid.n) + ",\n";
    sidecar += "  \"length\": " + format_double(grid.length) + ",\n";
    sidecar += "  \"t\": " + format_double(t) + ",\n";
    sidecar += "  \"config_hash\": \"" + config_hash + "\"\n";
    sidecar += "}\n";
    write_file_atomic(dir / (base + ".json"), sidecar);
}

}  // namespace etdms
