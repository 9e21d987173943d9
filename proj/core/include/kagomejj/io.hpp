#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace kagomejj {

/// Shortest round-trip decimal form of v (to_chars); deterministic across
/// runs, so identical data produces byte-identical files.
std::string format_double(double v);

std::string to_hex(std::uint64_t v);

/// Write-temp-then-rename so readers never observe partial files.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

/// Rows of already-formatted cells under a header line.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    void add_row(const std::vector<double>& cells);

    std::string str() const;
    void write(const std::filesystem::path& path) const;

private:
    std::size_t width_;
    std::string body_;
};

} // namespace kagomejj
