#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

namespace tdho::cli {

/// Shortest round-trip decimal form of a double.
[[nodiscard]] std::string format_number(double value);

/// Comma-separated writer with a header row; numbers use format_number, absent values are empty cells.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);

    CsvWriter& operator<<(double v);
    CsvWriter& operator<<(int v);
    CsvWriter& operator<<(std::size_t v);
    CsvWriter& operator<<(std::string_view v);
    CsvWriter& operator<<(const std::optional<double>& v);
    void end_row();
    void close();

private:
    void separator();

    std::filesystem::path path_;
    std::ofstream out_;
    std::string line_;
    bool first_ = true;
};

/// Lowercase hex SHA-256 of a file's bytes.
[[nodiscard]] std::string sha256_file(const std::filesystem::path& path);

}  // namespace tdho::cli
