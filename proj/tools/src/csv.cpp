#include "tdho_cli/csv.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include <openssl/evp.h>

namespace tdho::cli {

std::string format_number(double value) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return {buf.data(), res.ptr};
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    for (auto h : header) *this << h;
    end_row();
}

void CsvWriter::separator() {
    if (!first_) line_ += ',';
    first_ = false;
}

CsvWriter& CsvWriter::operator<<(double v) {
    separator();
    line_ += format_number(v);
    return *this;
}

CsvWriter& CsvWriter::operator<<(int v) {
    separator();
    line_ += std::to_string(v);
    return *this;
}

CsvWriter& CsvWriter::operator<<(std::size_t v) {
    separator();
    line_ += std::to_string(v);
    return *this;
}

CsvWriter& CsvWriter::operator<<(std::string_view v) {
    separator();
    line_ += v;
    return *this;
}

CsvWriter& CsvWriter::operator<<(const std::optional<double>& v) {
    separator();
    if (v) line_ += format_number(*v);
    return *this;
}

void CsvWriter::end_row() {
    line_ += '\n';
    out_ << line_;
    line_.clear();
    first_ = true;
}

void CsvWriter::close() {
    out_.close();
    if (!out_) throw std::runtime_error("failed writing " + path_.string());
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 unavailable");
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        std::array<char, 3> b{};
        std::snprintf(b.data(), b.size(), "%02x", md[i]);
        hex += b.data();
    }
    return hex;
}

}  // namespace tdho::cli
