#ifndef PIBELL_IO_HPP
#define PIBELL_IO_HPP

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "common.hpp"

namespace pibell::io {

// 17 significant digits, '.' decimal separator regardless of locale.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    for (char& ch : s)
        if (ch == ',') ch = '.';
    return s;
}

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    template <class... Ts>
    void add(const Ts&... values) {
        std::vector<std::string> r{cell(values)...};
        if (r.size() != header_.size()) throw std::logic_error("CsvTable: row width does not match header");
        rows_.push_back(std::move(r));
    }

    static std::string cell(double v) { return format_double(v); }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }
    template <class T>
        requires std::is_integral_v<T>
    static std::string cell(T v) {
        return std::to_string(v);
    }

    std::size_t size() const { return rows_.size(); }
    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    std::string str() const {
        std::ostringstream os;
        write_line(os, header_);
        for (const auto& r : rows_) write_line(os, r);
        return os.str();
    }

private:
    static void write_line(std::ostream& os, const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << cells[k];
        os << '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// Writes to a sibling temporary file and renames it over the target.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace pibell::io

#endif
