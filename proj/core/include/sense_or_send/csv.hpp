#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace sos {

/// 17 significant digits, locale independent.
std::string format_double(double value);

/// Minimal comma-separated row writer. Fields are never quoted; callers only
/// emit numbers and fixed identifiers.
class CsvRow {
public:
    explicit CsvRow(std::ostream& out) : out_(out) {}
    ~CsvRow() { out_ << '\n'; }
    CsvRow(const CsvRow&) = delete;
    CsvRow& operator=(const CsvRow&) = delete;

    CsvRow& operator<<(double value) { return field(format_double(value)); }
    CsvRow& operator<<(std::int64_t value) { return field(std::to_string(value)); }
    CsvRow& operator<<(int value) { return field(std::to_string(value)); }
    CsvRow& operator<<(std::size_t value) { return field(std::to_string(value)); }
    CsvRow& operator<<(bool value) { return field(value ? "1" : "0"); }
    CsvRow& operator<<(std::string_view value) { return field(value); }
    CsvRow& operator<<(const char* value) { return field(value); }
    template <typename T>
    CsvRow& operator<<(const std::optional<T>& value) {
        if (value) return *this << *value;
        return field("");
    }

private:
    CsvRow& field(std::string_view text) {
        if (!first_) out_ << ',';
        first_ = false;
        out_ << text;
        return *this;
    }

    std::ostream& out_;
    bool first_ = true;
};

}  // namespace sos
