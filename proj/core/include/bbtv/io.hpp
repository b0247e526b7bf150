#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bbtv {

inline constexpr std::string_view kToolName = "bbtv";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Key/value provenance carried on the first line of every output file:
///   # bbtv 0.1.0 seed=42 config=fnv1a:0123456789abcdef ...
struct Metadata {
    std::map<std::string, std::string> fields;

    [[nodiscard]] std::string line() const;
    /// Parses a "# bbtv ..." line; non-matching lines yield empty fields.
    static Metadata parse(std::string_view line);
    [[nodiscard]] bool has(const std::string& key) const { return fields.count(key) != 0; }
    [[nodiscard]] const std::string& at(const std::string& key) const;
};

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

std::vector<std::string_view> split_csv(std::string_view line);
std::string_view trim(std::string_view s);

double parse_double(std::string_view s);
std::int64_t parse_int(std::string_view s);

/// Reads the next line that is neither blank nor a '#' comment. Returns
/// false at end of input. The last comment seen is stored in `comment` if
/// non-null.
bool next_data_line(std::istream& in, std::string& line, std::string* comment = nullptr);

std::string read_file(const std::string& path);

}  // namespace bbtv
