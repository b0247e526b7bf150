#include "bbtv/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "bbtv/error.hpp"

namespace bbtv {

std::string Metadata::line() const {
    std::string s = "# ";
    s += kToolName;
    s += ' ';
    s += kToolVersion;
    for (const auto& [k, v] : fields) {
        s += ' ';
        s += k;
        s += '=';
        s += v;
    }
    return s;
}

Metadata Metadata::parse(std::string_view line) {
    Metadata m;
    const std::string prefix = "# " + std::string(kToolName) + " ";
    if (line.substr(0, prefix.size()) != prefix) return m;
    std::istringstream in{std::string(line.substr(prefix.size()))};
    std::string token;
    in >> token;  // version
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        m.fields[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return m;
}

const std::string& Metadata::at(const std::string& key) const {
    auto it = fields.find(key);
    if (it == fields.end()) throw DataError("metadata field '" + key + "' missing");
    return it->second;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return s;
}

std::string format_double(double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, r.ptr};
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

double parse_double(std::string_view s) {
    s = trim(s);
    double v = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        throw DataError("expected a number, got '" + std::string(s) + "'");
    return v;
}

std::int64_t parse_int(std::string_view s) {
    s = trim(s);
    std::int64_t v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        throw DataError("expected an integer, got '" + std::string(s) + "'");
    return v;
}

bool next_data_line(std::istream& in, std::string& line, std::string* comment) {
    while (std::getline(in, line)) {
        const auto t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            if (comment) *comment = std::string(t);
            continue;
        }
        if (t.size() != line.size()) line = std::string(t);
        return true;
    }
    return false;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace bbtv
