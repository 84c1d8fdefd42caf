#include "overseg/kvfile.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace overseg {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

KeyValueFile parse_stream(std::istream& in, const std::string& source) {
    KeyValueFile kv;
    kv.source = source;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw FormatError(source + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw FormatError(source + ":" + std::to_string(lineno) + ": empty key");
        kv.entries.push_back({key, value, lineno});
    }
    return kv;
}

}  // namespace

KeyValueFile KeyValueFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open file: " + path);
    return parse_stream(in, path);
}

KeyValueFile KeyValueFile::from_string(const std::string& text, const std::string& source_name) {
    std::istringstream in(text);
    return parse_stream(in, source_name);
}

int KeyValueFile::as_int(const Entry& e) const {
    char* end = nullptr;
    long v = std::strtol(e.value.c_str(), &end, 10);
    if (end == e.value.c_str() || *end != '\0') fail(e, "expected an integer");
    return static_cast<int>(v);
}

double KeyValueFile::as_double(const Entry& e) const {
    char* end = nullptr;
    double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0') fail(e, "expected a number");
    return v;
}

bool KeyValueFile::as_bool(const Entry& e) const {
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    fail(e, "expected true/false");
}

void KeyValueFile::fail(const Entry& e, const std::string& msg) const {
    throw FormatError(source + ":" + std::to_string(e.line) + ": key `" + e.key + "`: " + msg);
}

}  // namespace overseg
