#pragma once

#include <string>
#include <vector>

#include "overseg/types.hpp"

namespace overseg {

/// Line-oriented `key=value` file with `#` comments. Parsing keeps line
/// numbers so schema errors can point at the offending line.
struct KeyValueFile {
    struct Entry {
        std::string key;
        std::string value;
        int line = 0;
    };

    std::string source;  // path or "<override>"
    std::vector<Entry> entries;

    static KeyValueFile load(const std::string& path);
    static KeyValueFile from_string(const std::string& text, const std::string& source_name);

    int as_int(const Entry& e) const;
    double as_double(const Entry& e) const;
    bool as_bool(const Entry& e) const;

    [[noreturn]] void fail(const Entry& e, const std::string& msg) const;
};

}  // namespace overseg
