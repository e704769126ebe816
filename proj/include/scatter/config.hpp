#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scatter {

/// Flat dotted-key configuration.
///
/// Grammar: one `key = value` pair per line; `#` starts a comment; blank
/// lines ignored.  Values are numbers, booleans (true/false), bare
/// strings, or comma-separated number lists.  Unknown keys are rejected
/// against the built-in schema.
class Config {
  public:
    static Config defaults();
    static Config from_file(const std::string& path);   // IoError / ConfigError

    /// Applies a single `key=value` override (the --set flag).
    void set(const std::string& assignment);
    void set(const std::string& key, const std::string& value);

    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::vector<double> get_list(const std::string& key) const;

    bool has(const std::string& key) const;
    const std::map<std::string, std::string>& entries() const { return values_; }

    /// Schema check plus physical-range validation; returns diagnostics
    /// (empty when valid).
    std::vector<std::string> validate() const;

    struct SchemaEntry {
        const char* key;
        const char* type;  // "double" | "int" | "bool" | "string" | "list"
        const char* description;
    };
    static const std::vector<SchemaEntry>& schema();

  private:
    std::map<std::string, std::string> values_;
};

}  // namespace scatter
