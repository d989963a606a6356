#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace wps {

// Flat "section.key = value" lines; '#' starts a comment, lists are comma separated.
class Config {
public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    const std::string& text() const { return text_; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string str(const std::string& key) const;
    std::string str(const std::string& key, const std::string& fallback) const;
    double num(const std::string& key) const;
    double num(const std::string& key, double fallback) const;
    long integer(const std::string& key) const;
    long integer(const std::string& key, long fallback) const;
    std::vector<double> list(const std::string& key) const;
    std::vector<double> list(const std::string& key, const std::vector<double>& fallback) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    std::vector<std::string> keys() const;

    // keys present in the file that no accessor asked for
    std::vector<std::string> unused() const;

private:
    std::string text_;
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;

    const std::string& raw(const std::string& key) const;
};

}  // namespace wps
