#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qram::cli {

inline constexpr const char* kConfigEnv = "QRAM_CONFIG";

struct ConfigEntry {
    std::string key, value;
    int line = 0;
};

// Line-oriented `key = value` file. Keys before the first `[name]` header
// apply to every profile; a profile section adds to and overrides them.
class ConfigFile {
public:
    static ConfigFile parse(const std::string& text, const std::string& origin = "config");
    static ConfigFile load(const std::string& path);

    // Global entries followed by the profile's, later keys winning.
    std::vector<ConfigEntry> entries(const std::string& profile) const;
    std::vector<std::string> profiles() const;

private:
    struct Section {
        std::string name;
        std::vector<ConfigEntry> entries;
    };
    std::vector<Section> sections_;
    std::string origin_;
};

}  // namespace qram::cli
