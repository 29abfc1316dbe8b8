#include "config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "qram/ir.hpp"

namespace qram::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
    ConfigFile cf;
    cf.origin_ = origin;
    cf.sections_.push_back({"", {}});
    std::istringstream in(text);
    std::string raw;
    for (int line = 1; std::getline(in, raw); ++line) {
        const std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) continue;
        auto fail = [&](const std::string& why) {
            throw Error(origin + " line " + std::to_string(line) + ": " + why);
        };
        if (s.front() == '[') {
            if (s.back() != ']') fail("unterminated section header");
            const std::string name = trim(s.substr(1, s.size() - 2));
            if (name.empty()) fail("empty section name");
            for (const auto& sec : cf.sections_)
                if (sec.name == name) fail("duplicate section '" + name + "'");
            cf.sections_.push_back({name, {}});
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
        if (key.empty()) fail("missing key");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        cf.sections_.back().entries.push_back({key, value, line});
    }
    return cf;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), path);
}

std::vector<ConfigEntry> ConfigFile::entries(const std::string& profile) const {
    const Section* chosen = nullptr;
    if (!profile.empty()) {
        for (const auto& s : sections_)
            if (s.name == profile) chosen = &s;
        if (!chosen) {
            std::string known;
            for (const auto& p : profiles()) known += (known.empty() ? "" : ", ") + p;
            throw Error(origin_ + ": no profile '" + profile + "' (available: " + known + ")");
        }
    }
    std::vector<ConfigEntry> out;
    std::map<std::string, std::size_t> at;
    for (const Section* s : {&sections_.front(), chosen}) {
        if (!s) continue;
        for (const auto& e : s->entries) {
            if (auto it = at.find(e.key); it != at.end()) {
                out[it->second] = e;
            } else {
                at[e.key] = out.size();
                out.push_back(e);
            }
        }
    }
    return out;
}

std::vector<std::string> ConfigFile::profiles() const {
    std::vector<std::string> out;
    for (std::size_t i = 1; i < sections_.size(); ++i) out.push_back(sections_[i].name);
    return out;
}

}  // namespace qram::cli
