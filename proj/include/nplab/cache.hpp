#pragma once

// Persistent result cache keyed by a content hash of the canonical request
// serialization.  Entries live one-per-file under the cache directory and are
// written atomically (temp file + rename).  An unwritable directory degrades
// to an in-memory map; a corrupt entry reads as a miss so the caller
// recomputes and overwrites.  Both degradations are reported as warnings.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace nplab {

inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

class ResultCache {
public:
    ResultCache(std::string dir, bool enabled)
        : dir_(std::move(dir)), enabled_(enabled) {
        if (!enabled_) return;
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        std::string probe = dir_ + "/.probe";
        {
            std::ofstream out(probe, std::ios::trunc);
            out << "ok";
            disk_ok_ = static_cast<bool>(out);
        }
        if (disk_ok_) {
            std::filesystem::remove(probe, ec);
        } else {
            warnings_.push_back("cache directory '" + dir_ +
                                "' is not writable; using in-memory cache");
        }
    }

    bool enabled() const { return enabled_; }

    std::optional<nlohmann::json> get(const std::string& key) {
        if (!enabled_) return std::nullopt;
        auto it = mem_.find(key);
        if (it != mem_.end()) return it->second;
        if (!disk_ok_) return std::nullopt;
        std::ifstream in(entry_path(key));
        if (!in) return std::nullopt;
        std::stringstream ss;
        ss << in.rdbuf();
        nlohmann::json doc = nlohmann::json::parse(ss.str(), nullptr, false);
        if (doc.is_discarded() || !doc.is_object() || !doc.contains("key") ||
            doc["key"] != key || !doc.contains("payload")) {
            warnings_.push_back("corrupt cache entry for key " + key +
                                "; recomputing");
            return std::nullopt;
        }
        return doc["payload"];
    }

    void put(const std::string& key, const nlohmann::json& payload) {
        if (!enabled_) return;
        mem_[key] = payload;
        if (!disk_ok_) return;
        nlohmann::json doc;
        doc["key"] = key;
        doc["payload"] = payload;
        std::string path = entry_path(key);
        std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << doc.dump(2) << '\n';
            if (!out) {
                warnings_.push_back("cache write failed for key " + key);
                std::error_code ec;
                std::filesystem::remove(tmp, ec);
                return;
            }
        }
        if (std::rename(tmp.c_str(), path.c_str()) != 0) {
            warnings_.push_back("cache rename failed for key " + key);
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
        }
    }

    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::string entry_path(const std::string& key) const {
        return dir_ + "/" + key + ".json";
    }

    std::string dir_;
    bool enabled_ = false;
    bool disk_ok_ = false;
    std::map<std::string, nlohmann::json> mem_;
    std::vector<std::string> warnings_;
};

} // namespace nplab
