#include "logistic/artifacts.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace logistic {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot hash missing file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a64(ss.str());
}

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_g17(row[i]);
        out << "\n";
    }
}

Manifest::Manifest(std::string command, std::string out_dir)
    : command_(std::move(command)), out_dir_(std::move(out_dir)) {
    std::filesystem::create_directories(out_dir_);
}

void Manifest::note_config(const std::string& config_path) {
    config_path_ = config_path;
    config_hash_ = fnv1a64_file(config_path);
}

void Manifest::add(const std::string& path) { outputs_.push_back(path); }

void Manifest::write(double wall_seconds) const {
    nlohmann::json j;
    j["command"] = command_;
    j["status"] = status_;
    j["config_file"] = config_path_;
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(config_hash_));
    j["config_fnv1a64"] = hex;
    j["wall_time_s"] = wall_seconds;
    j["outputs"] = nlohmann::json::array();
    for (const auto& p : outputs_) {
        const auto full = std::filesystem::path(out_dir_) / p;
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(fnv1a64_file(full)));
        j["outputs"].push_back({{"file", p},
                                {"bytes", std::filesystem::file_size(full)},
                                {"fnv1a64", hex}});
    }
    std::ofstream out(std::filesystem::path(out_dir_) / "manifest.json",
                      std::ios::binary);
    out << j.dump(2) << "\n";
}

}  // namespace logistic
