#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace logistic {

std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t fnv1a64_file(const std::string& path);
std::string format_g17(double x);

/// CSV with a header row, '.' decimal separator, 17 significant digits.
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Records every artifact a command writes, with content hashes, and lands
/// as manifest.json next to them.
class Manifest {
  public:
    Manifest(std::string command, std::string out_dir);
    void note_config(const std::string& config_path);
    void add(const std::string& path);         // absolute or out_dir-relative
    void set_status(const std::string& s) { status_ = s; }
    void write(double wall_seconds) const;

  private:
    std::string command_, out_dir_, config_path_, status_ = "complete";
    std::uint64_t config_hash_ = 0;
    std::vector<std::string> outputs_;
};

}  // namespace logistic
