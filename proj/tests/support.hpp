#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "hypolo/dataset.hpp"
#include "hypolo/geometry.hpp"
#include "oracles.hpp"

namespace support {

inline hypolo::Dataset make_dataset(const std::vector<std::pair<double, double>>& xy,
                                    std::vector<hypolo::Label> labels = {}) {
    std::vector<hypolo::DiskPoint> pts;
    for (auto [x, y] : xy) pts.push_back(hypolo::validate_point(x, y));
    return hypolo::Dataset(std::move(pts), std::move(labels));
}

inline std::vector<oracle::Pt> coords(const hypolo::Dataset& data) {
    std::vector<oracle::Pt> out;
    for (const auto& p : data.points()) out.push_back({p.x(), p.y()});
    return out;
}

// Uniform in the disk of radius `rmax` (area measure).
inline hypolo::Dataset random_dataset(std::mt19937_64& rng, std::size_t n, double rmax) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<hypolo::DiskPoint> pts;
    while (pts.size() < n) {
        const double r = rmax * std::sqrt(u(rng));
        const double t = 2.0 * 3.141592653589793 * u(rng);
        pts.push_back(hypolo::validate_point(r * std::cos(t), r * std::sin(t)));
    }
    return hypolo::Dataset(std::move(pts));
}

class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("hypolo_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
}

inline std::filesystem::path data_file(const std::string& name) {
    return std::filesystem::path(HYPOLO_TEST_DATA_DIR) / name;
}

}  // namespace support
