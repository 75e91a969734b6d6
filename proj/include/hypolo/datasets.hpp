#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <utility>
#include <vector>

#include "hypolo/dataset.hpp"
#include "hypolo/geometry.hpp"

namespace hypolo {

/// Portable normal deviates: std::mt19937_64 (its output sequence is fixed by
/// the C++ standard), 53-bit uniforms in (0, 1), and the Box-Muller transform.
/// Each call to normal_pair() consumes exactly two engine outputs.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    std::pair<double, double> normal_pair();

private:
    std::mt19937_64 engine_;
};

/// Two Gaussian clusters plus fixed outliers. `spread` is the standard
/// deviation of each coordinate around its cluster centre.
struct ToySpec {
    DiskPoint center_a = validate_point(-0.45, 0.0);
    DiskPoint center_b = validate_point(0.45, 0.0);
    double spread = 0.08;
    int points_per_cluster = 40;
    std::vector<DiskPoint> outliers = default_toy_outliers();
    std::uint64_t seed = 0;

    static std::vector<DiskPoint> default_toy_outliers();
};

/// Points 0..n-1 are cluster A, then cluster B, then the outliers. Samples
/// landing at norm >= 1 - kBoundaryMargin are redrawn. Throws Error{InvalidSpec}.
Dataset generate_toy(const ToySpec& spec);

/// Tab separated rows: id, x, y[, label[, name]]. A first line starting with
/// the token "id" is a header. Label is "inlier", "outlier" or empty.
/// Throws Error{ParseError}, Error{OutsideDisk}, Error{DuplicateId}, with the
/// offending line number in the message.
Dataset read_embedding(std::istream& in);
Dataset load_embedding(const std::filesystem::path& path);

/// Writes the same format with a header and 17 significant digits.
void write_embedding(std::ostream& out, const Dataset& data);
void save_embedding(const std::filesystem::path& path, const Dataset& data);

}  // namespace hypolo
