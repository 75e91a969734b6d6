#include "hypolo/datasets.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "hypolo/error.hpp"

namespace hypolo {

std::string_view to_string(Label label) noexcept {
    switch (label) {
        case Label::Inlier: return "inlier";
        case Label::Outlier: return "outlier";
        case Label::Unknown: return "";
    }
    return "";
}

Dataset::Dataset(std::vector<DiskPoint> points, std::vector<Label> labels,
                 std::vector<std::string> names)
    : points_(std::move(points)), labels_(std::move(labels)), names_(std::move(names)) {
    if (!labels_.empty() && labels_.size() != points_.size()) {
        throw Error(Errc::MismatchedIds, "labels not aligned with points");
    }
    if (!names_.empty() && names_.size() != points_.size()) {
        throw Error(Errc::MismatchedIds, "names not aligned with points");
    }
}

std::string_view Dataset::name(std::size_t id) const {
    if (id >= points_.size()) throw Error(Errc::UnknownId, std::to_string(id));
    return has_names() ? std::string_view(names_[id]) : std::string_view();
}

std::vector<bool> Dataset::outlier_mask() const {
    std::vector<bool> mask(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const Label l = label(i);
        if (l == Label::Unknown) {
            throw Error(Errc::DegenerateLabels, "point " + std::to_string(i) + " is unlabeled");
        }
        mask[i] = l == Label::Outlier;
    }
    return mask;
}

std::size_t Dataset::count(Label label) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < points_.size(); ++i) c += this->label(i) == label ? 1 : 0;
    return c;
}

double NormalStream::uniform() {
    // 53 random bits, shifted off zero so log(u) stays finite.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> NormalStream::normal_pair() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

std::vector<DiskPoint> ToySpec::default_toy_outliers() {
    return {
        validate_point(0.0, 0.35),    // above the gap
        validate_point(0.0, -0.35),   // below the gap
        validate_point(-0.55, 0.70),  // towards the rim
        validate_point(0.60, -0.70),  // towards the rim
        validate_point(0.85, 0.25),   // towards the rim
    };
}

Dataset generate_toy(const ToySpec& spec) {
    if (!(spec.spread >= 0.0) || !std::isfinite(spec.spread)) {
        throw Error(Errc::InvalidSpec, "spread must be finite and nonnegative");
    }
    if (spec.points_per_cluster < 0) {
        throw Error(Errc::InvalidSpec, "points_per_cluster must be nonnegative");
    }
    if (spec.spread > 0.5) {
        throw Error(Errc::InvalidSpec, "spread above 0.5 would mostly sample outside the disk");
    }

    NormalStream rng(spec.seed);
    std::vector<DiskPoint> points;
    std::vector<Label> labels;
    std::vector<std::string> names;
    const auto n = static_cast<std::size_t>(spec.points_per_cluster);
    points.reserve(2 * n + spec.outliers.size());

    const auto sample_cluster = [&](const DiskPoint& center, char tag) {
        for (std::size_t i = 0; i < n; ++i) {
            for (int attempt = 0;; ++attempt) {
                if (attempt == 10000) {
                    throw Error(Errc::InvalidSpec, "cluster keeps sampling outside the disk");
                }
                const auto [dx, dy] = rng.normal_pair();
                const double x = center.x() + spec.spread * dx;
                const double y = center.y() + spec.spread * dy;
                if (std::hypot(x, y) < 1.0 - kBoundaryMargin) {
                    points.push_back(validate_point(x, y));
                    break;
                }
            }
            labels.push_back(Label::Inlier);
            names.push_back(tag + std::to_string(i));
        }
    };
    sample_cluster(spec.center_a, 'A');
    sample_cluster(spec.center_b, 'B');
    for (std::size_t i = 0; i < spec.outliers.size(); ++i) {
        points.push_back(spec.outliers[i]);
        labels.push_back(Label::Outlier);
        names.push_back("C" + std::to_string(i));
    }
    return Dataset(std::move(points), std::move(labels), std::move(names));
}

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    return fields;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_no, const char* column) {
    T value{};
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty()) {
        parse_fail(line_no, std::string("bad ") + column + " '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

Dataset read_embedding(std::istream& in) {
    struct Row {
        DiskPoint point;
        Label label = Label::Unknown;
        std::string name;
        bool seen = false;
    };
    std::vector<Row> rows;
    bool any_label = false;
    bool any_name = false;
    std::string line;
    std::size_t line_no = 0;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_tabs(line);
        if (line_no == 1 && fields[0] == "id") continue;
        if (fields.size() < 3 || fields.size() > 5) {
            parse_fail(line_no, "expected 3 to 5 tab separated fields, got " +
                                    std::to_string(fields.size()));
        }
        const auto id = parse_number<std::size_t>(fields[0], line_no, "id");
        const auto x = parse_number<double>(fields[1], line_no, "x");
        const auto y = parse_number<double>(fields[2], line_no, "y");

        Row row;
        try {
            row.point = validate_point(x, y);
        } catch (const Error& e) {
            throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.detail());
        }
        if (fields.size() >= 4) {
            if (fields[3] == "inlier") {
                row.label = Label::Inlier;
            } else if (fields[3] == "outlier") {
                row.label = Label::Outlier;
            } else if (!fields[3].empty()) {
                parse_fail(line_no, "label must be inlier, outlier or empty, got '" +
                                        std::string(fields[3]) + "'");
            }
            any_label = any_label || row.label != Label::Unknown;
        }
        if (fields.size() == 5) {
            row.name = std::string(fields[4]);
            any_name = any_name || !row.name.empty();
        }
        row.seen = true;

        if (id >= rows.size()) rows.resize(id + 1);
        if (rows[id].seen) {
            throw Error(Errc::DuplicateId,
                        "line " + std::to_string(line_no) + ": id " + std::to_string(id));
        }
        rows[id] = std::move(row);
        ++count;
    }
    if (in.bad()) throw Error(Errc::Io, "read failure");
    if (count != rows.size()) {
        throw Error(Errc::ParseError, "ids must be contiguous from 0 (" + std::to_string(count) +
                                          " rows, largest id " + std::to_string(rows.size() - 1) +
                                          ")");
    }

    std::vector<DiskPoint> points;
    std::vector<Label> labels;
    std::vector<std::string> names;
    points.reserve(rows.size());
    for (auto& row : rows) {
        points.push_back(row.point);
        if (any_label) labels.push_back(row.label);
        if (any_name) names.push_back(std::move(row.name));
    }
    return Dataset(std::move(points), std::move(labels), std::move(names));
}

Dataset load_embedding(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Io, "cannot open " + path.string());
    return read_embedding(in);
}

void write_embedding(std::ostream& out, const Dataset& data) {
    out << "id\tx\ty\tlabel\tname\n";
    char buf[64];
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& p = data.point(i);
        std::snprintf(buf, sizeof buf, "%.17g\t%.17g", p.x(), p.y());
        out << i << '\t' << buf << '\t' << to_string(data.label(i)) << '\t' << data.name(i)
            << '\n';
    }
}

void save_embedding(const std::filesystem::path& path, const Dataset& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write " + path.string());
    write_embedding(out, data);
    if (!out) throw Error(Errc::Io, "write failure on " + path.string());
}

}  // namespace hypolo
