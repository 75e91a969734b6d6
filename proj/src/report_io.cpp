#include "hypolo/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "hypolo/error.hpp"

namespace hypolo {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_scores_csv(std::ostream& out, const ScoreReport& report) {
    const bool diagnostics = !report.sigma_r.empty();
    out << "id,score,sigma_r,lambda,pdist\n";
    for (std::size_t i = 0; i < report.size(); ++i) {
        out << i << ',' << format_double(report.score[i]) << ',';
        if (diagnostics) {
            out << format_double(report.sigma_r[i]) << ',' << format_double(report.lambda[i])
                << ',' << format_double(report.pdist[i]);
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

std::vector<double> read_scores_csv(std::istream& in) {
    std::vector<double> scores;
    std::vector<bool> seen;
    std::string line;
    std::size_t line_no = 0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || (line_no == 1 && line.rfind("id,", 0) == 0)) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos) {
            throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": missing score");
        }
        const std::string_view id_text(line.data(), c1);
        const std::string_view score_text(line.data() + c1 + 1,
                                          (c2 == std::string::npos ? line.size() : c2) - c1 - 1);
        std::size_t id = 0;
        double score = 0.0;
        const auto r1 = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
        const auto r2 =
            std::from_chars(score_text.data(), score_text.data() + score_text.size(), score);
        if (r1.ec != std::errc() || r1.ptr != id_text.data() + id_text.size() ||
            r2.ec != std::errc() || r2.ptr != score_text.data() + score_text.size()) {
            throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": bad row '" +
                                              line + "'");
        }
        if (id >= scores.size()) {
            scores.resize(id + 1, 0.0);
            seen.resize(id + 1, false);
        }
        if (seen[id]) throw Error(Errc::MismatchedIds, "score id " + std::to_string(id) + " repeated");
        seen[id] = true;
        scores[id] = score;
        ++rows;
    }
    if (rows == 0) throw Error(Errc::MismatchedIds, "scores file has no rows");
    if (rows != scores.size()) {
        throw Error(Errc::MismatchedIds, "score ids must be contiguous from 0");
    }
    return scores;
}

namespace {

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_disk_svg(std::ostream& out, const Dataset& data, std::span<const double> scores,
                    const std::string& title) {
    if (scores.size() != data.size() || data.empty()) {
        throw Error(Errc::MismatchedIds, std::to_string(scores.size()) + " scores for " +
                                             std::to_string(data.size()) + " points");
    }
    constexpr double view = 1.05;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\""
        << fixed(-view) << ' ' << fixed(-view) << ' ' << fixed(2 * view) << ' '
        << fixed(2 * view) << "\">\n";
    out << "<title>" << xml_escape(title) << "</title>\n";
    out << "<defs><clipPath id=\"viewport\"><rect x=\"" << fixed(-view) << "\" y=\""
        << fixed(-view) << "\" width=\"" << fixed(2 * view) << "\" height=\"" << fixed(2 * view)
        << "\"/></clipPath></defs>\n";
    out << "<rect x=\"" << fixed(-view) << "\" y=\"" << fixed(-view) << "\" width=\""
        << fixed(2 * view) << "\" height=\"" << fixed(2 * view) << "\" fill=\"white\"/>\n";
    // y axis points up in the disk, down in SVG.
    out << "<g transform=\"scale(1,-1)\">\n";
    out << "<circle class=\"disk\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" "
           "stroke-width=\"0.004\"/>\n";
    out << "<g class=\"scores\" clip-path=\"url(#viewport)\">\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!(scores[i] > 0.0)) continue;
        const double radius = std::min(kScoreRadiusScale * scores[i], 2.0 * view);
        const auto& p = data.point(i);
        out << "<circle class=\"score\" cx=\"" << fixed(p.x()) << "\" cy=\"" << fixed(p.y())
            << "\" r=\"" << fixed(radius)
            << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"0.003\"/>\n";
    }
    out << "</g>\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& p = data.point(i);
        const bool outlier = data.label(i) == Label::Outlier;
        out << "<circle class=\"point\" cx=\"" << fixed(p.x()) << "\" cy=\"" << fixed(p.y())
            << "\" r=\"0.008\" fill=\"" << (outlier ? "#ff7f0e" : "#1f77b4") << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
}

void write_auc_chart_svg(std::ostream& out, std::span<const AucSeries> series,
                         const std::string& title) {
    constexpr double width = 640, height = 400, left = 60, right = 20, top = 40, bottom = 50;
    static constexpr const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

    std::size_t k_min = 0, k_max = 1;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& e : s.entries) {
            k_min = first ? e.k : std::min(k_min, e.k);
            k_max = first ? e.k : std::max(k_max, e.k);
            first = false;
        }
    }
    if (k_max == k_min) ++k_max;
    const auto px = [&](double k) {
        return left + (k - static_cast<double>(k_min)) /
                          static_cast<double>(k_max - k_min) * (width - left - right);
    };
    const auto py = [&](double auc) { return top + (1.0 - auc) * (height - top - bottom); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << xml_escape(title) << "</text>\n";
    out << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << left << "\" y1=\"" << py(0) << "\" x2=\"" << width - right
        << "\" y2=\"" << py(0) << "\"/>\n"
        << "<line x1=\"" << left << "\" y1=\"" << py(0) << "\" x2=\"" << left << "\" y2=\""
        << py(1) << "\"/>\n</g>\n";
    for (int tick = 0; tick <= 10; tick += 2) {
        const double auc = tick / 10.0;
        out << "<text x=\"" << left - 8 << "\" y=\"" << fixed(py(auc) + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">" << fixed(auc).substr(0, 3) << "</text>\n";
    }
    for (std::size_t k = k_min; k <= k_max; ++k) {
        out << "<text x=\"" << fixed(px(static_cast<double>(k))) << "\" y=\"" << py(0) + 16
            << "\" text-anchor=\"middle\" font-size=\"11\">" << k << "</text>\n";
    }
    out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-size=\"12\">k</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = colors[s % std::size(colors)];
        out << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < series[s].entries.size(); ++i) {
            const auto& e = series[s].entries[i];
            out << (i ? " " : "") << fixed(px(static_cast<double>(e.k))) << ','
                << fixed(py(e.auc));
        }
        out << "\"/>\n";
        out << "<text x=\"" << width - right - 4 << "\" y=\"" << fixed(py(0) - 12 - 16.0 * s)
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">"
            << xml_escape(series[s].name) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace hypolo
