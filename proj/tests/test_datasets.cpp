#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hypolo/datasets.hpp"
#include "hypolo/error.hpp"
#include "support.hpp"

using namespace hypolo;

namespace {

Error read_error(const std::string& text) {
    std::istringstream in(text);
    try {
        read_embedding(in);
    } catch (const Error& e) {
        return e;
    }
    FAIL("no error raised");
    return Error(Errc::Io, "");
}

}  // namespace

TEST_CASE("uniform stream is pinned to mt19937_64") {
    NormalStream s(5489);
    for (int i = 1; i < 10000; ++i) s.uniform();
    // 10000th output of a default-seeded mt19937_64, fixed by the standard.
    const double want = (static_cast<double>(9981545732273789042ull >> 11) + 0.5) * 0x1.0p-53;
    CHECK(s.uniform() == want);
}

TEST_CASE("normal pairs use Box-Muller on consecutive uniforms") {
    std::mt19937_64 engine(42);
    NormalStream s(42);
    for (int i = 0; i < 100; ++i) {
        const double u1 = (static_cast<double>(engine() >> 11) + 0.5) / 9007199254740992.0;
        const double u2 = (static_cast<double>(engine() >> 11) + 0.5) / 9007199254740992.0;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const auto [a, b] = s.normal_pair();
        CHECK(a == doctest::Approx(r * std::cos(2 * std::numbers::pi * u2)).epsilon(1e-15));
        CHECK(b == doctest::Approx(r * std::sin(2 * std::numbers::pi * u2)).epsilon(1e-15));
    }
}

TEST_CASE("normal stream moments") {
    NormalStream s(1);
    double sum = 0, sum2 = 0;
    const int n = 200000;
    for (int i = 0; i < n / 2; ++i) {
        const auto [a, b] = s.normal_pair();
        sum += a + b;
        sum2 += a * a + b * b;
    }
    CHECK(std::fabs(sum / n) < 0.01);
    CHECK(std::fabs(sum2 / n - 1.0) < 0.01);
}

TEST_CASE("default toy dataset") {
    const auto data = generate_toy(ToySpec{});
    CHECK(data.size() == 85);
    CHECK(data.count(Label::Outlier) == 5);
    CHECK(data.count(Label::Inlier) == 80);
    CHECK(data.name(0) == "A0");
    CHECK(data.name(40) == "B0");
    CHECK(data.name(84) == "C4");
    for (std::size_t i = 80; i < 85; ++i) CHECK(data.label(i) == Label::Outlier);
    // Cluster means sit near their centres.
    double ax = 0, bx = 0;
    for (std::size_t i = 0; i < 40; ++i) ax += data.point(i).x(), bx += data.point(40 + i).x();
    CHECK(std::fabs(ax / 40 + 0.45) < 0.05);
    CHECK(std::fabs(bx / 40 - 0.45) < 0.05);
}

TEST_CASE("toy generation is deterministic per seed") {
    ToySpec spec;
    spec.seed = 99;
    const auto a = generate_toy(spec);
    const auto b = generate_toy(spec);
    CHECK(a.points() == b.points());
    spec.seed = 100;
    CHECK(generate_toy(spec).points() != a.points());
}

TEST_CASE("spread zero collapses the clusters") {
    ToySpec spec;
    spec.spread = 0.0;
    const auto data = generate_toy(spec);
    for (std::size_t i = 0; i < 40; ++i) CHECK(data.point(i) == spec.center_a);
    for (std::size_t i = 40; i < 80; ++i) CHECK(data.point(i) == spec.center_b);
}

TEST_CASE("wide clusters near the rim are resampled into the disk") {
    ToySpec spec;
    spec.center_a = validate_point(-0.9, 0.0);
    spec.center_b = validate_point(0.0, 0.9);
    spec.spread = 0.2;
    const auto data = generate_toy(spec);
    CHECK(data.size() == 85);
    for (const auto& p : data.points()) CHECK(std::sqrt(p.norm2()) < 1.0 - kBoundaryMargin);
}

TEST_CASE("invalid toy specs") {
    for (double spread : std::vector<double>{-0.1, 0.6, std::nan(""), INFINITY}) {
        ToySpec spec;
        spec.spread = spread;
        try {
            generate_toy(spec);
            FAIL("expected InvalidSpec");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::InvalidSpec);
        }
    }
    ToySpec spec;
    spec.points_per_cluster = -1;
    CHECK_THROWS_AS(generate_toy(spec), Error);
    spec.points_per_cluster = 10;
    CHECK(generate_toy(spec).size() == 25);
}

TEST_CASE("read a minimal embedding") {
    std::istringstream in("0\t0.1\t0.2\tinlier\tcat\n1\t-0.3\t0.0\toutlier\tdog\n");
    const auto data = read_embedding(in);
    CHECK(data.size() == 2);
    CHECK(data.point(0).x() == 0.1);
    CHECK(data.label(1) == Label::Outlier);
    CHECK(data.name(0) == "cat");
}

TEST_CASE("header, CRLF, three columns, out of order ids") {
    std::istringstream in("id\tx\ty\r\n1\t0.5\t0\r\n0\t0\t0.25\r\n");
    const auto data = read_embedding(in);
    CHECK(data.size() == 2);
    CHECK(data.point(0).y() == 0.25);
    CHECK_FALSE(data.has_labels());
    CHECK_FALSE(data.has_names());
    CHECK_THROWS_AS(data.outlier_mask(), Error);
}

TEST_CASE("ingestion errors carry line numbers") {
    auto e = read_error("0\t0.1\t0.2\n1\t1.5\t0\n");
    CHECK(e.code() == Errc::OutsideDisk);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);

    e = read_error("0\t0.1\n");
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);

    e = read_error("0\t0.1\t0.2\n1\tabc\t0\n");
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);

    e = read_error("0\t0.1\t0.2\n0\t0.2\t0.2\n");
    CHECK(e.code() == Errc::DuplicateId);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);

    e = read_error("0\t0.1\tnan\n");
    CHECK(e.code() == Errc::NonFinite);

    e = read_error("0\t0.1\t0.2\tmaybe\n");
    CHECK(e.code() == Errc::ParseError);

    e = read_error("0\t0.1\t0.2\n2\t0.2\t0.2\n");
    CHECK(e.code() == Errc::ParseError);
}

TEST_CASE("save then load round trips exactly") {
    ToySpec spec;
    spec.seed = 5;
    const auto data = generate_toy(spec);
    std::ostringstream first;
    write_embedding(first, data);
    std::istringstream in(first.str());
    const auto back = read_embedding(in);
    CHECK(back.points() == data.points());
    CHECK(back.labels() == data.labels());
    std::ostringstream second;
    write_embedding(second, back);
    CHECK(second.str() == first.str());

    support::TempDir dir;
    save_embedding(dir / "toy.tsv", data);
    CHECK(load_embedding(dir / "toy.tsv").points() == data.points());
    CHECK_THROWS_AS(load_embedding(dir / "missing.tsv"), Error);
}

TEST_CASE("1180 inliers plus 11 outliers load as 1191 points") {
    std::ostringstream text;
    std::mt19937_64 rng(1180);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int i = 0; i < 1191; ++i) {
        text << i << '\t' << u(rng) << '\t' << u(rng) << '\t' << (i < 1180 ? "inlier" : "outlier")
             << "\tsynset" << i << '\n';
    }
    std::istringstream in(text.str());
    const auto data = read_embedding(in);
    CHECK(data.size() == 1191);
    CHECK(data.count(Label::Outlier) == 11);
}

TEST_CASE("shipped mammals fixture") {
    const auto data = load_embedding(support::data_file("mammals.tsv"));
    CHECK(data.count(Label::Outlier) == 11);
    CHECK(data.count(Label::Inlier) == data.size() - 11);
    CHECK(data.name(0).size() > 0);
}
