#include "hypolo/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hypolo/error.hpp"
#include "hypolo/hgauss.hpp"
#include "hypolo/special.hpp"
#include "parallel.hpp"

namespace hypolo {

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::Hlof: return "hlof";
        case Method::Hloop: return "hloop";
        case Method::Lof: return "lof";
        case Method::Loop: return "loop";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    if (name == "hlof") return Method::Hlof;
    if (name == "hloop") return Method::Hloop;
    if (name == "lof") return Method::Lof;
    if (name == "loop") return Method::Loop;
    throw Error(Errc::InvalidConfig, "unknown method '" + std::string(name) + "'");
}

Metric default_metric(Method method) noexcept {
    return method == Method::Hlof || method == Method::Hloop ? Metric::hyperbolic()
                                                             : Metric::euclidean();
}

bool is_probabilistic(Method method) noexcept {
    return method == Method::Hloop || method == Method::Loop;
}

DetectorConfig normalized(DetectorConfig config) {
    if (config.k == 0) throw Error(Errc::InvalidConfig, "k must be positive");
    if (is_probabilistic(config.method)) {
        if (!config.phi) config.phi = kDefaultPhi;
        if (!(*config.phi > 0.0 && *config.phi < 1.0)) {
            std::ostringstream msg;
            msg << "phi must lie in (0, 1), got " << *config.phi;
            throw Error(Errc::InvalidConfig, msg.str());
        }
    } else if (config.phi) {
        throw Error(Errc::InvalidConfig,
                    "phi only applies to hloop/loop, not " + std::string(to_string(config.method)));
    }
    return config;
}

double euclidean_lambda(double phi) { return special::kSqrt2 * special::erfinv(phi); }

Significance hyperbolic_significance(double phi) {
    return [phi](double sigma_r) { return lambda_h(phi, sigma_r); };
}

Significance euclidean_significance(double phi) {
    return [lambda = euclidean_lambda(phi)](double) { return lambda; };
}

ScoreReport lof_scores(const NeighborhoodIndex& index, const DetectorConfig& config) {
    const std::size_t n = index.size();
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<double> lrd(n);
    detail::parallel_for(n, config.threads, [&](std::size_t p) {
        double sum = 0.0;
        const auto list = index.neighbors(p);
        for (const auto& o : list) sum += std::max(index.k_distance(o.id), o.distance);
        lrd[p] = sum > 0.0 ? static_cast<double>(list.size()) / sum : inf;
    });

    ScoreReport report;
    report.config = config;
    report.score.resize(n);
    report.degenerate.assign(n, false);
    for (std::size_t p = 0; p < n; ++p) {
        if (std::isinf(lrd[p])) {
            report.degenerate[p] = true;
            report.score[p] = 1.0;
            continue;
        }
        const auto list = index.neighbors(p);
        double ratio = 0.0;
        for (const auto& o : list) ratio += lrd[o.id] / lrd[p];
        report.score[p] = ratio / static_cast<double>(list.size());
    }
    return report;
}

ScoreReport loop_scores(const NeighborhoodIndex& index, const Significance& significance,
                        const DetectorConfig& config) {
    const std::size_t n = index.size();
    ScoreReport report;
    report.config = config;
    report.sigma_r.resize(n);
    report.lambda.assign(n, 0.0);
    report.pdist.assign(n, 0.0);
    report.plof.assign(n, 0.0);
    report.score.assign(n, 0.0);
    report.degenerate.assign(n, false);

    std::vector<char> degenerate(n, 0);
    detail::parallel_for(n, config.threads, [&](std::size_t o) {
        const double sigma = standard_distance(index, o);
        report.sigma_r[o] = sigma;
        if (sigma > 0.0) {
            report.lambda[o] = significance(sigma);
            report.pdist[o] = report.lambda[o] * sigma;
        } else {
            degenerate[o] = 1;
        }
    });

    // Global sums run over sorted terms, so they do not depend on the order
    // of the input points either.
    const auto ordered_sum = [](std::vector<double> terms) {
        std::sort(terms.begin(), terms.end());
        double sum = 0.0;
        for (double t : terms) sum += t;
        return sum;
    };
    std::vector<double> lambdas;
    for (std::size_t o = 0; o < n; ++o) {
        report.degenerate[o] = degenerate[o] != 0;
        if (!degenerate[o]) lambdas.push_back(report.lambda[o]);
    }
    if (lambdas.empty()) return report;
    report.mean_lambda = ordered_sum(lambdas) / static_cast<double>(lambdas.size());

    std::vector<double> plof2(n);
    for (std::size_t o = 0; o < n; ++o) {
        const auto list = index.neighbors(o);
        double expected = 0.0;
        for (const auto& s : list) expected += report.pdist[s.id];
        expected /= static_cast<double>(list.size());
        // A neighbourhood made only of coincident stacks has no finite density
        // to compare against.
        report.plof[o] = expected > 0.0 ? report.pdist[o] / expected - 1.0 : 0.0;
        plof2[o] = report.plof[o] * report.plof[o];
    }
    const double plof2_sum = ordered_sum(std::move(plof2));
    report.nplof = report.mean_lambda * std::sqrt(plof2_sum / static_cast<double>(n));
    if (!(report.nplof > 0.0)) return report;

    constexpr double below_one = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    for (std::size_t o = 0; o < n; ++o) {
        const double p = special::erf(report.plof[o] / (report.nplof * special::kSqrt2));
        report.score[o] = std::clamp(p, 0.0, below_one);
    }
    return report;
}

ScoreReport hlof(const Dataset& data, const DetectorConfig& config) {
    const auto cfg = normalized(config);
    const auto index = build_index(data, cfg.k, cfg.metric, cfg.strategy, cfg.threads);
    return lof_scores(index, cfg);
}

ScoreReport hloop(const Dataset& data, const DetectorConfig& config) {
    const auto cfg = normalized(config);
    const auto index = build_index(data, cfg.k, cfg.metric, cfg.strategy, cfg.threads);
    return loop_scores(index, hyperbolic_significance(*cfg.phi), cfg);
}

ScoreReport loop_euclidean(const Dataset& data, std::size_t k, double phi,
                           IndexStrategy strategy, unsigned threads) {
    DetectorConfig cfg;
    cfg.k = k;
    cfg.phi = phi;
    cfg.metric = Metric::euclidean();
    cfg.method = Method::Loop;
    cfg.strategy = strategy;
    cfg.threads = threads;
    cfg = normalized(cfg);
    const auto index = build_index(data, cfg.k, cfg.metric, cfg.strategy, cfg.threads);
    return loop_scores(index, euclidean_significance(phi), cfg);
}

ScoreReport detect(const Dataset& data, const DetectorConfig& config) {
    switch (config.method) {
        case Method::Hlof:
        case Method::Lof: return hlof(data, config);
        case Method::Hloop: return hloop(data, config);
        case Method::Loop: {
            const auto cfg = normalized(config);
            const auto index = build_index(data, cfg.k, cfg.metric, cfg.strategy, cfg.threads);
            return loop_scores(index, euclidean_significance(*cfg.phi), cfg);
        }
    }
    throw Error(Errc::InvalidConfig, "unknown method");
}

}  // namespace hypolo
