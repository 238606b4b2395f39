// dbc: density-based clustering toolkit
//
// subcommands:
//   cluster    exact DBSCAN / DBSCAN* via the box graph
//   hierarchy  HDBSCAN dendrogram (exact planar, or delta-approximate)
//   gen        synthetic benchmark datasets
//   bench      instrumented sweeps driven by a JSON config

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "dbc/approx.hpp"
#include "dbc/bench.hpp"
#include "dbc/dbscan.hpp"
#include "dbc/errors.hpp"
#include "dbc/geometry.hpp"
#include "dbc/hdbscan.hpp"
#include "dbc/io.hpp"

namespace {

using nlohmann::json;

dbc::InputFormat parse_format(const std::string& f) {
    if (f == "csv") return dbc::InputFormat::csv;
    if (f == "ws") return dbc::InputFormat::whitespace;
    throw dbc::param_error("unknown format: " + f);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw dbc::param_error("cannot open output file: " + path);
    return os;
}

struct ClusterOpts {
    std::string input, output, variant = "dbscan", mode = "strip", pair_check = "brute",
                format = "csv";
    double eps = 0.0;
    int min_pts = 4;
    uint64_t seed = 0;
};

int cmd_cluster(const ClusterOpts& o) {
    dbc::PointSet ps = dbc::read_points_file(o.input, parse_format(o.format));
    dbc::Params params;
    params.eps = o.eps;
    params.min_pts = o.min_pts;
    if (o.variant == "dbscan")
        params.variant = dbc::Variant::dbscan;
    else if (o.variant == "dbscan-star")
        params.variant = dbc::Variant::dbscan_star;
    else
        throw dbc::param_error("unknown variant: " + o.variant);
    dbc::BoxMode mode;
    if (o.mode == "strip")
        mode = dbc::BoxMode::strip;
    else if (o.mode == "grid")
        mode = dbc::BoxMode::grid;
    else
        throw dbc::param_error("unknown mode: " + o.mode);
    dbc::PairCheck pc;
    if (o.pair_check == "delaunay")
        pc = dbc::PairCheck::delaunay;
    else if (o.pair_check == "brute")
        pc = dbc::PairCheck::randomized_brute;
    else
        throw dbc::param_error("unknown pair-check: " + o.pair_check);

    dbc::Meter meter;
    meter.rng_seed = o.seed;
    dbc::Labeling lab = dbc::dbscan(ps, params, mode, pc, meter);
    if (o.output.empty()) {
        dbc::write_labeling(std::cout, lab);
    } else {
        auto os = open_out(o.output);
        dbc::write_labeling(os, lab);
    }
    return 0;
}

struct HierarchyOpts {
    std::string input, output, format = "csv";
    int min_pts = 4;
    double delta = 0.0;
    std::vector<double> cuts;
};

int cmd_hierarchy(const HierarchyOpts& o) {
    dbc::PointSet ps = dbc::read_points_file(o.input, parse_format(o.format));
    dbc::Dendrogram dg;
    if (o.delta > 0.0) {
        dbc::ApproxParams ap(o.delta);
        if (ap.large_theta)
            std::cerr << "warning: delta = " << o.delta
                      << " gives a cone angle outside the proof regime (2 sin t >= cos^2 t)\n";
        dg = dbc::approx_hdbscan(ps, o.min_pts, ap);
    } else {
        dg = dbc::hdbscan(ps, o.min_pts);
    }
    std::string body = dbc::serialize_dendrogram(dg);
    if (o.output.empty()) {
        std::cout << body;
    } else {
        auto os = open_out(o.output);
        os << body;
    }
    if (!o.cuts.empty() && o.output.empty())
        throw dbc::param_error("--cut requires --output (cut files take its name)");
    for (double cut : o.cuts) {
        dbc::Labeling lab = dbc::extract_at(dg, cut, ps, o.min_pts);
        auto os = open_out(o.output + ".cut" + dbc::format_double(cut));
        dbc::write_labeling(os, lab);
    }
    return 0;
}

struct GenOpts {
    std::string output, shape = "uniform";
    int dim = 2, clusters = 4, per_cluster = 1000;
    double radius = 300.0, sigma = 100.0, noise = 0.05;
    uint64_t seed = 0;
};

int cmd_gen(const GenOpts& o) {
    dbc::DatasetSpec spec;
    spec.dim = o.dim;
    spec.clusters = o.clusters;
    spec.per_cluster = o.per_cluster;
    if (o.shape == "uniform")
        spec.shape = dbc::ClusterShape::uniform_ball;
    else if (o.shape == "gaussian")
        spec.shape = dbc::ClusterShape::gaussian;
    else
        throw dbc::param_error("unknown shape: " + o.shape);
    spec.radius = o.radius;
    spec.sigma = o.sigma;
    spec.noise_fraction = o.noise;
    spec.seed = o.seed;

    dbc::Dataset data = dbc::generate(spec);
    auto os = open_out(o.output);
    for (int i = 0; i < data.points.size(); ++i) {
        for (int k = 0; k < spec.dim; ++k) {
            if (k) os << ',';
            os << dbc::format_double(data.points.coord(i, k));
        }
        os << '\n';
    }
    auto ls = open_out(o.output + ".labels");
    for (int lbl : data.labels) ls << lbl << '\n';
    return 0;
}

int cmd_bench(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw dbc::param_error("cannot open config: " + config_path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw dbc::param_error(std::string("bad config: ") + e.what());
    }

    dbc::DatasetSpec spec;
    const json& js = cfg.at("spec");
    spec.dim = js.value("dim", 2);
    spec.clusters = js.value("clusters", 4);
    spec.per_cluster = js.value("per_cluster", 1000);
    std::string shape = js.value("shape", "uniform");
    if (shape == "uniform")
        spec.shape = dbc::ClusterShape::uniform_ball;
    else if (shape == "gaussian")
        spec.shape = dbc::ClusterShape::gaussian;
    else
        throw dbc::param_error("bad config: unknown shape " + shape);
    spec.radius = js.value("radius", 300.0);
    spec.sigma = js.value("sigma", 100.0);
    spec.noise_fraction = js.value("noise_fraction", 0.05);
    spec.seed = js.value("seed", 0ULL);

    int min_pts = cfg.value("min_pts", 4);
    std::vector<dbc::BenchAlgorithm> algos;
    for (const auto& a : cfg.at("algorithms")) {
        std::string name = a.get<std::string>();
        if (name == "new_strip")
            algos.push_back(dbc::BenchAlgorithm::new_strip);
        else if (name == "new_grid")
            algos.push_back(dbc::BenchAlgorithm::new_grid);
        else if (name == "original")
            algos.push_back(dbc::BenchAlgorithm::original);
        else
            throw dbc::param_error("bad config: unknown algorithm " + name);
    }

    const json& sw = cfg.at("sweep");
    std::string type = sw.at("type").get<std::string>();
    std::vector<dbc::RunRecord> records;
    if (type == "eps") {
        std::vector<double> eps = sw.at("eps_values").get<std::vector<double>>();
        records = dbc::sweep_eps(spec, eps, algos, min_pts);
    } else if (type == "size") {
        std::vector<int> sizes = sw.at("per_cluster").get<std::vector<int>>();
        double dens = sw.at("density").get<double>();
        records = dbc::sweep_size(spec, sizes, dens, algos, min_pts);
    } else {
        throw dbc::param_error("bad config: unknown sweep type " + type);
    }

    std::string out_path = cfg.value("output", std::string("bench.csv"));
    {
        auto os = open_out(out_path);
        dbc::write_csv(os, records);
    }

    // summary: per-algorithm density-trend statistics over the sweep rows
    std::cout << "algorithm      rows  dist_comps(max/min)  seeds~density\n";
    for (dbc::BenchAlgorithm a : algos) {
        const char* name = dbc::algorithm_name(a);
        std::vector<double> dens, seeds, comps;
        for (const auto& r : records) {
            if (r.algorithm != name) continue;
            double pc = static_cast<double>(r.n) /
                        (spec.clusters * (1.0 + spec.noise_fraction));
            dens.push_back(dbc::density(pc, spec.scale(), r.eps, spec.dim));
            seeds.push_back(static_cast<double>(r.seeds));
            comps.push_back(static_cast<double>(r.dist_comps));
        }
        double cmin = *std::min_element(comps.begin(), comps.end());
        double cmax = *std::max_element(comps.begin(), comps.end());
        std::printf("%-14s %4zu  %-19.3f", name, comps.size(), cmax / std::max(cmin, 1.0));
        if (a == dbc::BenchAlgorithm::original && dens.size() >= 3) {
            // least-squares seeds = a*density + b; doubling factor at the median
            double sx = 0, sy = 0, sxx = 0, sxy = 0, n = dens.size();
            for (size_t i = 0; i < dens.size(); ++i) {
                sx += dens[i];
                sy += seeds[i];
                sxx += dens[i] * dens[i];
                sxy += dens[i] * seeds[i];
            }
            double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            double icept = (sy - slope * sx) / n;
            double ybar = sy / n, ssr = 0, sst = 0;
            for (size_t i = 0; i < dens.size(); ++i) {
                double fit = slope * dens[i] + icept;
                ssr += (seeds[i] - fit) * (seeds[i] - fit);
                sst += (seeds[i] - ybar) * (seeds[i] - ybar);
            }
            double r2 = sst > 0 ? 1.0 - ssr / sst : 1.0;
            std::vector<double> sorted = dens;
            std::sort(sorted.begin(), sorted.end());
            double mid = sorted[sorted.size() / 2];
            double factor = (slope * 2 * mid + icept) / (slope * mid + icept);
            std::printf("R2=%.4f doubling=%.3f", r2, factor);
        }
        std::printf("\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"density-based clustering toolkit"};
    app.require_subcommand(1);

    ClusterOpts co;
    CLI::App* cluster = app.add_subcommand("cluster", "DBSCAN / DBSCAN* clustering");
    cluster->add_option("input", co.input, "points file")->required();
    cluster->add_option("--eps", co.eps, "neighborhood radius")->required();
    cluster->add_option("--min-pts", co.min_pts, "density threshold (default 4)");
    cluster->add_option("--variant", co.variant, "dbscan | dbscan-star");
    cluster->add_option("--mode", co.mode, "strip | grid");
    cluster->add_option("--pair-check", co.pair_check, "delaunay | brute");
    cluster->add_option("--format", co.format, "csv | ws");
    cluster->add_option("--seed", co.seed, "RNG seed for the randomized pair check");
    cluster->add_option("--output", co.output, "output file (default stdout)");

    HierarchyOpts ho;
    CLI::App* hier = app.add_subcommand("hierarchy", "HDBSCAN dendrogram");
    hier->add_option("input", ho.input, "points file")->required();
    hier->add_option("--min-pts", ho.min_pts, "density threshold (default 4)");
    hier->add_option("--delta", ho.delta, "approximation parameter (0 = exact)");
    hier->add_option("--cut", ho.cuts, "extract a flat clustering at this eps (repeatable)");
    hier->add_option("--format", ho.format, "csv | ws");
    hier->add_option("--output", ho.output, "output file (default stdout)");

    GenOpts go;
    CLI::App* gen = app.add_subcommand("gen", "generate a synthetic dataset");
    gen->add_option("--dim", go.dim, "dimension (default 2)");
    gen->add_option("--clusters", go.clusters, "cluster count (default 4)");
    gen->add_option("--per-cluster", go.per_cluster, "points per cluster");
    gen->add_option("--shape", go.shape, "uniform | gaussian");
    gen->add_option("--radius", go.radius, "uniform ball radius (default 300)");
    gen->add_option("--sigma", go.sigma, "gaussian sigma (default 100)");
    gen->add_option("--noise", go.noise, "noise fraction (default 0.05)");
    gen->add_option("--seed", go.seed, "RNG seed (default 0)");
    gen->add_option("--output", go.output, "output file")->required();

    std::string bench_config;
    CLI::App* bench = app.add_subcommand("bench", "run an instrumented sweep");
    bench->add_option("config", bench_config, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cluster->parsed()) return cmd_cluster(co);
        if (hier->parsed()) return cmd_hierarchy(ho);
        if (gen->parsed()) return cmd_gen(go);
        if (bench->parsed()) return cmd_bench(bench_config);
    } catch (const dbc::param_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dbc::unsupported_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dbc::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
