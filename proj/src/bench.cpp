#include "dbc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "dbc/errors.hpp"
#include "dbc/rng.hpp"

namespace dbc {

void DatasetSpec::validate() const {
    if (dim < 2) throw param_error("DatasetSpec: dim must be >= 2");
    if (clusters < 1) throw param_error("DatasetSpec: clusters must be >= 1");
    if (clusters > (1 << dim)) throw param_error("DatasetSpec: more clusters than cube corners");
    if (per_cluster < 1) throw param_error("DatasetSpec: per_cluster must be >= 1");
    if (!(noise_fraction >= 0.0 && noise_fraction < 1.0))
        throw param_error("DatasetSpec: noise_fraction must lie in [0, 1)");
    if (!(radius > 0) || !(sigma > 0)) throw param_error("DatasetSpec: scale must be positive");
}

Dataset generate(const DatasetSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    int d = spec.dim;

    // cluster centers on corners of the inset hypercube {150, 850}^d
    std::vector<std::vector<double>> centers;
    for (int c = 0; c < spec.clusters; ++c) {
        std::vector<double> ctr(d);
        for (int k = 0; k < d; ++k) ctr[k] = (c >> k) & 1 ? 850.0 : 150.0;
        centers.push_back(std::move(ctr));
    }

    std::vector<double> coords;
    std::vector<int> labels;
    int total = spec.clusters * spec.per_cluster;
    coords.reserve(static_cast<size_t>(total) * d);
    for (int c = 0; c < spec.clusters; ++c) {
        for (int i = 0; i < spec.per_cluster; ++i) {
            if (spec.shape == ClusterShape::uniform_ball) {
                // rejection from the bounding cube
                while (true) {
                    double s = 0;
                    std::vector<double> off(d);
                    for (int k = 0; k < d; ++k) {
                        off[k] = rng.uniform(-spec.radius, spec.radius);
                        s += off[k] * off[k];
                    }
                    if (s <= spec.radius * spec.radius) {
                        for (int k = 0; k < d; ++k) coords.push_back(centers[c][k] + off[k]);
                        break;
                    }
                }
            } else {
                for (int k = 0; k < d; ++k)
                    coords.push_back(centers[c][k] + spec.sigma * rng.next_gaussian());
            }
            labels.push_back(c);
        }
    }

    // uniform noise in the cluster bounding box expanded by 10% per side
    int noise = static_cast<int>(std::llround(spec.noise_fraction * total));
    if (noise > 0) {
        std::vector<double> lo(d, std::numeric_limits<double>::infinity());
        std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
        for (int i = 0; i < total; ++i)
            for (int k = 0; k < d; ++k) {
                lo[k] = std::min(lo[k], coords[static_cast<size_t>(i) * d + k]);
                hi[k] = std::max(hi[k], coords[static_cast<size_t>(i) * d + k]);
            }
        for (int k = 0; k < d; ++k) {
            double pad = 0.1 * (hi[k] - lo[k]);
            lo[k] -= pad;
            hi[k] += pad;
        }
        for (int i = 0; i < noise; ++i) {
            for (int k = 0; k < d; ++k) coords.push_back(rng.uniform(lo[k], hi[k]));
            labels.push_back(-1);
        }
    }
    return {PointSet(d, std::move(coords)), std::move(labels)};
}

double density(double n_per_cluster, double r, double eps, int d) {
    return n_per_cluster * std::pow(eps / r, d);
}

double eps_for_density(double n_per_cluster, double r, double dens, int d) {
    if (!(dens > 0) || !(n_per_cluster > 0) || !(r > 0))
        throw param_error("eps_for_density: arguments must be positive");
    return r * std::pow(dens / n_per_cluster, 1.0 / d);
}

const char* algorithm_name(BenchAlgorithm a) {
    switch (a) {
        case BenchAlgorithm::new_strip: return "new_strip";
        case BenchAlgorithm::new_grid: return "new_grid";
        case BenchAlgorithm::original: return "original";
    }
    return "?";
}

uint64_t fingerprint(const PointSet& ps) {
    uint64_t h = 1469598103934665603ULL;
    for (double c : ps.raw()) {
        uint64_t bits;
        __builtin_memcpy(&bits, &c, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xff;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

namespace {

RunRecord run_one(const Dataset& data, const DatasetSpec& spec, BenchAlgorithm algo, double eps,
                  int min_pts) {
    Params params{eps, min_pts, Variant::dbscan};
    Meter meter;
    meter.rng_seed = spec.seed;
    auto t0 = std::chrono::steady_clock::now();
    Labeling lab;
    switch (algo) {
        case BenchAlgorithm::new_strip:
            lab = dbscan(data.points, params, BoxMode::strip, PairCheck::randomized_brute, meter);
            break;
        case BenchAlgorithm::new_grid:
            lab = dbscan(data.points, params, BoxMode::grid, PairCheck::randomized_brute, meter);
            break;
        case BenchAlgorithm::original:
            lab = original_dbscan(data.points, params, meter);
            break;
    }
    auto t1 = std::chrono::steady_clock::now();

    RunRecord rec;
    rec.algorithm = algorithm_name(algo);
    rec.dim = spec.dim;
    rec.n = data.points.size();
    rec.eps = eps;
    rec.min_pts = min_pts;
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rec.dist_comps = meter.distance_computations;
    rec.seeds = meter.seeds;
    rec.dataset_seed = spec.seed;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fingerprint(data.points)));
    rec.fingerprint = buf;

    std::vector<uint64_t> sizes(lab.cluster_count(), 0);
    for (int i = 0; i < lab.size(); ++i)
        if (lab.cluster[i] >= 0) ++sizes[lab.cluster[i]];
    std::sort(sizes.rbegin(), sizes.rend());
    for (int k = 0; k < 4 && k < static_cast<int>(sizes.size()); ++k) rec.largest[k] = sizes[k];
    return rec;
}

}  // namespace

std::vector<RunRecord> sweep_eps(const DatasetSpec& spec, const std::vector<double>& eps_values,
                                 const std::vector<BenchAlgorithm>& algorithms, int min_pts) {
    Dataset data = generate(spec);
    std::vector<RunRecord> out;
    for (double eps : eps_values)
        for (BenchAlgorithm a : algorithms) out.push_back(run_one(data, spec, a, eps, min_pts));
    return out;
}

std::vector<RunRecord> sweep_size(const DatasetSpec& spec_template,
                                  const std::vector<int>& per_cluster_sizes, double fixed_density,
                                  const std::vector<BenchAlgorithm>& algorithms, int min_pts) {
    for (size_t i = 1; i < per_cluster_sizes.size(); ++i)
        if (per_cluster_sizes[i] <= per_cluster_sizes[i - 1])
            throw param_error("sweep_size: sizes must be ascending");
    std::vector<RunRecord> out;
    for (int pc : per_cluster_sizes) {
        DatasetSpec spec = spec_template;
        spec.per_cluster = pc;
        double eps = eps_for_density(pc, spec.scale(), fixed_density, spec.dim);
        Dataset data = generate(spec);
        for (BenchAlgorithm a : algorithms) out.push_back(run_one(data, spec, a, eps, min_pts));
    }
    return out;
}

void write_csv(std::ostream& os, const std::vector<RunRecord>& records) {
    os << "algorithm,dim,n,eps,min_pts,delta,wall_ms,dist_comps,seeds,c1,c2,c3,c4,dataset_seed\n";
    char buf[64];
    for (const RunRecord& r : records) {
        os << r.algorithm << ',' << r.dim << ',' << r.n << ',';
        std::snprintf(buf, sizeof(buf), "%.12g", r.eps);
        os << buf << ',' << r.min_pts << ',';
        if (r.delta > 0) {
            std::snprintf(buf, sizeof(buf), "%.6g", r.delta);
            os << buf;
        }
        os << ',';
        std::snprintf(buf, sizeof(buf), "%.6g", r.wall_ms);
        os << buf << ',' << r.dist_comps << ',' << r.seeds << ',' << r.largest[0] << ','
           << r.largest[1] << ',' << r.largest[2] << ',' << r.largest[3] << ',' << r.dataset_seed
           << '\n';
    }
}

}  // namespace dbc
