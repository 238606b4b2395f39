#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dbc/dbscan.hpp"
#include "dbc/types.hpp"

namespace dbc {

enum class ClusterShape { uniform_ball, gaussian };

// Synthetic data: `clusters` blobs whose centers sit on corners of an inset
// hypercube ({150, 850}^dim, pairwise >= 700 apart) inside the side-1000
// cube, plus uniform noise in the clusters' bounding box expanded by 10% per
// side. Noise count is round(noise_fraction * clusters * per_cluster).
struct DatasetSpec {
    int dim = 2;
    int clusters = 4;
    int per_cluster = 1000;
    ClusterShape shape = ClusterShape::uniform_ball;
    double radius = 300.0;  // uniform_ball
    double sigma = 100.0;   // gaussian
    double noise_fraction = 0.05;
    uint64_t seed = 0;

    // the scale entering the density formula (radius or sigma)
    double scale() const { return shape == ClusterShape::uniform_ball ? radius : sigma; }
    void validate() const;
};

struct Dataset {
    PointSet points;
    std::vector<int> labels;  // generating cluster id, -1 for noise
};

Dataset generate(const DatasetSpec& spec);

// density = n * (eps / r)^d: the expected number of points within distance
// eps of a cluster point (the paper's verbal definition; its printed formula
// inverts the ratio and is treated as a typo here).
double density(double n_per_cluster, double r, double eps, int d);
// invert density for eps
double eps_for_density(double n_per_cluster, double r, double dens, int d);

enum class BenchAlgorithm { new_strip, new_grid, original };

const char* algorithm_name(BenchAlgorithm a);

struct RunRecord {
    std::string algorithm;
    int dim = 0;
    int n = 0;
    double eps = 0.0;
    int min_pts = 4;
    double delta = 0.0;  // 0 = not applicable
    double wall_ms = 0.0;
    uint64_t dist_comps = 0;
    uint64_t seeds = 0;
    uint64_t largest[4] = {0, 0, 0, 0};  // sizes of the 4 largest clusters
    uint64_t dataset_seed = 0;
    std::string fingerprint;
};

// one record per (eps, algorithm); the dataset is generated once
std::vector<RunRecord> sweep_eps(const DatasetSpec& spec, const std::vector<double>& eps_values,
                                 const std::vector<BenchAlgorithm>& algorithms, int min_pts = 4);

// fixed-density sweep: per_cluster values ascending, eps solved from the
// density equation for each size
std::vector<RunRecord> sweep_size(const DatasetSpec& spec_template,
                                  const std::vector<int>& per_cluster_sizes, double fixed_density,
                                  const std::vector<BenchAlgorithm>& algorithms, int min_pts = 4);

// header: algorithm,dim,n,eps,min_pts,delta,wall_ms,dist_comps,seeds,c1,c2,c3,c4,dataset_seed
void write_csv(std::ostream& os, const std::vector<RunRecord>& records);

uint64_t fingerprint(const PointSet& ps);

}  // namespace dbc
