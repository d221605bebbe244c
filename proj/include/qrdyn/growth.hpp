#pragma once

#include <vector>

#include "qrdyn/dynmap.hpp"
#include "qrdyn/vec3.hpp"

namespace qrdyn {

struct GrowthCurve {
    std::vector<double> radii;
    std::vector<double> mhat_max;  // lower bounds of M(r, f)
    std::vector<double> mhat_min;  // upper bounds of m(r, f)
};

struct SphereExtremum {
    double value;
    Direction dir;
};

/// Lower bound of the maximum modulus on |x| = r: prefix-nested
/// low-discrepancy sampling followed by pattern-search refinement from the
/// five best samples (angular step 0.2 halving, refine_steps rounds).
/// Enlarging n never lowers the bound. Overflow in f is rethrown as a
/// range error naming the offending point.
SphereExtremum max_modulus(const DynMap& f, double r, std::size_t n = 10000,
                           int refine_steps = 20);

/// Upper bound of the minimum modulus (mirror of max_modulus).
SphereExtremum min_modulus(const DynMap& f, double r, std::size_t n = 10000,
                           int refine_steps = 20);

GrowthCurve growth_curve(const DynMap& f, const std::vector<double>& radii,
                         std::size_t n = 10000, int refine_steps = 20);

/// Order of growth: twice the least-squares slope of log log Mhat(r) against
/// log r. Throws if any Mhat <= e.
double order_estimate(const DynMap& f, const std::vector<double>& radii,
                      std::size_t n = 10000, int refine_steps = 20);

struct MinModulusEntry {
    double r;
    double big_m;       // Mhat(r)
    bool holds;         // some grid s in [r, alpha r] has mhat(s) >= delta Mhat(r)
    double s_witness;   // first such s (0 when !holds)
    double margin;      // max over the grid of mhat(s) / (delta Mhat(r))
};

struct MinModulusReport {
    double alpha, delta;
    std::vector<MinModulusEntry> entries;
    std::vector<double> holds_at;
    std::vector<double> fails_at;
};

/// Checks, per radius, whether some s in an s_grid-point grid of [r, alpha r]
/// has mhat(s) >= delta * Mhat(r). mhat is an upper bound of m, so a reported
/// failure is conservative; the margin quantifies it.
MinModulusReport min_modulus_condition(const DynMap& f, double alpha, double delta,
                                       const std::vector<double>& radii, int s_grid = 12,
                                       std::size_t n = 10000, int refine_steps = 20);

struct PolyProbeReport {
    int m;
    double sup_ratio;                  // max over radii of mhat(r) / r^m
    std::vector<double> ratios;
    std::string trend;                 // increasing / decreasing / flat over the last 3
};

/// Probes limsup m(r, f) / r^m by the sampled ratios over the given radii.
PolyProbeReport poly_min_modulus_probe(const DynMap& f, int m, const std::vector<double>& radii,
                                       std::size_t n = 10000, int refine_steps = 20);

}  // namespace qrdyn
