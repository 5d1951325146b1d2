#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "goalg/algebra.hpp"

namespace goalg {

// Gaussian evolution acting as sigma -> M sigma M^T + 2D, d -> M d + v.
struct ChannelRep {
    Mat M;
    Mat D;
    Vec v;

    int n() const { return static_cast<int>(v.size() / 2); }
    static ChannelRep identity(int n);
    bool is_finite() const;
};

// (M2 M1, M2 D1 M2^T + D2, M2 v1 + v2): apply e1 first, then e2.
ChannelRep compose(const ChannelRep& e2, const ChannelRep& e1);

struct EvolveOptions {
    // Permit t < 0. The result is generally not a physical channel.
    bool unsafe_inverse = false;
};

ChannelRep evolve_const(const GoElement& g, double t, const EvolveOptions& opts = {});

struct Segment {
    double duration;
    GoElement generator;
};

// Time-dependent generator sampled by callback on [0, t_end].
struct SampledGenerator {
    int n = 1;
    std::function<GoElement(double)> at;
    double t_end = 0.0;
    double step = 1e-3;
};

using Schedule = std::variant<std::vector<Segment>, SampledGenerator>;

struct ScheduleResult {
    ChannelRep channel;
    // Richardson estimate |y_h - y_{h/2}| / 15 in max-norm; 0 for closed-form segments.
    double error_estimate = 0.0;
    int steps = 0;
};

ScheduleResult evolve_schedule(const Schedule& s);
// Segments only; an empty list yields the identity on n modes.
ChannelRep evolve_segments(const std::vector<Segment>& segs, int n);

// Fixed-step RK4 on dM = G M, dD = G_D + G D + D G^T, dv = G v + G_v.
ChannelRep rk4(const SampledGenerator& s, int steps);

ChannelRep partial_transpose_channel(int n, int mode);

double max_abs_diff(const ChannelRep& a, const ChannelRep& b);

}  // namespace goalg
