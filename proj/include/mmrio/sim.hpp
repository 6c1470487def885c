// Synthetic FMCW radar + IMU data generation along ground-truth
// trajectories.
//
// The scan model projects landmarks into the sensor frame, quantizes range
// to the FFT bin width, then perturbs range/azimuth with Gaussian noise.
// Intensity follows reflectivity / r^4 with multiplicative log-normal
// noise. Multipath ghosts appear at extended ranges along the bearing of a
// real detection and carry intensities drawn from the lowest quartile of
// the frame. Everything is a pure function of (inputs, seed).
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mmrio/core.hpp"
#include "mmrio/radar.hpp"

namespace mmrio {

struct ImuSample {
  double t = 0.0;
  Vec3 angular_velocity = Vec3::Zero();     // rad/s, body frame
  Vec3 linear_acceleration = Vec3::Zero();  // m/s^2, body frame, gravity-free
};

struct Landmark {
  Vec3 position = Vec3::Zero();  // world frame, m
  double reflectivity = 1.0;     // >= 0, arbitrary linear units
};

struct EnvironmentNoise {
  double range_sigma = 0.0;      // m
  double azimuth_sigma = 0.0;    // rad
  double intensity_sigma = 0.0;  // log-normal sigma on intensity
};

struct Environment {
  std::vector<Landmark> landmarks;
  double ghost_rate = 0.0;    // probability of injecting a ghost per frame
  double dropout_rate = 0.0;  // per-landmark miss probability per frame
  EnvironmentNoise noise;

  void validate() const {
    if (ghost_rate < 0.0 || ghost_rate > 1.0 || dropout_rate < 0.0 ||
        dropout_rate > 1.0) {
      throw ConfigError("Environment: rates must lie in [0, 1]");
    }
    if (noise.range_sigma < 0.0 || noise.azimuth_sigma < 0.0 ||
        noise.intensity_sigma < 0.0) {
      throw ConfigError("Environment: noise sigmas must be >= 0");
    }
    for (const Landmark& lm : this->landmarks) {
      if (!lm.position.allFinite() || lm.reflectivity < 0.0) {
        throw ConfigError("Environment: bad landmark");
      }
    }
  }
};

namespace detail {

inline double gauss(std::mt19937_64& rng, double sigma) {
  if (sigma <= 0.0) return 0.0;
  std::normal_distribution<double> n(0.0, sigma);
  return n(rng);
}

}  // namespace detail

/// Synthesizes one radar frame. Deterministic given rng_seed.
///
/// Each landmark inside the FoV and range limit (and not dropped out)
/// produces a point whose range is quantized to cfg.range_resolution and
/// then perturbed; radial velocity is the line-of-sight projection of the
/// sensor velocity (closing range is negative), clamped to the sensor
/// limit. The frame is truncated to the max_points_per_frame strongest
/// returns, sorted by decreasing intensity.
inline RadarScan simulate_scan(const Environment& env, const Pose& sensor_pose,
                               const Vec3& sensor_velocity,
                               const RadarConfig& cfg, uint64_t rng_seed,
                               double t = 0.0) {
  env.validate();
  cfg.validate();
  detail::require_unit(sensor_pose.orientation, "simulate_scan");

  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Pose world_to_sensor = pose_inverse(sensor_pose);

  RadarScan scan;
  scan.t = t;
  for (const Landmark& lm : env.landmarks) {
    const Vec3 p_s = transform_point(world_to_sensor, lm.position);
    const double r = p_s.norm();
    if (r < 1e-6 || r > cfg.max_range) continue;
    const double azimuth = std::atan2(p_s.y(), p_s.x());
    if (std::abs(azimuth) > 0.5 * cfg.fov_azimuth) continue;
    if (env.dropout_rate > 0.0 && unit(rng) < env.dropout_rate) continue;

    // FFT-bin discretization first, phase jitter after.
    const double r_q = std::round(r / cfg.range_resolution) * cfg.range_resolution;
    const double r_n = r_q + detail::gauss(rng, env.noise.range_sigma);
    const double az_n = azimuth + detail::gauss(rng, env.noise.azimuth_sigma);
    const double elevation = std::asin(std::clamp(p_s.z() / r, -1.0, 1.0));

    RadarPoint pt;
    pt.position = Vec3(r_n * std::cos(elevation) * std::cos(az_n),
                       r_n * std::cos(elevation) * std::sin(az_n),
                       r_n * std::sin(elevation));
    pt.intensity = lm.reflectivity / (r * r * r * r) *
                   std::exp(detail::gauss(rng, env.noise.intensity_sigma));
    const Vec3 los_world = (lm.position - sensor_pose.position) / r;
    pt.radial_velocity = std::clamp(-los_world.dot(sensor_velocity),
                                    -cfg.max_radial_velocity,
                                    cfg.max_radial_velocity);
    scan.points.push_back(pt);
  }

  // Multipath ghost: extended range along the bearing of a real return,
  // intensity from the lowest quartile of the frame.
  if (!scan.points.empty() && env.ghost_rate > 0.0 && unit(rng) < env.ghost_rate) {
    const size_t src = static_cast<size_t>(unit(rng) * static_cast<double>(scan.points.size())) %
                       scan.points.size();
    const RadarPoint& real = scan.points[src];
    const double r_real = real.position.norm();
    if (r_real > 1e-9) {
      std::vector<double> intensities;
      intensities.reserve(scan.points.size());
      for (const RadarPoint& p : scan.points) intensities.push_back(p.intensity);
      std::nth_element(intensities.begin(),
                       intensities.begin() + intensities.size() / 4,
                       intensities.end());
      const double q25 = intensities[intensities.size() / 4];

      std::uniform_real_distribution<double> ext(1.3, 2.0);
      const double r_ghost = std::min(ext(rng) * r_real, cfg.max_range);
      RadarPoint ghost;
      ghost.position = real.position * (r_ghost / r_real);
      ghost.intensity = unit(rng) * q25;
      ghost.radial_velocity = real.radial_velocity;
      scan.points.push_back(ghost);
    }
  }

  std::stable_sort(scan.points.begin(), scan.points.end(),
                   [](const RadarPoint& a, const RadarPoint& b) {
                     return a.intensity > b.intensity;
                   });
  if (static_cast<int>(scan.points.size()) > cfg.max_points_per_frame) {
    scan.points.resize(static_cast<size_t>(cfg.max_points_per_frame));
  }
  return scan;
}

struct ImuNoise {
  Vec3 gyro_sigma = Vec3::Zero();   // rad/s per sample
  Vec3 accel_sigma = Vec3::Zero();  // m/s^2 per sample
};

/// Samples an IMU stream along a ground-truth trajectory: body rates by
/// finite differences of orientation, accelerations by differencing knot
/// velocities (gravity-free), plus constant gyro bias and white noise.
/// Deterministic given rng_seed.
inline std::vector<ImuSample> simulate_imu(const Trajectory& traj, double rate,
                                           const Vec3& gyro_bias,
                                           const ImuNoise& noise,
                                           uint64_t rng_seed) {
  if (traj.size() < 2) {
    throw DataError("simulate_imu: need at least 2 trajectory poses");
  }
  for (size_t i = 1; i < traj.size(); ++i) {
    if (!(traj[i].t > traj[i - 1].t)) {
      throw DataError("simulate_imu: timestamps must be strictly increasing");
    }
  }
  if (rate <= 0.0) throw ConfigError("simulate_imu: rate must be > 0");

  const size_t n = traj.size();
  // Per-interval body rates and chord velocities.
  std::vector<Vec3> omega(n - 1), chord(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    const double dt = traj[i + 1].t - traj[i].t;
    const Quaternion dq =
        traj[i].value.orientation.conjugate() * traj[i + 1].value.orientation;
    omega[i] = dq.log() / dt;
    chord[i] = (traj[i + 1].value.position - traj[i].value.position) / dt;
  }
  // Knot accelerations from chord velocity differences.
  std::vector<Vec3> accel(n, Vec3::Zero());
  for (size_t i = 1; i + 1 < n; ++i) {
    accel[i] = (chord[i] - chord[i - 1]) / (0.5 * (traj[i + 1].t - traj[i - 1].t));
  }
  if (n > 2) {
    accel[0] = accel[1];
    accel[n - 1] = accel[n - 2];
  }

  std::mt19937_64 rng(rng_seed);
  std::vector<ImuSample> out;
  const double t0 = traj.front().t, t1 = traj.back().t;
  const double dt_s = 1.0 / rate;
  size_t seg = 0;
  for (double t = t0; t <= t1 + 1e-12; t += dt_s) {
    while (seg + 2 < n && traj[seg + 1].t <= t) ++seg;
    const double span = traj[seg + 1].t - traj[seg].t;
    const double frac = std::clamp((t - traj[seg].t) / span, 0.0, 1.0);
    const Quaternion q =
        (traj[seg].value.orientation * Quaternion::exp(omega[seg] * (t - traj[seg].t)))
            .normalized();
    const Vec3 a_world = (1.0 - frac) * accel[seg] + frac * accel[seg + 1];

    ImuSample s;
    s.t = t;
    s.angular_velocity =
        omega[seg] + gyro_bias +
        Vec3(detail::gauss(rng, noise.gyro_sigma.x()),
             detail::gauss(rng, noise.gyro_sigma.y()),
             detail::gauss(rng, noise.gyro_sigma.z()));
    s.linear_acceleration =
        q.conjugate().rotate(a_world) +
        Vec3(detail::gauss(rng, noise.accel_sigma.x()),
             detail::gauss(rng, noise.accel_sigma.y()),
             detail::gauss(rng, noise.accel_sigma.z()));
    out.push_back(s);
  }
  return out;
}

enum class TrajectoryKind { line, arc, infinity_loop, mixed };

/// Constant-curvature path segment: straight when curvature == 0,
/// circular otherwise (positive curvature turns left).
struct PathSegment {
  double length = 1.0;     // m, > 0
  double curvature = 0.0;  // 1/m
};

struct TrajectoryParams {
  double speed = 0.5;        // m/s cruise speed
  double frame_rate = 20.0;  // poses per second
  double ramp_time = 0.0;    // s to accelerate from rest to cruise
  // line
  double length = 1.0;  // m
  // arc
  double radius = 1.5;           // m
  double arc_angle = 0.5 * kPi;  // rad, signed sweep
  // infinity loop
  double loop_width = 4.0;  // m, full extent along x
  // mixed
  std::vector<PathSegment> segments;
  Pose start = Pose::identity();
};

namespace detail {

struct PlanarPath {
  // Cumulative piecewise path over arc length s in [0, total].
  std::vector<double> s_knots;       // boundaries
  std::vector<Vec3> positions;       // sampled densely for lemniscate
  std::vector<double> headings;
  double total = 0.0;
  bool sampled = false;              // true: lookup tables, false: segments
  std::vector<PathSegment> segs;

  // Pose of the path at arc length s (x-y plane, yaw heading).
  void eval(double s, Vec3& pos, double& heading) const {
    if (sampled) {
      const double sc = std::clamp(s, 0.0, total);
      const auto it = std::upper_bound(s_knots.begin(), s_knots.end(), sc);
      size_t i = static_cast<size_t>(std::distance(s_knots.begin(), it));
      i = std::min(std::max<size_t>(i, 1), s_knots.size() - 1);
      const double f =
          (sc - s_knots[i - 1]) / std::max(s_knots[i] - s_knots[i - 1], 1e-15);
      pos = (1.0 - f) * positions[i - 1] + f * positions[i];
      double h0 = headings[i - 1], h1 = headings[i];
      // unwrap
      while (h1 - h0 > kPi) h1 -= 2.0 * kPi;
      while (h1 - h0 < -kPi) h1 += 2.0 * kPi;
      heading = (1.0 - f) * h0 + f * h1;
      return;
    }
    double x = 0.0, y = 0.0, h = 0.0, remaining = std::clamp(s, 0.0, total);
    for (const PathSegment& seg : segs) {
      const double take = std::min(remaining, seg.length);
      if (seg.curvature == 0.0) {
        x += take * std::cos(h);
        y += take * std::sin(h);
      } else {
        const double k = seg.curvature;
        const double dh = k * take;
        x += (std::sin(h + dh) - std::sin(h)) / k;
        y += (std::cos(h) - std::cos(h + dh)) / k;
        h += dh;
      }
      remaining -= take;
      if (remaining <= 0.0) break;
    }
    pos = Vec3(x, y, 0.0);
    heading = h;
  }
};

inline PlanarPath lemniscate_path(double width) {
  // Gerono lemniscate x = a cos u, y = (a/2) sin 2u, closed over a period.
  PlanarPath path;
  path.sampled = true;
  const double a = 0.5 * width;
  const int n = 4000;
  double s = 0.0;
  Vec3 prev;
  for (int i = 0; i <= n; ++i) {
    const double u = 2.0 * kPi * static_cast<double>(i) / n;
    const Vec3 p(a * std::cos(u), 0.5 * a * std::sin(2.0 * u), 0.0);
    const Vec3 d(-a * std::sin(u), a * std::cos(2.0 * u), 0.0);
    if (i > 0) s += (p - prev).norm();
    path.s_knots.push_back(s);
    path.positions.push_back(p);
    path.headings.push_back(std::atan2(d.y(), d.x()));
    prev = p;
  }
  path.total = s;
  return path;
}

}  // namespace detail

/// Ground-truth pose sequence at frame_rate along the requested path.
/// Speed ramps linearly from rest over ramp_time (0 = constant speed), and
/// the profile is rescaled so the final pose lands exactly at the path end;
/// the infinity loop therefore closes on itself.
inline Trajectory generate_trajectory(TrajectoryKind kind,
                                      const TrajectoryParams& params) {
  if (params.speed <= 0.0 || params.frame_rate <= 0.0) {
    throw ConfigError("generate_trajectory: speed and frame_rate must be > 0");
  }

  detail::PlanarPath path;
  switch (kind) {
    case TrajectoryKind::line:
      if (params.length <= 0.0) throw ConfigError("line: length must be > 0");
      path.segs = {{params.length, 0.0}};
      path.total = params.length;
      break;
    case TrajectoryKind::arc: {
      if (params.radius <= 0.0 || params.arc_angle == 0.0) {
        throw ConfigError("arc: radius must be > 0 and arc_angle nonzero");
      }
      const double len = params.radius * std::abs(params.arc_angle);
      path.segs = {{len, (params.arc_angle > 0.0 ? 1.0 : -1.0) / params.radius}};
      path.total = len;
      break;
    }
    case TrajectoryKind::infinity_loop:
      if (params.loop_width <= 0.0) throw ConfigError("infinity_loop: width must be > 0");
      path = detail::lemniscate_path(params.loop_width);
      break;
    case TrajectoryKind::mixed: {
      if (params.segments.empty()) throw ConfigError("mixed: segments required");
      double total = 0.0;
      for (const PathSegment& s : params.segments) {
        if (s.length <= 0.0) throw ConfigError("mixed: segment length must be > 0");
        total += s.length;
      }
      path.segs = params.segments;
      path.total = total;
      break;
    }
  }

  // Arc length as a function of time under the ramped speed profile.
  const double ramp = std::max(params.ramp_time, 0.0);
  const double ramp_dist = 0.5 * params.speed * ramp;
  auto arc_at = [&](double t) {
    if (t <= ramp) return 0.5 * params.speed * t * t / std::max(ramp, 1e-12);
    return ramp_dist + params.speed * (t - ramp);
  };
  double duration;
  if (path.total <= ramp_dist) {
    duration = std::sqrt(2.0 * path.total * std::max(ramp, 1e-12) / params.speed);
  } else {
    duration = ramp + (path.total - ramp_dist) / params.speed;
  }
  const double dt = 1.0 / params.frame_rate;
  const int frames = std::max(1, static_cast<int>(std::llround(duration / dt)));
  const double scale = path.total / std::max(arc_at(frames * dt), 1e-12);

  Trajectory traj;
  traj.reserve(static_cast<size_t>(frames) + 1);
  for (int k = 0; k <= frames; ++k) {
    const double t = k * dt;
    Vec3 pos;
    double heading;
    path.eval(scale * arc_at(t), pos, heading);
    Pose local{pos, Quaternion::from_axis_angle(Vec3(0, 0, 1), heading)};
    traj.push_back({t, pose_compose(params.start, local)});
  }
  return traj;
}

/// Ground-truth world-frame velocity at each trajectory knot (central
/// differences; one-sided at the ends). Used for radial-velocity synthesis.
inline std::vector<Vec3> trajectory_velocities(const Trajectory& traj) {
  const size_t n = traj.size();
  std::vector<Vec3> v(n, Vec3::Zero());
  if (n < 2) return v;
  for (size_t i = 0; i < n; ++i) {
    const size_t a = (i == 0) ? 0 : i - 1;
    const size_t b = (i + 1 == n) ? i : i + 1;
    v[i] = (traj[b].value.position - traj[a].value.position) /
           (traj[b].t - traj[a].t);
  }
  return v;
}

/// Rectangular room walls sampled as discrete reflectors, plus a sprinkle
/// of interior clutter. Convenience for scenario construction and tests.
inline Environment make_room_environment(double half_x, double half_y,
                                         double wall_spacing, int interior_count,
                                         double reflectivity_min,
                                         double reflectivity_max,
                                         uint64_t rng_seed) {
  if (half_x <= 0.0 || half_y <= 0.0 || wall_spacing <= 0.0) {
    throw ConfigError("make_room_environment: bad dimensions");
  }
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> refl(reflectivity_min, reflectivity_max);
  std::uniform_real_distribution<double> ux(-half_x * 0.7, half_x * 0.7);
  std::uniform_real_distribution<double> uy(-half_y * 0.7, half_y * 0.7);

  Environment env;
  auto add_wall = [&](Vec3 from, Vec3 to) {
    const double len = (to - from).norm();
    const int count = std::max(1, static_cast<int>(len / wall_spacing));
    for (int i = 0; i <= count; ++i) {
      const double f = static_cast<double>(i) / count;
      env.landmarks.push_back({from + f * (to - from), refl(rng)});
    }
  };
  add_wall({-half_x, -half_y, 0}, {half_x, -half_y, 0});
  add_wall({half_x, -half_y, 0}, {half_x, half_y, 0});
  add_wall({half_x, half_y, 0}, {-half_x, half_y, 0});
  add_wall({-half_x, half_y, 0}, {-half_x, -half_y, 0});
  for (int i = 0; i < interior_count; ++i) {
    env.landmarks.push_back({Vec3(ux(rng), uy(rng), 0.0), refl(rng)});
  }
  return env;
}

}  // namespace mmrio
