#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mmrio/radar.hpp"
#include "mmrio/sim.hpp"

using namespace mmrio;

TEST_CASE("range_from_if: direct evaluation") {
  RadarConfig cfg;
  CHECK(range_from_if(0.0, cfg) == 0.0);
  // 1 MHz beat at 70 MHz/us: d = 1e6 * c / (2 * 7e13)
  CHECK(range_from_if(1e6, cfg) == Catch::Approx(2.1413747).epsilon(1e-6));
  CHECK_THROWS_AS(range_from_if(-1.0, cfg), ConfigError);
}

TEST_CASE("range_from_if is linear in f_if") {
  RadarConfig cfg;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 20e6);
  for (int i = 0; i < 100; ++i) {
    const double f = u(rng);
    const double lhs = range_from_if(2.0 * f, cfg);
    const double rhs = 2.0 * range_from_if(f, cfg);
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("aoa_from_phase") {
  RadarConfig cfg;  // antenna spacing defaults to lambda/2
  CHECK(aoa_from_phase(0.0, cfg) == 0.0);
  CHECK(aoa_from_phase(0.5 * kPi, cfg) == Catch::Approx(0.5235987756).epsilon(1e-9));
  CHECK_THROWS_AS(aoa_from_phase(2.0 * kPi, cfg), NumericError);
}

TEST_CASE("simulate_scan: empty environment gives empty scan") {
  Environment env;
  const RadarScan scan =
      simulate_scan(env, Pose::identity(), Vec3::Zero(), RadarConfig{}, 1);
  CHECK(scan.points.empty());
}

TEST_CASE("simulate_scan: single landmark dead ahead, zero noise") {
  Environment env;
  env.landmarks.push_back({Vec3(2.0, 0.0, 0.0), 1.0});
  RadarConfig cfg;
  const RadarScan scan = simulate_scan(env, Pose::identity(), Vec3::Zero(), cfg, 3);
  REQUIRE(scan.points.size() == 1);
  const Vec3 p = scan.points[0].position;
  CHECK(std::abs(p.x() - 2.0) <= 0.5 * cfg.range_resolution + 1e-12);
  CHECK(p.y() == Catch::Approx(0.0).margin(1e-12));
  CHECK(p.z() == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("simulate_scan: zero noise positions are exact quantized projections") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  Environment env;
  for (int i = 0; i < 60; ++i) {
    env.landmarks.push_back({Vec3(u(rng), u(rng), 0.0), 1.0 + 0.1 * i});
  }
  RadarConfig cfg;
  const Pose pose{Vec3(0.3, -0.2, 0.0),
                  Quaternion::from_axis_angle(Vec3(0, 0, 1), 0.4)};
  const RadarScan scan = simulate_scan(env, pose, Vec3::Zero(), cfg, 17);

  const Pose inv = pose_inverse(pose);
  size_t matched = 0;
  for (const Landmark& lm : env.landmarks) {
    const Vec3 p_s = transform_point(inv, lm.position);
    const double r = p_s.norm();
    if (r > cfg.max_range || std::abs(std::atan2(p_s.y(), p_s.x())) > 0.5 * cfg.fov_azimuth)
      continue;
    const double r_q = std::round(r / cfg.range_resolution) * cfg.range_resolution;
    const Vec3 expected = p_s * (r_q / r);
    bool found = false;
    for (const RadarPoint& pt : scan.points) {
      if ((pt.position - expected).norm() < 1e-9) found = true;
    }
    CHECK(found);
    matched += found ? 1 : 0;
  }
  CHECK(matched == scan.points.size());
}

TEST_CASE("simulate_scan: radial velocity of head-on approach is -speed") {
  Environment env;
  env.landmarks.push_back({Vec3(5.0, 0.0, 0.0), 1.0});
  const double speed = 0.57;
  const RadarScan scan = simulate_scan(env, Pose::identity(),
                                       Vec3(speed, 0.0, 0.0), RadarConfig{}, 2);
  REQUIRE(scan.points.size() == 1);
  CHECK(scan.points[0].radial_velocity == Catch::Approx(-speed).margin(1e-6));
}

TEST_CASE("simulate_scan: radial velocity clamps to sensor limit") {
  Environment env;
  env.landmarks.push_back({Vec3(5.0, 0.0, 0.0), 1.0});
  RadarConfig cfg;
  const RadarScan scan =
      simulate_scan(env, Pose::identity(), Vec3(10.0, 0.0, 0.0), cfg, 2);
  REQUIRE(scan.points.size() == 1);
  CHECK(scan.points[0].radial_velocity == -cfg.max_radial_velocity);
}

TEST_CASE("simulate_scan: frame truncates to strongest 63 of 100 landmarks") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> ang(-0.9, 0.9);
  std::uniform_real_distribution<double> dist(1.0, 12.0);
  Environment env;
  for (int i = 0; i < 100; ++i) {
    const double a = ang(rng), d = dist(rng);
    env.landmarks.push_back({Vec3(d * std::cos(a), d * std::sin(a), 0.0), 1.0});
  }
  RadarConfig cfg;
  const RadarScan scan = simulate_scan(env, Pose::identity(), Vec3::Zero(), cfg, 31);
  CHECK(static_cast<int>(scan.points.size()) == cfg.max_points_per_frame);
  // intensity-sorted output
  for (size_t i = 1; i < scan.points.size(); ++i) {
    CHECK(scan.points[i - 1].intensity >= scan.points[i].intensity);
  }
}

TEST_CASE("simulate_scan: beyond max range and outside FoV are discarded") {
  Environment env;
  env.landmarks.push_back({Vec3(23.0, 0.0, 0.0), 1.0});   // past 22.55 m
  env.landmarks.push_back({Vec3(-3.0, 0.0, 0.0), 1.0});   // behind (120 deg FoV)
  const RadarScan scan =
      simulate_scan(env, Pose::identity(), Vec3::Zero(), RadarConfig{}, 7);
  CHECK(scan.points.empty());
}

TEST_CASE("simulate_scan: identical seeds reproduce bit-identical frames") {
  Environment env = make_room_environment(5.0, 4.0, 0.4, 10, 0.5, 2.0, 99);
  env.ghost_rate = 0.5;
  env.dropout_rate = 0.1;
  env.noise = {0.01, 0.002, 0.2};
  const Pose pose{Vec3(0.5, 0.1, 0.0), Quaternion::identity()};
  const RadarScan a = simulate_scan(env, pose, Vec3(0.5, 0, 0), RadarConfig{}, 42);
  const RadarScan b = simulate_scan(env, pose, Vec3(0.5, 0, 0), RadarConfig{}, 42);
  REQUIRE(a.points.size() == b.points.size());
  for (size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].position == b.points[i].position);
    CHECK(a.points[i].intensity == b.points[i].intensity);
    CHECK(a.points[i].radial_velocity == b.points[i].radial_velocity);
  }
}

TEST_CASE("simulate_imu: static trajectory, zero bias and noise") {
  Trajectory traj;
  for (int i = 0; i < 10; ++i) traj.push_back({0.05 * i, Pose::identity()});
  const auto samples = simulate_imu(traj, 400.0, Vec3::Zero(), ImuNoise{}, 1);
  REQUIRE(!samples.empty());
  for (const ImuSample& s : samples) {
    CHECK(s.angular_velocity.norm() == Catch::Approx(0.0).margin(1e-12));
    CHECK(s.linear_acceleration.norm() == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("simulate_imu: constant yaw rate shows up on the z gyro") {
  const double yaw_rate = 0.4;
  Trajectory traj;
  for (int i = 0; i <= 40; ++i) {
    const double t = 0.05 * i;
    traj.push_back(
        {t, Pose{Vec3::Zero(), Quaternion::from_axis_angle(Vec3(0, 0, 1), yaw_rate * t)}});
  }
  const auto samples = simulate_imu(traj, 400.0, Vec3::Zero(), ImuNoise{}, 1);
  for (const ImuSample& s : samples) {
    CHECK(s.angular_velocity.z() == Catch::Approx(yaw_rate).margin(1e-6));
  }
}

TEST_CASE("simulate_imu: constant gyro bias passes through") {
  Trajectory traj;
  for (int i = 0; i < 5; ++i) traj.push_back({0.05 * i, Pose::identity()});
  const auto samples = simulate_imu(traj, 200.0, Vec3(0.01, 0.0, 0.0), ImuNoise{}, 1);
  for (const ImuSample& s : samples) {
    CHECK(s.angular_velocity.x() == Catch::Approx(0.01).margin(1e-15));
  }
}

TEST_CASE("simulate_imu: rejects trajectories shorter than 2 poses") {
  Trajectory traj{{0.0, Pose::identity()}};
  CHECK_THROWS_AS(simulate_imu(traj, 400.0, Vec3::Zero(), ImuNoise{}, 1), DataError);
}

TEST_CASE("simulate_imu: identical seeds reproduce bit-identical streams") {
  TrajectoryParams p;
  p.length = 2.0;
  Trajectory traj = generate_trajectory(TrajectoryKind::line, p);
  ImuNoise noise;
  noise.gyro_sigma = Vec3::Constant(0.002);
  noise.accel_sigma = Vec3::Constant(0.03);
  const auto a = simulate_imu(traj, 400.0, Vec3(0.01, 0, 0.005), noise, 77);
  const auto b = simulate_imu(traj, 400.0, Vec3(0.01, 0, 0.005), noise, 77);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].angular_velocity == b[i].angular_velocity);
    CHECK(a[i].linear_acceleration == b[i].linear_acceleration);
  }
}

TEST_CASE("generate_trajectory: 1 m line at 0.5 m/s") {
  TrajectoryParams p;
  p.length = 1.0;
  p.speed = 0.5;
  const Trajectory traj = generate_trajectory(TrajectoryKind::line, p);
  REQUIRE(traj.size() == 41);  // 2 s at 20 fps, inclusive endpoints
  CHECK(traj.back().t == Catch::Approx(2.0).margin(1e-12));
  CHECK((traj.back().value.position - Vec3(1, 0, 0)).norm() < 1e-9);
}

TEST_CASE("generate_trajectory: infinity loop closes on itself") {
  TrajectoryParams p;
  p.loop_width = 4.0;
  const Trajectory traj = generate_trajectory(TrajectoryKind::infinity_loop, p);
  REQUIRE(traj.size() > 10);
  CHECK((traj.front().value.position - traj.back().value.position).norm() < 0.01);
}

TEST_CASE("generate_trajectory: mixed path length tracks the request") {
  TrajectoryParams p;
  p.segments = {{2.0, 0.0}, {1.88, 1.0 / 1.2}, {2.5, 0.0}, {2.0, -1.0 / 1.5}, {1.85, 0.0}};
  double requested = 0.0;
  for (const auto& s : p.segments) requested += s.length;
  const Trajectory traj = generate_trajectory(TrajectoryKind::mixed, p);
  double walked = 0.0;
  for (size_t i = 1; i < traj.size(); ++i) {
    walked += (traj[i].value.position - traj[i - 1].value.position).norm();
  }
  CHECK(walked == Catch::Approx(requested).epsilon(0.01));
}

TEST_CASE("generate_trajectory: speed stays near cruise outside the ramp") {
  TrajectoryParams p;
  p.segments = {{3.0, 0.0}, {2.0, 0.5}};
  p.ramp_time = 1.0;
  const Trajectory traj = generate_trajectory(TrajectoryKind::mixed, p);
  for (size_t i = 1; i < traj.size(); ++i) {
    const double dt = traj[i].t - traj[i - 1].t;
    const double v =
        (traj[i].value.position - traj[i - 1].value.position).norm() / dt;
    CHECK(v <= p.speed * 1.05);
    if (traj[i - 1].t > p.ramp_time) CHECK(v >= p.speed * 0.9);
  }
}

TEST_CASE("generate_trajectory: invalid parameters are rejected") {
  TrajectoryParams p;
  p.length = -1.0;
  CHECK_THROWS_AS(generate_trajectory(TrajectoryKind::line, p), ConfigError);
  TrajectoryParams q;
  q.segments = {};
  CHECK_THROWS_AS(generate_trajectory(TrajectoryKind::mixed, q), ConfigError);
}
