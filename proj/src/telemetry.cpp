// Copyright 2026 The quadsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quadsim/telemetry.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "quadsim/trajectory.hpp"

namespace quadsim {

const char* const kTelemetryCsvHeader =
    "t,px,py,pz,vx,vy,vz,qw,qx,qy,qz,roll,pitch,yaw,"
    "wx,wy,wz,rtx,rty,rtz,wtx,wty,wtz,fx,fy,fz,"
    "T,taux,tauy,tauz,d1,d2,d3,d4,V";

namespace {

void append_value(std::string* out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  *out += buf;
}

double wrap_difference(double value, double prev) {
  double d = value - prev;
  while (d > M_PI) d -= 2.0 * M_PI;
  while (d < -M_PI) d += 2.0 * M_PI;
  return prev + d;
}

}  // namespace

void write_csv(const TelemetryLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("write_csv: cannot open '" + path + "'");
  out << kTelemetryCsvHeader << "\n";
  std::string line;
  for (const TelemetryRecord& r : log.records) {
    line.clear();
    const double values[] = {
        r.t,           r.position.x(),  r.position.y(),  r.position.z(),
        r.velocity.x(), r.velocity.y(), r.velocity.z(),  r.quaternion[0],
        r.quaternion[1], r.quaternion[2], r.quaternion[3], r.roll,
        r.pitch,       r.yaw,           r.body_rate.x(), r.body_rate.y(),
        r.body_rate.z(), r.rotation_error.x(), r.rotation_error.y(),
        r.rotation_error.z(), r.rate_error.x(), r.rate_error.y(),
        r.rate_error.z(), r.force.x(),   r.force.y(),     r.force.z(),
        r.thrust,      r.torque.x(),    r.torque.y(),    r.torque.z(),
        r.throttle[0], r.throttle[1],   r.throttle[2],   r.throttle[3],
        r.lyapunov};
    for (std::size_t i = 0; i < std::size(values); ++i) {
      if (i) line += ',';
      append_value(&line, values[i]);
    }
    line += '\n';
    out << line;
  }
  if (!out) throw IoFailure("write_csv: write failed for '" + path + "'");
}

RunMetrics compute_metrics(const TelemetryLog& log, const RunConfig& config) {
  RunMetrics m;
  if (log.records.empty()) return m;

  const double duration = log.records.back().t;
  const double steady_start = 0.5 * duration;
  const double z0 = log.records.front().position.z();

  m.convergence_time_altitude = std::numeric_limits<double>::infinity();
  bool in_band_seen = false;

  double rms_accum = 0.0;
  std::size_t rms_count = 0;
  double roll_accum = 0.0;
  std::size_t roll_count = 0;

  int hold_steps = 0;
  const int hold_needed =
      static_cast<int>(std::ceil(config.recovery_hold_time / config.dt));

  for (const TelemetryRecord& r : log.records) {
    const TrajectoryPoint ref = sample(config.trajectory, r.t);

    if (!in_band_seen &&
        std::abs(r.position.z() - ref.position.z()) <= config.altitude_band) {
      m.convergence_time_altitude = r.t;
      in_band_seen = true;
    }

    m.max_abs_roll = std::max(m.max_abs_roll, std::abs(r.roll));
    m.max_altitude_drop =
        std::max(m.max_altitude_drop, r.position.z() - z0);

    if (r.t >= steady_start) {
      rms_accum += (r.position - ref.position).squaredNorm();
      ++rms_count;
      roll_accum += std::abs(r.roll);
      ++roll_count;
      m.steady_state_max_abs_roll =
          std::max(m.steady_state_max_abs_roll, std::abs(r.roll));
    }

    if (r.position.norm() < config.recovery_radius &&
        r.velocity.norm() < config.recovery_speed) {
      if (++hold_steps >= hold_needed) m.recovered = true;
    } else {
      hold_steps = 0;
    }
  }

  if (rms_count > 0) {
    m.steady_state_rms_position_error = std::sqrt(rms_accum / rms_count);
    m.steady_state_mean_abs_roll = roll_accum / roll_count;
  }
  m.final_lyapunov = log.records.back().lyapunov;
  return m;
}

void write_metrics(const RunMetrics& metrics, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("write_metrics: cannot open '" + path + "'");
  const auto emit = [&out](const char* key, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << key << "=" << buf << "\n";
  };
  emit("convergence_time_altitude", metrics.convergence_time_altitude);
  emit("steady_state_rms_position_error",
       metrics.steady_state_rms_position_error);
  emit("steady_state_mean_abs_roll", metrics.steady_state_mean_abs_roll);
  emit("steady_state_max_abs_roll", metrics.steady_state_max_abs_roll);
  emit("max_abs_roll", metrics.max_abs_roll);
  emit("max_altitude_drop", metrics.max_altitude_drop);
  out << "recovered=" << (metrics.recovered ? "true" : "false") << "\n";
  emit("final_lyapunov", metrics.final_lyapunov);
  out << "diverged=" << (metrics.diverged ? "true" : "false") << "\n";
  if (metrics.diverged) emit("divergence_time", metrics.divergence_time);
  if (!out) throw IoFailure("write_metrics: write failed for '" + path + "'");
}

Vec4 quaternion_from_rotation(const Mat3& r) {
  Vec4 q;  // (w, x, y, z)
  const double trace = r.trace();
  if (trace > 0.0) {
    double s = std::sqrt(trace + 1.0) * 2.0;
    q << 0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s,
        (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
    q << (r(2, 1) - r(1, 2)) / s, 0.25 * s, (r(0, 1) + r(1, 0)) / s,
        (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) > r(2, 2)) {
    double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
    q << (r(0, 2) - r(2, 0)) / s, (r(0, 1) + r(1, 0)) / s, 0.25 * s,
        (r(1, 2) + r(2, 1)) / s;
  } else {
    double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
    q << (r(1, 0) - r(0, 1)) / s, (r(0, 2) + r(2, 0)) / s,
        (r(1, 2) + r(2, 1)) / s, 0.25 * s;
  }
  q.normalize();
  if (q[0] < 0.0) q = -q;
  return q;
}

Vec3 euler_zyx_from_rotation(const Mat3& r) {
  const double pitch_sin = std::clamp(-r(2, 0), -1.0, 1.0);
  return Vec3(std::atan2(r(2, 1), r(2, 2)), std::asin(pitch_sin),
              std::atan2(r(1, 0), r(0, 0)));
}

Vec3 EulerUnwrapper::update(const Mat3& rotation) {
  const Vec3 wrapped = euler_zyx_from_rotation(rotation);
  if (!has_prev_) {
    prev_ = wrapped;
    has_prev_ = true;
    return wrapped;
  }
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = wrap_difference(wrapped[i], prev_[i]);
  prev_ = out;
  return out;
}

}  // namespace quadsim
