#include "singzone/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

namespace singzone {

using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  if (!j.at(key).is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
  return j.at(key).get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

Eigen::Vector4d vector4(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 4) {
    throw ConfigError(std::string(what) + " must be an array of 4 numbers");
  }
  Eigen::Vector4d v;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_number()) throw ConfigError(std::string(what) + " must hold numbers");
    v(i) = j[i].get<double>();
  }
  return v;
}

std::array<double, 4> pole_array(const json& j, const char* what) {
  const Eigen::Vector4d v = vector4(j, what);
  return {v(0), v(1), v(2), v(3)};
}

GainSet::ModeGains mode_gains(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 4) {
    throw ConfigError(std::string(what) + " must list 4 gain vectors");
  }
  GainSet::ModeGains g;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto values = j[i].get<std::vector<double>>();
    g[i] = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  }
  return g;
}

GainSet parse_gains(const json& j) {
  if (j.contains("gains")) {
    const json& g = j.at("gains");
    return GainSet(mode_gains(g.at("yaw_position"), "gains.yaw_position"),
                   mode_gains(g.at("attitude_altitude"), "gains.attitude_altitude"));
  }
  if (j.contains("poles")) {
    const json& p = j.at("poles");
    if (p.is_number()) return GainSet::from_poles(p.get<double>());
    return GainSet::from_poles(pole_array(p.at("yaw_position"), "poles.yaw_position"),
                               pole_array(p.at("attitude_altitude"), "poles.attitude_altitude"));
  }
  return GainSet::from_poles(-2.0);
}

ZoneSpec parse_zone(const json& j) {
  ZoneSpec zone;
  if (!j.contains("zone")) return zone;
  const json& z = j.at("zone");
  zone.theta_min = number_or(z, "theta_min", zone.theta_min);
  zone.theta_max = number_or(z, "theta_max", zone.theta_max);
  zone.phi_min = number_or(z, "phi_min", zone.phi_min);
  zone.phi_max = number_or(z, "phi_max", zone.phi_max);
  zone.hysteresis = number_or(z, "hysteresis", zone.hysteresis);
  zone.validate();
  return zone;
}

ModePolicy parse_policy(const json& j) {
  if (!j.contains("policy")) throw ConfigError("missing key 'policy'");
  const json& p = j.at("policy");
  const std::string type = p.is_string() ? p.get<std::string>() : p.at("type").get<std::string>();
  if (type == "switching") return Switching{parse_zone(j)};
  if (type == "fixed") return FixedMode{parse_mode(p.at("mode").get<std::string>())};
  throw ConfigError("policy type must be 'switching' or 'fixed'");
}

}  // namespace

json state_to_json(const State14& s) {
  json a = json::array();
  for (Eigen::Index i = 0; i < kStateDim; ++i) a.push_back(s(i));
  return a;
}

State14 state_from_json(const json& j) {
  if (!j.is_array() || j.size() != kStateDim) {
    throw ConfigError("state must be an array of 14 numbers "
                      "[x, y, z, psi, theta, phi, vx, vy, vz, zeta, xi, p, q, r]");
  }
  State14 s;
  for (Eigen::Index i = 0; i < kStateDim; ++i) {
    const json& v = j[static_cast<std::size_t>(i)];
    if (!v.is_number()) throw ConfigError(std::string("state field ") + state_field_name(i) + " is not a number");
    s(i) = v.get<double>();
  }
  return s;
}

Scenario parse_scenario(const json& j) {
  try {
    if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
    Scenario sc;
    sc.name = j.value("name", std::string("scenario"));
    if (j.contains("params")) {
      const json& p = j.at("params");
      sc.params.m = number_or(p, "m", sc.params.m);
      sc.params.d = number_or(p, "d", sc.params.d);
      sc.params.ix = number_or(p, "ix", sc.params.ix);
      sc.params.iy = number_or(p, "iy", sc.params.iy);
      sc.params.iz = number_or(p, "iz", sc.params.iz);
      sc.params.g = number_or(p, "g", sc.params.g);
    }
    if (!j.contains("initial_state")) throw ConfigError("missing key 'initial_state'");
    sc.initial = state_from_json(j.at("initial_state"));
    sc.policy = parse_policy(j);
    if (!j.contains("refs")) throw ConfigError("missing key 'refs'");
    const json& refs = j.at("refs");
    if (refs.contains("yaw_position")) {
      sc.refs.yaw_position = vector4(refs.at("yaw_position"), "refs.yaw_position");
    }
    if (refs.contains("attitude_altitude")) {
      sc.refs.attitude_altitude = vector4(refs.at("attitude_altitude"), "refs.attitude_altitude");
    }
    sc.gains = parse_gains(j);
    sc.dt = number(j, "dt");
    sc.t_final = number(j, "t_final");
    sc.log_every = j.value("log_every", 1);
    if (j.contains("yaw_position_coefficients")) {
      sc.yaw_position_coefficients =
          parse_coefficient_variant(j.at("yaw_position_coefficients").get<std::string>());
    }
    sc.convergence_tol = number_or(j, "convergence_tol", sc.convergence_tol);
    sc.divergence_bound = number_or(j, "divergence_bound", sc.divergence_bound);
    if (j.contains("margins")) {
      sc.margins.theta = number_or(j.at("margins"), "theta", sc.margins.theta);
      sc.margins.phi = number_or(j.at("margins"), "phi", sc.margins.phi);
    }
    sc.validate();
    return sc;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("scenario " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_scenario(j);
}

json to_json(const DecouplingSystem& sys) {
  json delta = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int k = 0; k < 4; ++k) row.push_back(sys.delta(i, k));
    delta.push_back(row);
  }
  json out;
  out["mode"] = mode_name(sys.mode);
  out["delta"] = delta;
  if (sys.ma) {
    out["ma"] = {(*sys.ma)(0), (*sys.ma)(1), (*sys.ma)(2), (*sys.ma)(3)};
  } else {
    out["ma"] = nullptr;
  }
  out["det"] = sys.det;
  // JSON has no infinity; an exactly singular matrix reports cond as null.
  out["cond"] = std::isfinite(sys.cond) ? json(sys.cond) : json(nullptr);
  return out;
}

void write_timeseries_csv(std::ostream& os, const TimeSeries& ts) {
  const auto old = os.precision(17);
  os << "t";
  for (Eigen::Index i = 0; i < kStateDim; ++i) os << ',' << state_field_name(i);
  os << ",mode,u1b,u2b,u3b,u4b,det\n";
  for (const auto& row : ts.rows) {
    os << row.t;
    for (Eigen::Index i = 0; i < kStateDim; ++i) os << ',' << row.state(i);
    os << ',' << mode_name(row.mode);
    for (int j = 0; j < 4; ++j) os << ',' << row.u(j);
    os << ',' << row.det << '\n';
  }
  os.precision(old);
}

void write_events_csv(std::ostream& os, const TimeSeries& ts) {
  const auto old = os.precision(17);
  os << "t,kind,detail\n";
  for (const auto& e : ts.events) {
    std::string detail = e.detail;
    for (char& c : detail)
      if (c == ',' || c == '\n') c = ';';
    os << e.t << ',' << e.kind << ',' << detail << '\n';
  }
  os.precision(old);
}

}  // namespace singzone
