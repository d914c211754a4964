#include "mirrorsim/config.hpp"

#include <fstream>

#include <json.hpp>

#include "mirrorsim/errors.hpp"

namespace mirrorsim {

namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError("mirror file: missing or non-numeric key '" + key + "'");
  return j[key].get<double>();
}

Eigen::ArrayXd get_array(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ConfigError("mirror file: missing or non-array key '" + key + "'");
  const auto& a = j[key];
  Eigen::ArrayXd out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw ConfigError("mirror file: non-numeric entry in '" + key + "'");
    out[i] = a[i].get<double>();
  }
  return out;
}

Parity parse_parity(const json& j) {
  const std::string s = j.value("parity", "");
  if (s == "odd") return Parity::odd;
  if (s == "even") return Parity::even;
  if (s == "none") return Parity::none;
  throw ConfigError("curve parity must be one of odd, even, none");
}

NonlinearCurve parse_curve(const json& j, const std::string& name) {
  if (!j.is_object()) throw ConfigError("mirror file: curve '" + name + "' must be an object");
  const std::string type = j.value("type", "");
  const Parity parity = parse_parity(j);
  if (type == "poly") {
    const Eigen::ArrayXd coeffs = get_array(j, "coeffs");
    const Eigen::ArrayXd dom = get_array(j, "domain");
    if (dom.size() != 2) throw ConfigError("curve '" + name + "': domain must be [lo, hi]");
    return NonlinearCurve::poly(coeffs.matrix(), parity, dom[0], dom[1]);
  }
  if (type == "table") {
    const Eigen::ArrayXd angles = get_array(j, "angles");
    const Eigen::ArrayXd values = get_array(j, "values");
    if (j.contains("slopes"))
      return NonlinearCurve::table(angles, values, get_array(j, "slopes"), parity);
    return NonlinearCurve::table(angles, values, parity);
  }
  throw ConfigError("curve '" + name + "': type must be poly or table");
}

}  // namespace

MirrorConfig load_mirror_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mirror file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("mirror file " + path + ": " + e.what());
  }

  if (j.value("format", "") != "mirror-params/1")
    throw ConfigError("mirror file " + path + ": expected format mirror-params/1");

  MirrorConfig cfg;
  MirrorParams& p = cfg.params;
  p.inertia = get_number(j, "inertia");
  p.mass = get_number(j, "mass");
  p.com_offset = get_number(j, "com_offset");
  p.theta_ref = get_number(j, "theta_ref");
  p.f_ref = get_number(j, "f_ref");
  if (!j.contains("stiffness") || !j.contains("damping_base") || !j.contains("cap_deriv"))
    throw ConfigError("mirror file: stiffness, damping_base and cap_deriv curves are required");
  p.stiffness = parse_curve(j["stiffness"], "stiffness");
  p.damping_base = parse_curve(j["damping_base"], "damping_base");
  p.cap_deriv = parse_curve(j["cap_deriv"], "cap_deriv");
  if (j.contains("damping_amp")) {
    p.damping_amp = parse_curve(j["damping_amp"], "damping_amp");
  } else {
    // Velocity-dependent damping correction defaults to zero.
    Eigen::VectorXd zero(1);
    zero << 0.0;
    p.damping_amp = NonlinearCurve::poly(zero, Parity::even,
                                         p.damping_base.domain_lo(),
                                         p.damping_base.domain_hi());
  }
  p.validate();

  if (j.contains("drive")) {
    const json& d = j["drive"];
    cfg.drive.hv_voltage = d.value("hv_voltage", cfg.drive.hv_voltage);
    cfg.drive.duty = d.value("duty", cfg.drive.duty);
  }
  if (j.contains("pll")) {
    const json& d = j["pll"];
    cfg.drive.kp = d.value("kp", cfg.drive.kp);
    cfg.drive.ki = d.value("ki", cfg.drive.ki);
    cfg.drive.t_beta_ref = d.value("t_beta_ref", cfg.drive.t_beta_ref);
  }
  if (!(cfg.drive.hv_voltage > 0.0)) throw ConfigError("drive hv_voltage must be positive");
  if (!(cfg.drive.duty > 0.0 && cfg.drive.duty < 1.0))
    throw ConfigError("drive duty must lie in (0, 1)");
  return cfg;
}

}  // namespace mirrorsim
