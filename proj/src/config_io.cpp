#include "seebf/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "seebf/errors.hpp"

namespace seebf {
namespace {

using nlohmann::json;

int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

// Line of the first occurrence of "key"; 0 when the key is not found.
int line_of_key(const std::string& text, const std::string& key) {
  const std::size_t pos = text.find('"' + key + '"');
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte is 1-based and points just past the offending character.
    const std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_of_offset(text, off));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

const char* policy_name(RadiusPolicy p) {
  return p == RadiusPolicy::kFractionOfVariance ? "fraction_of_variance" : "fraction_of_attenuation";
}

class Reader {
 public:
  Reader(const json& obj, const std::string& text) : obj_(obj), text_(text) {}

  template <class T>
  bool get(const std::string& key, T& out) {
    auto it = obj_.find(key);
    if (it == obj_.end()) return false;
    used_.insert(key);
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw ParseError("bad value for '" + key + "': " + e.what(), line_of_key(text_, key));
    }
    return true;
  }

  // SI key or a scaled alternative, never both.
  void get_scaled(const std::string& key, const std::string& alt, double (*to_si)(double), double& out) {
    double v = 0.0;
    const bool a = get(key, out);
    const bool b = get(alt, v);
    if (a && b) throw ParseError("both '" + key + "' and '" + alt + "' given", line_of_key(text_, alt));
    if (b) out = to_si(v);
  }

  void reject_unknown(const std::set<std::string>& allowed_extra) const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!used_.count(it.key()) && !allowed_extra.count(it.key())) {
        throw ParseError("unknown key '" + it.key() + "'", line_of_key(text_, it.key()));
      }
    }
  }

  int line(const std::string& key) const { return line_of_key(text_, key); }

 private:
  const json& obj_;
  const std::string& text_;
  std::set<std::string> used_;
};

double khz(double v) { return v * 1e3; }
double mhz(double v) { return v * 1e6; }
double ghz(double v) { return v * 1e9; }
double knats(double v) { return v * 1e3; }

void apply_config(const json& j, const std::string& text, SystemConfig& c,
                  const std::set<std::string>& allowed_extra) {
  if (!j.is_object()) throw ParseError("configuration must be a JSON object", 1);
  Reader r(j, text);
  r.get("n_tx", c.n_tx);
  r.get("n_lue", c.n_lue);
  r.get("n_eve", c.n_eve);
  r.get("n_ehn", c.n_ehn);
  r.get_scaled("bandwidth_hz", "bandwidth_khz", khz, c.bandwidth_hz);
  double carrier = 0.0;
  if (r.get("carrier_mhz", carrier)) {
    if (j.contains("carrier_hz") || j.contains("carrier_ghz")) {
      throw ParseError("carrier given in more than one unit", r.line("carrier_mhz"));
    }
    c.carrier_hz = mhz(carrier);
  } else {
    r.get_scaled("carrier_hz", "carrier_ghz", ghz, c.carrier_hz);
  }
  double noise_dbm = 0.0;
  if (r.get("noise_dbm", noise_dbm)) c.noise_lue_w = c.noise_eve_w = c.noise_ehn_w = dbm_to_w(noise_dbm);
  r.get_scaled("noise_lue_w", "noise_lue_dbm", dbm_to_w, c.noise_lue_w);
  r.get_scaled("noise_eve_w", "noise_eve_dbm", dbm_to_w, c.noise_eve_w);
  r.get_scaled("noise_ehn_w", "noise_ehn_dbm", dbm_to_w, c.noise_ehn_w);
  r.get_scaled("p_max_w", "p_max_dbm", dbm_to_w, c.p_max_w);
  r.get_scaled("p_sp_w", "p_sp_dbm", dbm_to_w, c.p_sp_w);
  r.get("amp_eff", c.amp_eff);
  r.get("eh_eff", c.eh_eff);
  r.get_scaled("p_req_w", "p_req_dbm", dbm_to_w, c.p_req_w);
  r.get_scaled("r_aux_nats_s", "r_aux_knats_s", knats, c.r_aux_nats_s);
  r.get("psr_ratios", c.psr_ratios);
  r.get("lue_distances_m", c.lue_distances_m);
  r.get("eve_distances_m", c.eve_distances_m);
  r.get("ehn_distances_m", c.ehn_distances_m);
  r.get("uncertainty_fraction", c.uncertainty_fraction);
  std::string policy;
  if (r.get("radius_policy", policy)) {
    if (policy == "fraction_of_variance") {
      c.radius_policy = RadiusPolicy::kFractionOfVariance;
    } else if (policy == "fraction_of_attenuation") {
      c.radius_policy = RadiusPolicy::kFractionOfAttenuation;
    } else {
      throw ParseError("unknown radius_policy '" + policy + "'", r.line("radius_policy"));
    }
  }
  r.reject_unknown(allowed_extra);
  try {
    c.validate();
  } catch (const InvalidConfig& e) {
    throw ParseError(std::string("invalid configuration: ") + e.what(), 1);
  }
}

json config_json(const SystemConfig& c) {
  json j;
  j["n_tx"] = c.n_tx;
  j["n_lue"] = c.n_lue;
  j["n_eve"] = c.n_eve;
  j["n_ehn"] = c.n_ehn;
  j["bandwidth_hz"] = c.bandwidth_hz;
  j["carrier_hz"] = c.carrier_hz;
  j["noise_lue_w"] = c.noise_lue_w;
  j["noise_eve_w"] = c.noise_eve_w;
  j["noise_ehn_w"] = c.noise_ehn_w;
  j["p_max_w"] = c.p_max_w;
  j["p_sp_w"] = c.p_sp_w;
  j["amp_eff"] = c.amp_eff;
  j["eh_eff"] = c.eh_eff;
  j["p_req_w"] = c.p_req_w;
  j["r_aux_nats_s"] = c.r_aux_nats_s;
  j["psr_ratios"] = c.psr_ratios;
  j["lue_distances_m"] = c.lue_distances_m;
  j["eve_distances_m"] = c.eve_distances_m;
  j["ehn_distances_m"] = c.ehn_distances_m;
  j["uncertainty_fraction"] = c.uncertainty_fraction;
  j["radius_policy"] = policy_name(c.radius_policy);
  return j;
}

}  // namespace

SystemConfig parse_config(const std::string& text) {
  SystemConfig c = default_config();
  apply_config(parse_json(text), text, c, {});
  return c;
}

std::string dump_config(const SystemConfig& c) { return config_json(c).dump(2) + "\n"; }

SystemConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

void save_config(const SystemConfig& c, const std::string& path) { write_file(path, dump_config(c)); }

ExperimentSpec parse_experiment(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("experiment file must be a JSON object", 1);
  auto it = j.find("experiment");
  if (it == j.end() || !it->is_object()) {
    throw ParseError("missing \"experiment\" object", line_of_key(text, "experiment"));
  }
  const json& e = *it;
  std::string id;
  try {
    id = e.at("id").get<std::string>();
  } catch (const json::exception&) {
    throw ParseError("experiment.id must be a string", line_of_key(text, "experiment"));
  }
  ExperimentSpec s;
  try {
    s = default_spec(parse_experiment_id(id));
  } catch (const InvalidConfig& ex) {
    throw ParseError(ex.what(), line_of_key(text, "id"));
  }
  Reader r(e, text);
  std::string ignored;
  r.get("id", ignored);
  r.get("grid", s.grid);
  r.get("trials", s.trials);
  r.get("master_seed", s.master_seed);
  r.get("grid_divisions", s.grid_divisions);
  r.get("threads", s.threads);
  r.reject_unknown({});
  apply_config(j, text, s.base, {"experiment"});
  try {
    s.validate();
  } catch (const InvalidConfig& ex) {
    throw ParseError(std::string("invalid experiment: ") + ex.what(), line_of_key(text, "experiment"));
  }
  return s;
}

std::string dump_experiment(const ExperimentSpec& s) {
  json j = config_json(s.base);
  json e;
  e["id"] = to_string(s.id);
  e["grid"] = s.grid;
  e["trials"] = s.trials;
  e["master_seed"] = s.master_seed;
  e["grid_divisions"] = s.grid_divisions;
  e["threads"] = s.threads;
  j["experiment"] = e;
  return j.dump(2) + "\n";
}

ExperimentSpec load_experiment(const std::string& path) { return parse_experiment(read_file(path)); }

void save_experiment(const ExperimentSpec& s, const std::string& path) {
  write_file(path, dump_experiment(s));
}

}  // namespace seebf
