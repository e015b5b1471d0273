#include "guamp/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "guamp/errors.hpp"

namespace guamp {

namespace {

using nlohmann::json;

const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields{
      "m",     "n",          "rho_list",    "snr_db_list", "channels", "lambda",
      "algorithms", "trials", "master_seed", "T_max",       "T_A",      "T_B",
      "out_path"};
  return fields;
}

const json& field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw ConfigError(key, "missing");
  return *it;
}

std::int64_t get_int(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  return v.get<std::int64_t>();
}

double get_real(const json& v, const char* key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

std::vector<double> get_real_list(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_array()) throw ConfigError(key, "expected an array");
  std::vector<double> out;
  for (const json& e : v) out.push_back(get_real(e, key));
  return out;
}

std::vector<std::string> get_string_list(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_array()) throw ConfigError(key, "expected an array");
  std::vector<std::string> out;
  for (const json& e : v) {
    if (!e.is_string()) throw ConfigError(key, "expected strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

SweepChannel parse_channel(const std::string& name) {
  if (name == "onebit") return SweepChannel::onebit;
  if (name == "twobit") return SweepChannel::twobit;
  if (name == "gaussian") return SweepChannel::gaussian;
  throw ConfigError("channels", "unknown channel '" + name + "'");
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "guamp") return Algorithm::guamp;
  if (name == "gamp") return Algorithm::gamp;
  if (name == "uamp") return Algorithm::uamp;
  throw ConfigError("algorithms", "unknown algorithm '" + name + "'");
}

template <class T>
bool has_duplicates(const std::vector<T>& v) {
  return std::set<T>(v.begin(), v.end()).size() != v.size();
}

}  // namespace

std::string_view to_string(SweepChannel channel) {
  switch (channel) {
    case SweepChannel::onebit: return "onebit";
    case SweepChannel::twobit: return "twobit";
    case SweepChannel::gaussian: return "gaussian";
  }
  return "unknown";
}

ChannelKind channel_kind(SweepChannel channel) {
  switch (channel) {
    case SweepChannel::onebit: return ChannelKind::onebit;
    case SweepChannel::twobit: return ChannelKind::multibit;
    case SweepChannel::gaussian: return ChannelKind::gaussian;
  }
  return ChannelKind::gaussian;
}

void SweepConfig::validate() const {
  if (m < 1) throw ConfigError("m", "must be >= 1");
  if (n < 1) throw ConfigError("n", "must be >= 1");
  if (rho_list.empty()) throw ConfigError("rho_list", "must be nonempty");
  for (double rho : rho_list) {
    if (!(rho >= 0.0 && rho < 1.0)) throw ConfigError("rho_list", "entries must lie in [0, 1)");
  }
  if (has_duplicates(rho_list)) throw ConfigError("rho_list", "duplicate entry");
  if (snr_db_list.empty()) throw ConfigError("snr_db_list", "must be nonempty");
  for (double snr : snr_db_list) {
    if (!std::isfinite(snr)) throw ConfigError("snr_db_list", "entries must be finite");
  }
  if (has_duplicates(snr_db_list)) throw ConfigError("snr_db_list", "duplicate entry");
  if (channels.empty()) throw ConfigError("channels", "must be nonempty");
  if (has_duplicates(channels)) throw ConfigError("channels", "duplicate entry");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw ConfigError("lambda", "must lie in (0, 1]");
  if (algorithms.empty()) throw ConfigError("algorithms", "must be nonempty");
  if (has_duplicates(algorithms)) throw ConfigError("algorithms", "duplicate entry");
  for (Algorithm a : algorithms) {
    if (a != Algorithm::uamp) continue;
    for (SweepChannel c : channels) {
      if (c != SweepChannel::gaussian) {
        throw ConfigError("algorithms", "uamp needs every channel to be gaussian");
      }
    }
  }
  if (trials < 1) throw ConfigError("trials", "must be >= 1");
  if (T_max < 1) throw ConfigError("T_max", "must be >= 1");
  if (T_A < 1) throw ConfigError("T_A", "must be >= 1");
  if (T_B < 1) throw ConfigError("T_B", "must be >= 1");
  if (out_path.empty()) throw ConfigError("out_path", "must be nonempty");
}

SweepConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!known_fields().count(key)) throw ConfigError(key, "unknown field");
  }

  SweepConfig c;
  c.m = get_int(doc, "m");
  c.n = get_int(doc, "n");
  c.rho_list = get_real_list(doc, "rho_list");
  c.snr_db_list = get_real_list(doc, "snr_db_list");
  c.channels.clear();
  for (const auto& s : get_string_list(doc, "channels")) c.channels.push_back(parse_channel(s));
  c.lambda = get_real(field(doc, "lambda"), "lambda");
  c.algorithms.clear();
  for (const auto& s : get_string_list(doc, "algorithms")) {
    c.algorithms.push_back(parse_algorithm(s));
  }
  const std::int64_t trials = get_int(doc, "trials");
  const std::int64_t t_max = get_int(doc, "T_max");
  const std::int64_t t_a = get_int(doc, "T_A");
  const std::int64_t t_b = get_int(doc, "T_B");
  constexpr std::int64_t kIntMax = 1 << 30;
  for (auto [v, name] : {std::pair{trials, "trials"}, std::pair{t_max, "T_max"},
                         std::pair{t_a, "T_A"}, std::pair{t_b, "T_B"}}) {
    if (v > kIntMax) throw ConfigError(name, "too large");
  }
  c.trials = static_cast<int>(trials);
  c.T_max = static_cast<int>(t_max);
  c.T_A = static_cast<int>(t_a);
  c.T_B = static_cast<int>(t_b);

  const json& seed = field(doc, "master_seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    throw ConfigError("master_seed", "expected a non-negative integer");
  }
  c.master_seed = seed.get<std::uint64_t>();

  const json& out = field(doc, "out_path");
  if (!out.is_string()) throw ConfigError("out_path", "expected a string");
  c.out_path = out.get<std::string>();

  c.validate();
  return c;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace guamp
