#include "enkcf/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "enkcf/error.hpp"

namespace enkcf {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
  throw FormatError("config key '" + std::string(key) + "': expected " + expected + ", got '" +
                    std::string(value) + "'");
}

double parse_real(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(v)) {
    bad_value(key, text, "a finite number");
  }
  return v;
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text) {
  text = trim(text);
  Int v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size()) bad_value(key, text, "an integer");
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  bad_value(key, text, "true or false");
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_real(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

struct Entry {
  std::string key;
  std::string comment;
  std::function<std::string(const RunSettings&)> get;
  std::function<void(RunSettings&, std::string_view)> set;
};

template <typename Member>
Entry real_entry(std::string key, std::string comment, Member member, int min_decimals = 1) {
  return {key, std::move(comment),
          [member, min_decimals](const RunSettings& s) {
            return format_real(member(s), min_decimals);
          },
          [member, key](RunSettings& s, std::string_view v) { member(s) = parse_real(key, v); }};
}

void add_filter_entries(std::vector<Entry>& entries, const std::string& suffix,
                        FilterParams SchedulerConfig::*which, const std::string& label) {
  auto params = [which](auto& s) -> auto& { return s.scheduler.*which; };
  entries.push_back(real_entry(
      "learning_rate_" + suffix, label + ": model update rate",
      [params](auto& s) -> auto& { return params(s).learning_rate; }, 3));
  entries.push_back(real_entry(
      "kernel_bandwidth_" + suffix, label + ": Gaussian kernel bandwidth",
      [params](auto& s) -> auto& { return params(s).kernel_bandwidth; }));
  entries.push_back(real_entry(
      "padding_" + suffix, label + ": ROI side = target side * (1 + padding)",
      [params](auto& s) -> auto& { return params(s).padding; }));
  entries.push_back(real_entry("lambda_" + suffix, label + ": ridge regularisation",
                               [params](auto& s) -> auto& { return params(s).lambda; }));
  entries.push_back(real_entry(
      "label_sigma_" + suffix, label + ": label sigma as a fraction of sqrt(cells)",
      [params](auto& s) -> auto& { return params(s).label_sigma_factor; }));

  const std::string features_key = "features_" + suffix;
  entries.push_back({features_key, label + ": fhog or fhog+cn",
                     [params](const RunSettings& s) {
                       return std::string(to_string(params(s).features.set));
                     },
                     [params, features_key](RunSettings& s, std::string_view v) {
                       try {
                         params(s).features.set = parse_feature_set(trim(v));
                       } catch (const std::invalid_argument&) {
                         bad_value(features_key, v, "fhog or fhog+cn");
                       }
                     }});
  const std::string windowed_key = "windowed_" + suffix;
  entries.push_back({windowed_key, label + ": apply a Hann window to the features",
                     [params](const RunSettings& s) {
                       return format_bool(params(s).features.windowed);
                     },
                     [params, windowed_key](RunSettings& s, std::string_view v) {
                       params(s).features.windowed = parse_bool(windowed_key, v);
                     }});
  const std::string cell_key = "cell_" + suffix;
  entries.push_back({cell_key, label + ": feature cell size in pixels",
                     [params](const RunSettings& s) {
                       return std::to_string(params(s).features.cell);
                     },
                     [params, cell_key](RunSettings& s, std::string_view v) {
                       params(s).features.cell = parse_integer<int>(cell_key, v);
                     }});
  const std::string scaling_key = "distance_scaling_" + suffix;
  entries.push_back({scaling_key, label + ": kernel distance normalisation, none or per_element",
                     [params](const RunSettings& s) {
                       return std::string(params(s).distance_scaling ==
                                                  DistanceScaling::none
                                              ? "none"
                                              : "per_element");
                     },
                     [params, scaling_key](RunSettings& s, std::string_view v) {
                       v = trim(v);
                       if (v == "none") {
                         params(s).distance_scaling = DistanceScaling::none;
                       } else if (v == "per_element") {
                         params(s).distance_scaling = DistanceScaling::per_element;
                       } else {
                         bad_value(scaling_key, v, "none or per_element");
                       }
                     }});
}

template <typename Int, typename Member>
Entry int_entry(std::string key, std::string comment, Member member) {
  return {key, std::move(comment),
          [member](const RunSettings& s) {
            return std::to_string(member(s));
          },
          [member, key](RunSettings& s, std::string_view v) {
            member(s) = parse_integer<Int>(key, v);
          }};
}

template <typename Member>
Entry bool_entry(std::string key, std::string comment, Member member) {
  return {key, std::move(comment),
          [member](const RunSettings& s) { return format_bool(member(s)); },
          [member, key](RunSettings& s, std::string_view v) { member(s) = parse_bool(key, v); }};
}

std::vector<Entry> build_entries() {
  std::vector<Entry> e;
  e.push_back(int_entry<int>("n", "frames per filter cycle",
                             [](auto& s) -> auto& { return s.scheduler.n; }));
  e.push_back({"scale_pool", "candidate scale factors, comma separated",
               [](const RunSettings& s) {
                 std::string out;
                 for (double v : s.scheduler.scale_pool) {
                   if (!out.empty()) out += ',';
                   out += format_real(v);
                 }
                 return out;
               },
               [](RunSettings& s, std::string_view v) {
                 s.scheduler.scale_pool = parse_list("scale_pool", v);
               }});
  e.push_back(real_entry("t_rs", "minimum scale-response PSR for a scale model update",
                         [](auto& s) -> auto& { return s.scheduler.t_rs; }));
  add_filter_entries(e, "L", &SchedulerConfig::params_large, "large-area translation filter");
  add_filter_entries(e, "S", &SchedulerConfig::params_small, "small-area translation filter");
  add_filter_entries(e, "scale", &SchedulerConfig::params_scale, "scale filter");
  e.push_back(int_entry<int>("translation_template", "longer translation template side, px",
                             [](auto& s) -> auto& { return s.scheduler.translation_template; }));
  e.push_back(int_entry<int>("scale_template", "longer scale template side, px",
                             [](auto& s) -> auto& { return s.scheduler.scale_template; }));
  e.push_back(int_entry<int>("psr_exclusion", "PSR peak exclusion window, cells (odd)",
                             [](auto& s) -> auto& { return s.scheduler.psr_exclusion; }));
  e.push_back(bool_entry("pf_enabled", "smooth translations with the particle filter",
                         [](auto& s) -> auto& { return s.scheduler.pf_enabled; }));
  e.push_back(bool_entry("every_frame_L", "run the large-area filter on every frame",
                         [](auto& s) -> auto& { return s.scheduler.every_frame_large; }));
  e.push_back(bool_entry("recenter_on_scale", "re-centre on the scale response peak",
                         [](auto& s) -> auto& { return s.scheduler.recenter_on_scale; }));
  e.push_back(int_entry<std::size_t>("particles", "particle count",
                                     [](auto& s) -> auto& { return s.scheduler.particles; }));
  e.push_back(real_entry("noise_pos", "position process noise, px",
                         [](auto& s) -> auto& { return s.scheduler.noise_pos; }));
  e.push_back(real_entry("noise_vel", "velocity process noise, px/frame",
                         [](auto& s) -> auto& { return s.scheduler.noise_vel; }));
  e.push_back(int_entry<int>("pf_window", "response window summed per particle, cells (odd)",
                             [](auto& s) -> auto& { return s.scheduler.pf_window; }));
  e.push_back(real_entry("pf_sharpness", "exponent applied to particle window sums",
                         [](auto& s) -> auto& { return s.scheduler.pf_sharpness; }));
  e.push_back(real_entry("resample_fraction", "resample when N_eff < fraction * particles",
                         [](auto& s) -> auto& { return s.scheduler.resample_fraction; }));
  e.push_back(real_entry("translation_noise", "uniform noise added to filter translations, px",
                         [](auto& s) -> auto& { return s.scheduler.translation_noise; }));
  e.push_back(int_entry<std::uint64_t>("seed", "random seed",
                                       [](auto& s) -> auto& { return s.seed; }));
  e.push_back({"cn_table", "color-naming table path (32768 rows x 11 columns)",
               [](const RunSettings& s) { return s.cn_table; },
               [](RunSettings& s, std::string_view v) { s.cn_table = std::string(trim(v)); }});
  return e;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = build_entries();
  return table;
}

const Entry* find_entry(std::string_view key) {
  for (const auto& e : entries()) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

}  // namespace

std::string format_real(double value, int min_decimals) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string out(buf, end);
  if (out.find_first_of("eEn") != std::string::npos) return out;
  auto dot = out.find('.');
  if (dot == std::string::npos) {
    out += '.';
    dot = out.size() - 1;
  }
  const int decimals = static_cast<int>(out.size() - dot - 1);
  if (decimals < min_decimals) out.append(static_cast<std::size_t>(min_decimals - decimals), '0');
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& e : entries()) k.push_back(e.key);
    return k;
  }();
  return keys;
}

std::string dump_config(const RunSettings& settings) {
  std::string out = "# enkcf configuration\n";
  for (const auto& e : entries()) {
    out += "\n# " + e.comment + "\n";
    out += e.key + " = " + e.get(settings) + "\n";
  }
  return out;
}

void set_config_value(RunSettings& settings, std::string_view key, std::string_view value) {
  const Entry* e = find_entry(key);
  if (e == nullptr) throw FormatError("unknown config key '" + std::string(key) + "'");
  e->set(settings, value);
}

void apply_config(std::string_view text, RunSettings& settings) {
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const std::string_view raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw FormatError(where + "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    if (!seen.insert(std::string(key)).second) {
      throw FormatError(where + "duplicate key '" + std::string(key) + "'");
    }
    try {
      set_config_value(settings, key, line.substr(eq + 1));
    } catch (const FormatError& e) {
      throw FormatError(where + e.what());
    }
  }
}

RunSettings load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  RunSettings settings;
  apply_config(buffer.str(), settings);
  return settings;
}

std::string config_digest(const RunSettings& settings) {
  // FNV-1a over the dumped document.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump_config(settings)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace enkcf
