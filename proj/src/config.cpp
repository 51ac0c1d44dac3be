#include "flatmod/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>

#include "flatmod/error.hpp"
#include "flatmod/svg.hpp"
#include "json.hpp"

namespace flatmod {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view text, std::string_view what) {
  text = trim(text);
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
}

// Inclusive integer range "a..b[:step]" or a comma list, over an integer
// mapping supplied by the caller.
template <typename Parse>
std::vector<std::int64_t> parse_int_grid(std::string_view text, std::int64_t default_step,
                                         Parse&& parse_one) {
  text = trim(text);
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    std::string_view rest = text.substr(dots + 2);
    std::int64_t step = default_step;
    if (const auto colon = rest.find(':'); colon != std::string_view::npos) {
      step = parse_one(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const std::int64_t first = parse_one(text.substr(0, dots));
    const std::int64_t last = parse_one(rest);
    if (step <= 0 || last < first) {
      throw ConfigError("invalid range '" + std::string(text) + "'");
    }
    for (std::int64_t v = first; v <= last; v += step) out.push_back(v);
    return out;
  }
  for (auto item : split(text, ',')) {
    if (!item.empty()) out.push_back(parse_one(item));
  }
  return out;
}

}  // namespace

std::string label(double value) { return fixed(value, 2); }

ExperimentConfig ExperimentConfig::desk_defaults() {
  ExperimentConfig c;
  c.r_grid = parse_r_grid("0.00..1.00:0.05");
  c.R_grid = parse_R_grid("0..200:10");
  return c;
}

ExperimentConfig ExperimentConfig::paper_scale() {
  ExperimentConfig c;
  c.gammas = {2.5, 3.0, 3.5};
  c.seed_first = 0;
  c.seed_last = 1000;
  c.r_grid = parse_r_grid("0.00..1.00:0.01");
  c.R_grid = parse_R_grid("0..200:2");
  return c;
}

void ExperimentConfig::validate() const {
  if (gammas.empty()) throw ConfigError("gammas must not be empty");
  if (mus.empty()) throw ConfigError("mus must not be empty");
  if (seed_last < seed_first) throw ConfigError("seed range is empty");
  if (r_grid.empty() && R_grid.empty()) throw ConfigError("r_grid and R_grid are both empty");
  for (const auto& r : r_grid) {
    if (r.percent < 0 || r.percent > 100) throw ConfigError("r values must lie in [0, 1]");
  }
  for (const auto& R : R_grid) {
    if (R.multiplier < 0) throw ConfigError("R values must be non-negative");
  }
  if (parallelism == 0) throw ConfigError("parallelism must be at least 1");
  for (double g : gammas) {
    LfrParams p = lfr;
    p.tau1 = g;
    for (double m : mus) {
      p.mu = m;
      p.validate();
    }
  }
}

std::vector<Standard> parse_r_grid(std::string_view text) {
  const auto percents = parse_int_grid(text, 1, [](std::string_view s) -> std::int64_t {
    try {
      return Standard::parse(trim(s)).percent;
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
  });
  std::vector<Standard> out;
  for (auto p : percents) out.push_back(Standard{static_cast<std::int32_t>(p)});
  return out;
}

std::vector<Flat> parse_R_grid(std::string_view text) {
  const auto values = parse_int_grid(text, 1, [](std::string_view s) {
    const auto v = parse_number<std::int64_t>(s, "R value");
    if (v < 0) throw ConfigError("R values must be non-negative");
    return v;
  });
  std::vector<Flat> out;
  for (auto v : values) out.push_back(Flat{v});
  return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(std::string_view text) {
  text = trim(text);
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const auto a = parse_number<std::uint64_t>(text.substr(0, dots), "seed");
    const auto b = parse_number<std::uint64_t>(text.substr(dots + 2), "seed");
    if (b < a) throw ConfigError("seed range '" + std::string(text) + "' is empty");
    return {a, b};
  }
  const auto s = parse_number<std::uint64_t>(text, "seed");
  return {s, s};
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (auto item : split(trim(text), ',')) {
    if (!item.empty()) out.push_back(parse_real(item, "number"));
  }
  return out;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "gammas" || key == "gamma") {
    c.gammas = parse_real_list(value);
  } else if (key == "mus" || key == "mu") {
    c.mus = parse_real_list(value);
  } else if (key == "seeds" || key == "seed") {
    std::tie(c.seed_first, c.seed_last) = parse_seed_range(value);
  } else if (key == "r_grid" || key == "r") {
    c.r_grid = parse_r_grid(value);
  } else if (key == "R_grid" || key == "R") {
    c.R_grid = parse_R_grid(value);
  } else if (key == "output_dir" || key == "out") {
    c.output_dir = std::string(value);
  } else if (key == "parallelism") {
    c.parallelism = parse_number<unsigned>(value, "parallelism");
  } else if (key == "low_cut") {
    c.low_cut = parse_number<std::uint32_t>(value, "low_cut");
  } else if (key == "high_cut") {
    c.high_cut = parse_number<std::uint32_t>(value, "high_cut");
  } else if (key == "n") {
    c.lfr.n = parse_number<std::size_t>(value, "n");
  } else if (key == "tau2") {
    c.lfr.tau2 = parse_real(value, "tau2");
  } else if (key == "average_degree") {
    c.lfr.average_degree = parse_real(value, "average_degree");
  } else if (key == "max_degree") {
    c.lfr.max_degree = parse_number<std::uint32_t>(value, "max_degree");
  } else if (key == "min_community") {
    c.lfr.min_community = parse_number<std::uint32_t>(value, "min_community");
  } else if (key == "max_community") {
    c.lfr.max_community = parse_number<std::uint32_t>(value, "max_community");
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed JSON config: ") + e.what());
    }
    const auto as_text = [](const nlohmann::json& v) -> std::string {
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    for (const auto& [key, value] : doc.items()) {
      if (value.is_array()) {
        std::string joined;
        for (const auto& item : value) {
          if (!joined.empty()) joined += ',';
          joined += as_text(item);
        }
        apply_setting(base, key, joined);
      } else {
        apply_setting(base, key, as_text(value));
      }
    }
    return base;
  }

  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), std::move(base));
}

}  // namespace flatmod
