#include "renyi/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "renyi/errors.hpp"

namespace renyi {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_double(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    auto sep = text.find_first_of("=:");
    if (sep == std::string::npos)
      throw ParseError("expected 'key = value'", line, text);
    std::string key = trim(text.substr(0, sep));
    std::string value = trim(text.substr(sep + 1));
    if (key.empty()) throw ParseError("empty key", line, key);
    if (value.empty()) throw ParseError("empty value", line, key);
    if (cfg.find(key)) throw ParseError("duplicate key", line, key);
    cfg.entries_.push_back({key, value, line});
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path, 0, "");
  return parse(in);
}

const KeyValueConfig::Entry* KeyValueConfig::find(const std::string& key) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Entry& e) { return e.key == key; });
  return it == entries_.end() ? nullptr : &*it;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  for (Entry& e : entries_) {
    if (e.key == key) {
      e.value = value;
      e.line = 0;
      return;
    }
  }
  entries_.push_back({key, value, 0});
}

const std::string& KeyValueConfig::require_string(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw ParseError("missing required key", 0, key);
  return e->value;
}

double KeyValueConfig::require_double(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw ParseError("missing required key", 0, key);
  auto v = to_double(e->value);
  if (!v) throw ParseError("not a number: '" + e->value + "'", e->line, key);
  return *v;
}

std::size_t KeyValueConfig::require_size(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw ParseError("missing required key", 0, key);
  std::string t = trim(e->value);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ParseError("not a nonnegative integer: '" + e->value + "'", e->line, key);
  return v;
}

std::vector<double> KeyValueConfig::require_list(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw ParseError("missing required key", 0, key);
  std::vector<double> out;
  std::stringstream ss(e->value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = to_double(item);
    if (!v) throw ParseError("bad list element '" + trim(item) + "'", e->line, key);
    out.push_back(*v);
  }
  if (out.empty()) throw ParseError("empty list", e->line, key);
  return out;
}

MeasureSpec measure_spec_from_config(const KeyValueConfig& config) {
  const std::string& kind_text = config.require_string("kind");
  ProfileKind kind;
  try {
    kind = profile_kind_from_string(kind_text);
  } catch (const DomainError& err) {
    const auto* e = config.find("kind");
    throw ParseError(err.what(), e->line, "kind");
  }

  std::set<std::string> allowed{"kind", "q", "depth"};
  switch (kind) {
    case ProfileKind::constant: allowed.insert("a"); break;
    case ProfileKind::geometric_blocks: allowed.insert({"ratio", "k_seed"}); break;
    case ProfileKind::explicit_list: allowed.insert("values"); break;
    case ProfileKind::block48: break;
  }
  for (const auto& e : config.entries())
    if (!allowed.count(e.key))
      throw ParseError("unknown key for kind " + to_string(kind), e.line, e.key);

  MeasureSpec spec;
  spec.q = config.require_double("q");
  spec.depth = config.require_size("depth");
  // Domain problems in the parameters are reported against their key.
  auto keyed = [&](const char* key, auto&& make) {
    try {
      return make();
    } catch (const DomainError& err) {
      const auto* e = config.find(key);
      throw ParseError(err.what(), e ? e->line : 0, key);
    }
  };
  switch (kind) {
    case ProfileKind::constant:
      spec.profile = keyed("a", [&] { return WeightProfile::constant(config.require_double("a")); });
      break;
    case ProfileKind::block48:
      spec.profile = WeightProfile::block48();
      break;
    case ProfileKind::geometric_blocks: {
      double ratio = config.require_double("ratio");
      auto k_seed = config.contains("k_seed")
                        ? static_cast<std::int64_t>(config.require_size("k_seed"))
                        : std::int64_t{1};
      spec.profile =
          keyed("ratio", [&] { return WeightProfile::geometric_blocks(ratio, k_seed); });
      break;
    }
    case ProfileKind::explicit_list:
      spec.profile = keyed(
          "values", [&] { return WeightProfile::explicit_list(config.require_list("values")); });
      break;
  }
  return spec;
}

std::string to_config_text(const MeasureSpec& spec) {
  std::ostringstream os;
  const WeightProfile& p = spec.profile;
  os << "kind = " << to_string(p.kind()) << '\n';
  os << "q = " << format_double(spec.q) << '\n';
  os << "depth = " << spec.depth << '\n';
  switch (p.kind()) {
    case ProfileKind::constant: os << "a = " << format_double(p.constant_value()) << '\n'; break;
    case ProfileKind::geometric_blocks:
      os << "ratio = " << format_double(p.ratio()) << '\n';
      os << "k_seed = " << p.k_seed() << '\n';
      break;
    case ProfileKind::explicit_list: {
      os << "values = ";
      for (std::size_t i = 0; i < p.values().size(); ++i)
        os << (i ? "," : "") << format_double(p.values()[i]);
      os << '\n';
      break;
    }
    case ProfileKind::block48: break;
  }
  return os.str();
}

}  // namespace renyi
