#include "covering/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "covering/errors.hpp"

namespace covering {

namespace {

class TomlParser {
 public:
  explicit TomlParser(const std::string& text) : text_(text) {}

  TomlDocument parse() {
    TomlDocument doc;
    std::string section;
    doc[section];
    while (true) {
      skip_blank_lines();
      if (at_end()) break;
      const int line = line_;
      if (peek() == '[') {
        ++pos_;
        skip_spaces();
        const std::string name = bare_key();
        skip_spaces();
        expect(']');
        end_of_line();
        if (doc.count(name) && name != "") fail("duplicate section [" + name + "]", line, name);
        section = name;
        doc[section];
        continue;
      }
      const std::string key = bare_key();
      skip_spaces();
      if (peek() == '.') fail("dotted keys are not supported", line, key);
      expect('=');
      skip_spaces();
      TomlValue value = parse_value(qualified(section, key));
      end_of_line();
      auto& table = doc[section];
      if (table.count(key)) fail("duplicate key", line, qualified(section, key));
      table[key] = {std::move(value), line};
    }
    return doc;
  }

 private:
  static std::string qualified(const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
  }

  [[noreturn]] void fail(const std::string& what, int line, const std::string& field) const {
    throw ConfigError(what, line, field);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#')
      while (!at_end() && peek() != '\n') ++pos_;
  }

  void newline() {
    ++pos_;
    ++line_;
  }

  void skip_blank_lines() {
    while (true) {
      skip_spaces();
      skip_comment();
      if (peek() == '\n') {
        newline();
        continue;
      }
      return;
    }
  }

  // Inside arrays values may span lines.
  void skip_whitespace_and_comments() {
    while (true) {
      skip_spaces();
      skip_comment();
      if (peek() != '\n') return;
      newline();
    }
  }

  void end_of_line() {
    skip_spaces();
    skip_comment();
    if (at_end()) return;
    if (peek() != '\n') fail(std::string("unexpected '") + peek() + "'", line_, "");
    newline();
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'", line_, "");
    ++pos_;
  }

  std::string bare_key() {
    std::string key;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-'))
      key += text_[pos_++];
    if (key.empty()) fail("expected a key", line_, "");
    return key;
  }

  TomlValue parse_value(const std::string& field) {
    TomlValue v;
    v.line = line_;
    const char c = peek();
    if (c == '"') {
      v.kind = TomlValue::Kind::String;
      v.text = quoted(field);
      return v;
    }
    if (c == '[') {
      ++pos_;
      v.kind = TomlValue::Kind::Array;
      skip_whitespace_and_comments();
      while (peek() != ']') {
        if (at_end()) fail("unterminated array", v.line, field);
        v.items.push_back(parse_value(field));
        skip_whitespace_and_comments();
        if (peek() == ',') {
          ++pos_;
          skip_whitespace_and_comments();
        } else if (peek() != ']') {
          fail("expected ',' or ']' in array", line_, field);
        }
      }
      ++pos_;
      return v;
    }
    std::string word;
    while (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ',' && peek() != ']' &&
           peek() != '#')
      word += text_[pos_++];
    if (word == "true" || word == "false") {
      v.kind = TomlValue::Kind::Boolean;
      v.boolean = word == "true";
      return v;
    }
    std::string digits;
    for (char ch : word)
      if (ch != '_') digits += ch;
    v.text = digits;
    if (digits.empty()) fail("missing value", line_, field);
    const bool is_float = digits.find_first_of(".eE") != std::string::npos;
    try {
      size_t used = 0;
      if (is_float) {
        v.kind = TomlValue::Kind::Float;
        v.floating = std::stod(digits, &used);
      } else {
        v.kind = TomlValue::Kind::Integer;
        v.integer = std::stoll(digits, &used);
      }
      if (used != digits.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      fail("malformed value '" + word + "'", v.line, field);
    }
    return v;
  }

  std::string quoted(const std::string& field) {
    const int line = line_;
    ++pos_;
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string", line, field);
      const char c = text_[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      const char e = text_[pos_++];
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: fail(std::string("unsupported escape \\") + e, line, field);
      }
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
};

// Typed access to one section, tracking which keys were consumed.
class Section {
 public:
  Section(const TomlDocument& doc, const std::string& name) : name_(name) {
    auto it = doc.find(name);
    if (it != doc.end()) table_ = &it->second;
  }

  ~Section() noexcept(false) {
    if (!table_ || std::uncaught_exceptions()) return;
    for (const auto& [key, entry] : *table_)
      if (!used_.count(key)) throw ConfigError("unknown key", entry.line, field(key));
  }

  const TomlEntry* find(const std::string& key) {
    used_.insert(key);
    if (!table_) return nullptr;
    auto it = table_->find(key);
    return it == table_->end() ? nullptr : &it->second;
  }

  std::string field(const std::string& key) const { return name_ + "." + key; }

  template <class T>
  void integer(const std::string& key, T& out, std::int64_t lo, std::int64_t hi) {
    if (const TomlEntry* e = find(key)) out = static_cast<T>(as_integer(e->value, key, lo, hi));
  }

  void seed(const std::string& key, std::uint64_t& out) {
    if (const TomlEntry* e = find(key)) out = static_cast<std::uint64_t>(as_integer(e->value, key, 0, std::numeric_limits<std::int64_t>::max()));
  }

  void rational(const std::string& key, mpq_class& out, bool positive = true) {
    const TomlEntry* e = find(key);
    if (!e) return;
    out = as_rational(e->value, key);
    if (positive && out <= 0) throw ConfigError("must be positive", e->line, field(key));
  }

  void real(const std::string& key, double& out) {
    if (const TomlEntry* e = find(key)) out = as_real(e->value, key);
  }

  void boolean(const std::string& key, bool& out) {
    const TomlEntry* e = find(key);
    if (!e) return;
    if (e->value.kind != TomlValue::Kind::Boolean) throw ConfigError("expected a boolean", e->line, field(key));
    out = e->value.boolean;
  }

  template <class T, class F>
  void list(const std::string& key, std::vector<T>& out, F item) {
    const TomlEntry* e = find(key);
    if (!e) return;
    if (e->value.kind != TomlValue::Kind::Array) throw ConfigError("expected an array", e->line, field(key));
    out.clear();
    for (const auto& v : e->value.items) out.push_back(item(v));
  }

  std::int64_t as_integer(const TomlValue& v, const std::string& key, std::int64_t lo, std::int64_t hi) const {
    if (v.kind != TomlValue::Kind::Integer) throw ConfigError("expected an integer", v.line, field(key));
    if (v.integer < lo || v.integer > hi)
      throw ConfigError("out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", v.line, field(key));
    return v.integer;
  }

  mpq_class as_rational(const TomlValue& v, const std::string& key) const {
    if (v.kind == TomlValue::Kind::Boolean || v.kind == TomlValue::Kind::Array)
      throw ConfigError("expected a number or a numeric string", v.line, field(key));
    auto q = parse_rational(v.text);
    if (!q) throw ConfigError("malformed number '" + v.text + "'", v.line, field(key));
    return *q;
  }

  double as_real(const TomlValue& v, const std::string& key) const {
    if (v.kind == TomlValue::Kind::Integer) return static_cast<double>(v.integer);
    if (v.kind == TomlValue::Kind::Float) return v.floating;
    throw ConfigError("expected a number", v.line, field(key));
  }

  std::string as_string(const TomlValue& v, const std::string& key) const {
    if (v.kind != TomlValue::Kind::String) throw ConfigError("expected a string", v.line, field(key));
    return v.text;
  }

  int line_of(const std::string& key) const {
    if (!table_) return 0;
    auto it = table_->find(key);
    return it == table_->end() ? 0 : it->second.line;
  }

 private:
  std::string name_;
  const std::map<std::string, TomlEntry>* table_ = nullptr;
  std::set<std::string> used_;
};

const std::set<std::string> kSections{"", "matrix", "spectral", "group", "diophantine", "hull", "classify", "walk", "run"};
const std::set<std::string> kWalkGroups{"1", "trivial", "z", "z2", "z3", "z4", "z5", "inoue"};

}  // namespace

TomlDocument parse_toml(const std::string& text) { return TomlParser(text).parse(); }

std::optional<mpq_class> parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '_') s += c;
  if (s.empty()) return std::nullopt;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    auto is_int = [](const std::string& t) {
      size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
      if (i >= t.size()) return false;
      for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
      return true;
    };
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    mpz_class n(num[0] == '+' ? num.substr(1) : num), d(den[0] == '+' ? den.substr(1) : den);
    if (d == 0) return std::nullopt;
    mpq_class q(n, d);
    q.canonicalize();
    return q;
  }
  size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string mantissa;
  long scale = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.') {
      if (seen_point) return std::nullopt;
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      mantissa += s[i];
      seen_digit = true;
      if (seen_point) --scale;
    } else {
      return std::nullopt;
    }
  }
  if (!seen_digit) return std::nullopt;
  if (i < s.size()) {
    const std::string exp = s.substr(i + 1);
    if (exp.empty()) return std::nullopt;
    size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exp, &used);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (used != exp.size() || std::labs(e) > 100000) return std::nullopt;
    scale += e;
  }
  mpq_class q{mpz_class(mantissa)};
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  if (scale >= 0) {
    q *= p;
  } else {
    q /= p;
  }
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

Config default_config() { return {}; }

Config parse_config(const std::string& text) {
  const TomlDocument doc = parse_toml(text);
  for (const auto& [name, table] : doc) {
    if (kSections.count(name)) continue;
    const int line = table.empty() ? 0 : table.begin()->second.line;
    throw ConfigError("unknown section [" + name + "]", line, name);
  }
  if (auto it = doc.find(""); it != doc.end() && !it->second.empty()) {
    const auto& [key, entry] = *it->second.begin();
    throw ConfigError("keys must belong to a section", entry.line, key);
  }

  Config c;
  {
    Section s(doc, "matrix");
    if (const TomlEntry* e = s.find("entries")) {
      if (e->value.kind != TomlValue::Kind::Array || e->value.items.size() != 9)
        throw ConfigError("expected 9 integers, row-major", e->line, "matrix.entries");
      for (size_t i = 0; i < 9; ++i)
        c.matrix[i] = s.as_integer(e->value.items[i], "entries", -(std::int64_t{1} << 40), std::int64_t{1} << 40);
    }
  }
  {
    Section s(doc, "spectral");
    s.rational("width", c.spectral.width);
    s.integer("search_bound", c.spectral.search_bound, 0, 3);
  }
  {
    Section s(doc, "group");
    s.integer("random_checks", c.group.random_checks, 0, 10000000);
    s.integer("homomorphism_checks", c.group.homomorphism_checks, 0, 1000000);
    s.integer("conjugation_radius", c.group.conjugation_radius, 0, 20);
    s.list("conjugation_exponents", c.group.conjugation_exponents,
           [&](const TomlValue& v) { return s.as_integer(v, "conjugation_exponents", -64, 64); });
    s.integer("element_radius", c.group.element_radius, 0, 10);
    s.seed("seed", c.group.seed);
  }
  {
    Section s(doc, "diophantine");
    s.rational("epsilon0", c.diophantine.epsilon0);
    s.integer("count", c.diophantine.count, 0, 12);
    s.rational("ratio", c.diophantine.ratio);
    if (c.diophantine.ratio <= 1) throw ConfigError("must exceed 1", s.line_of("ratio"), "diophantine.ratio");
  }
  {
    Section s(doc, "hull");
    if (const TomlEntry* e = s.find("d")) c.hull.d = s.as_integer(e->value, "d", 1, 1000);
    s.list("radii", c.hull.radii, [&](const TomlValue& v) { return static_cast<int>(s.as_integer(v, "radii", 0, 50)); });
    s.rational("sup_width", c.hull.sup_width);
    s.rational("hull_epsilon", c.hull.hull_epsilon);
    s.integer("uniqueness_d", c.hull.uniqueness_d, -1000, 1000);
    if (c.hull.uniqueness_d == 0) throw ConfigError("must be nonzero", s.line_of("uniqueness_d"), "hull.uniqueness_d");
    s.rational("uniqueness_epsilon", c.hull.uniqueness_epsilon);
    s.integer("witnesses", c.hull.witnesses, 1, 8);
  }
  {
    Section s(doc, "classify");
    s.integer("max_steps", c.classify.max_steps, 1, 64);
    s.integer("consistency_radius", c.classify.consistency_radius, 0, 6);
  }
  {
    Section s(doc, "walk");
    s.seed("seed", c.walk.seed);
    s.integer("trials", c.walk.trials, 1, std::int64_t{1} << 40);
    s.integer("steps", c.walk.steps, 1, std::int64_t{1} << 24);
    auto group_name = [&](const char* key) {
      return [&s, key](const TomlValue& v) {
        std::string g = s.as_string(v, key);
        if (!kWalkGroups.count(g)) throw ConfigError("unknown group '" + g + "'", v.line, s.field(key));
        return g;
      };
    };
    s.list("groups", c.walk.groups, group_name("groups"));
    s.list("targets", c.walk.targets, [&](const TomlValue& v) { return s.as_real(v, "targets"); });
    if (c.walk.groups.size() != c.walk.targets.size())
      throw ConfigError("walk.groups and walk.targets differ in length", s.line_of("targets"), "walk.targets");
    s.real("tolerance", c.walk.tolerance);
    if (!(c.walk.tolerance > 0)) throw ConfigError("must be positive", s.line_of("tolerance"), "walk.tolerance");
    s.list("cross_check", c.walk.cross_check, group_name("cross_check"));
    s.integer("twisted_steps", c.walk.twisted_steps, 1, 5000);
    s.integer("twisted_trials", c.walk.twisted_trials, 1, std::int64_t{1} << 32);
    s.integer("threads", c.walk.threads, 1, 256);
    s.boolean("lazy", c.walk.lazy);
  }
  {
    Section s(doc, "run");
    s.boolean("parallel", c.parallel);
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0, "");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

Json config_json(const Config& c) {
  Json out;
  out["matrix"] = c.matrix;
  out["spectral"] = {{"width", c.spectral.width.get_str()}, {"search_bound", c.spectral.search_bound}};
  out["group"] = {{"random_checks", c.group.random_checks},
                  {"homomorphism_checks", c.group.homomorphism_checks},
                  {"conjugation_radius", c.group.conjugation_radius},
                  {"conjugation_exponents", c.group.conjugation_exponents},
                  {"element_radius", c.group.element_radius},
                  {"seed", c.group.seed}};
  out["diophantine"] = {{"epsilon0", c.diophantine.epsilon0.get_str()},
                        {"count", c.diophantine.count},
                        {"ratio", c.diophantine.ratio.get_str()}};
  out["hull"] = {{"d", c.hull.d ? Json(*c.hull.d) : Json("auto")},
                 {"radii", c.hull.radii},
                 {"sup_width", c.hull.sup_width.get_str()},
                 {"hull_epsilon", c.hull.hull_epsilon.get_str()},
                 {"uniqueness_d", c.hull.uniqueness_d},
                 {"uniqueness_epsilon", c.hull.uniqueness_epsilon.get_str()},
                 {"witnesses", c.hull.witnesses}};
  out["classify"] = {{"max_steps", c.classify.max_steps}, {"consistency_radius", c.classify.consistency_radius}};
  Json targets = Json::array();
  for (double t : c.walk.targets) targets.push_back(t);
  out["walk"] = {{"seed", c.walk.seed},
                 {"trials", c.walk.trials},
                 {"steps", c.walk.steps},
                 {"groups", c.walk.groups},
                 {"targets", targets},
                 {"tolerance", c.walk.tolerance},
                 {"cross_check", c.walk.cross_check},
                 {"twisted_steps", c.walk.twisted_steps},
                 {"twisted_trials", c.walk.twisted_trials},
                 {"lazy", c.walk.lazy}};
  out["run"] = {{"parallel", c.parallel}};
  return out;
}

}  // namespace covering
