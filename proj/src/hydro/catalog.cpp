#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "kinetic/errors.hpp"
#include "kinetic/hydro.hpp"

namespace kinetic {
namespace {

// expr := term {(+|-) term}; term := factor {(*|/) factor};
// factor := (+|-) factor | number | lambda | sqrt(expr) | (expr)
class ExpressionParser {
 public:
  ExpressionParser(const std::string& s, std::optional<double> lambda) : s_(s), lambda_(lambda) {}

  double parse() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  const std::string& s_;
  std::optional<double> lambda_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("bad expression '" + s_ + "' at offset " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool word(const char* w) {
    skip();
    const std::size_t n = std::char_traits<char>::length(w);
    if (s_.compare(pos_, n, w) == 0) {
      pos_ += n;
      return true;
    }
    return false;
  }
  double expr() {
    double v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  double term() {
    double v = factor();
    for (;;) {
      if (eat('*'))
        v *= factor();
      else if (eat('/'))
        v /= factor();
      else
        return v;
    }
  }
  double factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (word("sqrt")) {
      if (!eat('(')) fail("sqrt needs '('");
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      if (v < 0.0) fail("sqrt of a negative number");
      return std::sqrt(v);
    }
    if (word("lambda")) {
      if (!lambda_) fail("lambda is not bound here");
      return *lambda_;
    }
    skip();
    double v = 0.0;
    const auto r = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (r.ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(r.ptr - s_.data());
    return v;
  }
};

bool parse_bool(const std::string& v, const std::string& where) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigurationError(where + ": expected true or false, got '" + v + "'");
}

}  // namespace

double eval_expression(const std::string& text, std::optional<double> lambda) {
  return ExpressionParser(text, lambda).parse();
}

std::vector<ImplosionScenario> load_catalog(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError(e.filename() + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  static const std::set<std::string> known = {"kappa",    "lambda_min",       "lambda_max", "min_open", "max_open",
                                              "symmetry", "profiles_bounded", "cold_gas",   "notes"};
  std::vector<ImplosionScenario> out;
  for (const auto& [name, section] : tree) {
    if (section.empty()) throw ConfigurationError(path + ": key '" + name + "' outside a scenario section");
    ImplosionScenario sc;
    sc.name = name;
    for (const auto& [key, node] : section) {
      const std::string where = path + ": [" + name + "] " + key;
      if (!known.count(key)) throw ConfigurationError(where + ": unknown key");
      const std::string v = node.data();
      try {
        if (key == "kappa") {
          sc.kappa = v;
          if (v != "unspecified") eval_expression(v, 1.0);
        } else if (key == "lambda_min") {
          sc.lambda_min = eval_expression(v);
        } else if (key == "lambda_max") {
          sc.lambda_max = eval_expression(v);
        } else if (key == "min_open") {
          sc.min_open = parse_bool(v, where);
        } else if (key == "max_open") {
          sc.max_open = parse_bool(v, where);
        } else if (key == "symmetry") {
          if (v == "spherical")
            sc.symmetry = Symmetry::Spherical;
          else if (v == "cylindrical")
            sc.symmetry = Symmetry::Cylindrical;
          else
            throw ConfigurationError(where + ": expected spherical or cylindrical");
        } else if (key == "profiles_bounded") {
          sc.profiles_bounded = parse_bool(v, where);
        } else if (key == "cold_gas") {
          sc.cold_gas = parse_bool(v, where);
        } else {
          sc.notes = v;
        }
      } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
    if (!section.count("lambda_min") || !section.count("lambda_max"))
      throw ConfigurationError(path + ": [" + name + "] needs lambda_min and lambda_max");
    sc.validate();
    out.push_back(std::move(sc));
  }
  if (out.empty()) throw ConfigurationError(path + ": catalog has no scenarios");
  return out;
}

std::string shipped_catalog_path() { return std::string(KINETIC_DATA_DIR) + "/implosion_catalog.ini"; }

std::vector<ImplosionScenario> shipped_catalog() { return load_catalog(shipped_catalog_path()); }

}  // namespace kinetic
