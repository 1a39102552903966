#include "treecomp/rational.hpp"

#include <cmath>

#include "treecomp/errors.hpp"

namespace treecomp {

Rational parse_probability(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty probability string");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/')) {
      throw InputError("probability '" + s + "' is not of the form num/den");
    }
  }
  const auto slash = s.find('/');
  if (slash != std::string::npos &&
      (slash == 0 || slash + 1 == s.size() || s.find('/', slash + 1) != std::string::npos)) {
    throw InputError("probability '" + s + "' is not of the form num/den");
  }
  Rational r;
  if (r.set_str(s, 10) != 0) {
    throw InputError("probability '" + s + "' is not a rational number");
  }
  if (r.get_den() == 0) throw InputError("probability '" + s + "' has zero denominator");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

double entropy_bits(const std::vector<Rational>& masses) {
  double h = 0.0;
  for (const auto& m : masses) {
    if (sgn(m) <= 0) continue;
    const double p = m.get_d();
    h -= p * std::log2(p);
  }
  return h;
}

double entropy_bits(const Pmf& pmf) {
  double h = 0.0;
  for (const auto& [key, m] : pmf) {
    if (sgn(m) <= 0) continue;
    const double p = m.get_d();
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace treecomp
