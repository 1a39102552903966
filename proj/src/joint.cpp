#include "treecomp/joint.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "treecomp/errors.hpp"

namespace treecomp {

Tuple project(const Tuple& t, const CoordList& coords) {
  Tuple r;
  r.reserve(coords.size());
  for (auto c : coords) r.push_back(t[c]);
  return r;
}

CoordList concat(const CoordList& a, const CoordList& b) {
  CoordList r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

std::string composite_label(const std::vector<Coordinate>& coords, const CoordList& which,
                            const Tuple& letters) {
  if (which.size() == 1) return coords[which[0]].labels[letters[0]];
  std::string s = "(";
  for (std::size_t i = 0; i < which.size(); ++i) {
    if (i) s += ',';
    s += coords[which[i]].labels[letters[i]];
  }
  return s + ")";
}

Joint::Joint(std::vector<Coordinate> coords, Pmf mass) : coords_(std::move(coords)) {
  Rational total = 0;
  for (auto& [t, p] : mass) {
    if (t.size() != coords_.size()) throw InputError("joint key has wrong arity");
    for (std::size_t c = 0; c < t.size(); ++c) {
      if (t[c] < 0 || static_cast<std::size_t>(t[c]) >= coords_[c].labels.size()) {
        throw InputError("joint key letter out of range for coordinate " + coords_[c].name);
      }
    }
    if (sgn(p) < 0) throw InputError("negative probability");
    if (sgn(p) == 0) continue;
    total += p;
    mass_.emplace(t, p);
  }
  if (total != 1) throw InputError("joint mass sums to " + to_string(total) + ", not 1");
}

std::optional<std::size_t> Joint::find(const std::string& name) const {
  for (std::size_t c = 0; c < coords_.size(); ++c) {
    if (coords_[c].name == name) return c;
  }
  return std::nullopt;
}

std::size_t Joint::index_of(const std::string& name) const {
  if (auto c = find(name)) return *c;
  throw InputError("unknown coordinate " + name);
}

Pmf Joint::marginal(const CoordList& coords) const {
  Pmf m;
  for (const auto& [t, p] : mass_) m[project(t, coords)] += p;
  return m;
}

double Joint::entropy(const CoordList& coords) const {
  if (coords.empty()) return 0.0;
  return entropy_bits(marginal(coords));
}

double Joint::conditional_entropy(const CoordList& a, const CoordList& b) const {
  return entropy(concat(a, b)) - entropy(b);
}

double Joint::mutual_information(const CoordList& a, const CoordList& b,
                                 const CoordList& c) const {
  const double v = entropy(concat(a, c)) + entropy(concat(b, c)) -
                   entropy(concat(concat(a, b), c)) - entropy(c);
  return v < 0.0 && v > -1e-12 ? 0.0 : v;
}

std::optional<IndependenceWitness> Joint::independence_given(
    const std::vector<CoordList>& raw_groups, const CoordList& cond) const {
  std::vector<CoordList> groups;
  for (const auto& g : raw_groups) {
    if (!g.empty()) groups.push_back(g);
  }
  if (groups.size() < 2) return std::nullopt;

  CoordList all = cond;
  for (const auto& g : groups) all = concat(all, g);
  const Pmf p_all = marginal(all);
  const Pmf p_cond = marginal(cond);
  std::vector<Pmf> p_group;
  for (const auto& g : groups) p_group.push_back(marginal(concat(cond, g)));

  auto to_point = [&](const Tuple& key) {
    PartialAssignment pt;
    for (std::size_t i = 0; i < all.size(); ++i) pt[all[i]] = key[i];
    return pt;
  };

  // Product form: p(c) * prod_i p(g_i | c).
  auto product_form = [&](const Tuple& key) {
    const Tuple c(key.begin(), key.begin() + static_cast<long>(cond.size()));
    const Rational& pc = p_cond.at(c);
    Rational q = pc;
    std::size_t offset = cond.size();
    for (std::size_t i = 0; i < groups.size(); ++i) {
      Tuple gk = c;
      gk.insert(gk.end(), key.begin() + static_cast<long>(offset),
                key.begin() + static_cast<long>(offset + groups[i].size()));
      offset += groups[i].size();
      auto it = p_group[i].find(gk);
      if (it == p_group[i].end()) return Rational(0);
      q *= it->second / pc;
    }
    return q;
  };

  Rational covered = 0;
  for (const auto& [key, p] : p_all) {
    const Rational q = product_form(key);
    if (q != p) return IndependenceWitness{false, to_point(key)};
    covered += q;
  }
  if (covered == 1) return std::nullopt;

  // The product form has mass outside the joint support; find a point.
  std::vector<std::map<Tuple, std::vector<Tuple>>> group_support(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (const auto& [gk, p] : p_group[i]) {
      const Tuple c(gk.begin(), gk.begin() + static_cast<long>(cond.size()));
      group_support[i][c].emplace_back(gk.begin() + static_cast<long>(cond.size()), gk.end());
    }
  }
  for (const auto& [c, pc] : p_cond) {
    Tuple key = c;
    std::optional<IndependenceWitness> found;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (found) return;
      if (i == groups.size()) {
        if (!p_all.count(key)) found = IndependenceWitness{true, to_point(key)};
        return;
      }
      for (const auto& part : group_support[i][c]) {
        const auto before = key.size();
        key.insert(key.end(), part.begin(), part.end());
        walk(i + 1);
        key.resize(before);
        if (found) return;
      }
    };
    walk(0);
    if (found) return found;
  }
  throw std::logic_error("independence check: mass deficit without witness");
}

}  // namespace treecomp
