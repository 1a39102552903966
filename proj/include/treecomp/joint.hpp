#ifndef TREECOMP_JOINT_HPP_
#define TREECOMP_JOINT_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treecomp/rational.hpp"

namespace treecomp {

using CoordList = std::vector<std::size_t>;

struct Coordinate {
  std::string name;
  std::vector<std::string> labels;
};

// Assignment of letters to a subset of coordinates.
using PartialAssignment = std::map<std::size_t, int>;

struct IndependenceWitness {
  // Either the joint mass disagrees with the product form at `point`, or the
  // product form puts mass at `point` where the joint has none.
  bool outside_support = false;
  PartialAssignment point;
};

// Exact joint pmf over a list of named finite coordinates. Source letters and
// protocol messages live side by side as coordinates.
class Joint {
 public:
  Joint() = default;
  // Drops zero entries; throws InputError on bad keys or mass != 1.
  Joint(std::vector<Coordinate> coords, Pmf mass);

  const std::vector<Coordinate>& coords() const { return coords_; }
  const Pmf& mass() const { return mass_; }
  std::size_t coord_count() const { return coords_.size(); }
  std::size_t radix(std::size_t c) const { return coords_[c].labels.size(); }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;

  // Marginal over `coords`, keyed in the order given.
  Pmf marginal(const CoordList& coords) const;

  double entropy(const CoordList& coords) const;
  // H(A | B)
  double conditional_entropy(const CoordList& a, const CoordList& b) const;
  // I(A ; B | C)
  double mutual_information(const CoordList& a, const CoordList& b,
                            const CoordList& c = {}) const;

  // Exact test that the groups are mutually independent given `cond`.
  std::optional<IndependenceWitness> independence_given(
      const std::vector<CoordList>& groups, const CoordList& cond) const;

  // Appends a coordinate whose letter is drawn from `kernel(tuple)` for each
  // support tuple. Kernel rows must sum to one.
  template <typename Kernel>
  Joint extended(Coordinate coord, Kernel&& kernel) const {
    Pmf out;
    for (const auto& [t, p] : mass_) {
      for (const auto& [letter, q] : kernel(t)) {
        if (sgn(q) == 0) continue;
        Tuple ext = t;
        ext.push_back(letter);
        out[std::move(ext)] += p * q;
      }
    }
    auto coords = coords_;
    coords.push_back(std::move(coord));
    return Joint(std::move(coords), std::move(out));
  }

 private:
  std::vector<Coordinate> coords_;
  Pmf mass_;
};

Tuple project(const Tuple& t, const CoordList& coords);

CoordList concat(const CoordList& a, const CoordList& b);

// "(a,b,c)" for multi-coordinate letters, the bare label otherwise.
std::string composite_label(const std::vector<Coordinate>& coords, const CoordList& which,
                            const Tuple& letters);

}  // namespace treecomp

#endif  // TREECOMP_JOINT_HPP_
