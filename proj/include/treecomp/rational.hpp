#ifndef TREECOMP_RATIONAL_HPP_
#define TREECOMP_RATIONAL_HPP_

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace treecomp {

using Rational = mpq_class;

// Letter indices of a composite symbol, one entry per coordinate.
using Tuple = std::vector<int>;

// Sparse exact pmf. Absent keys have probability zero.
using Pmf = std::map<Tuple, Rational>;

// Parses "num/den" or an integer string. Rejects negatives and zero
// denominators.
Rational parse_probability(std::string_view text);

std::string to_string(const Rational& r);

double to_double(const Rational& r);

// -p log2 p summed over the masses; zero masses contribute nothing.
double entropy_bits(const std::vector<Rational>& masses);

double entropy_bits(const Pmf& pmf);

}  // namespace treecomp

#endif  // TREECOMP_RATIONAL_HPP_
