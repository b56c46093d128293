#pragma once

// Finite executable fragment of quasi-set theory: indistinguishability
// classes with a quasi-cardinal, strong singletons, quasi-pairs, and the
// collapse of quasi-functions to the d constant assignments.
//
// The one rule everything here obeys: element identity is not representable.
// A class is its label plus a count; a strong singleton remembers only which
// class it came from. No operation can tell two singletons of the same class
// apart.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qontext::qset {

using Count = boost::multiprecision::cpp_int;

struct EmptyClassError : std::runtime_error {
  EmptyClassError() : std::runtime_error("cannot extract from a class with quasi-cardinal 0") {}
};

struct InvalidOutcomeCountError : std::runtime_error {
  InvalidOutcomeCountError() : std::runtime_error("outcome count d must be at least 1") {}
};

struct OutcomeOutOfRangeError : std::runtime_error {
  OutcomeOutOfRangeError(int j, int d)
      : std::runtime_error("outcome " + std::to_string(j) + " not in [0, " + std::to_string(d) + ")") {}
};

// An indistinguishability class: a kind label and how many elements it has.
// Equal label and equal qcard means interchangeable everywhere.
struct QSet {
  std::string class_label;
  std::uint64_t qcard = 0;

  friend bool operator==(const QSet&, const QSet&) = default;
};

// A sub-quasi-set of quasi-cardinal 1, used to "pick" one element of a class
// without saying which. Only the parent kind is observable.
struct StrongSingleton {
  std::string class_label;
};

// The pair <singleton; value>: a value assigned to one picked context.
struct QPair {
  StrongSingleton singleton;
  int value = 0;
};

// A function from a quasi-class into {0,...,d-1}. With element identity
// unavailable it is fully determined by its constant value.
struct QFunction {
  QSet domain;
  int codomain_size = 0;
  int constant_value = 0;
};

QSet make_class(std::string label, std::uint64_t qcard);

// True iff both singletons were picked from the same kind of class. This is
// an equivalence relation, and it deliberately cannot distinguish two
// different extractions from the same class.
bool indistinguishable(const StrongSingleton& a, const StrongSingleton& b);

// Membership of the singleton's element in a class: decided by kind alone.
bool member_of(const StrongSingleton& s, const QSet& cls);

// Picks one element: returns the strong singleton and the remainder class
// with qcard decremented. Which element was taken is not representable.
// Throws EmptyClassError when qcard is 0.
std::pair<StrongSingleton, QSet> extract_strong_singleton(const QSet& qs);

// Assigns outcome j (0 <= j < d) to a picked context. Assignments to
// distinct singletons of one class are independent; nothing forces them
// equal. Throws OutcomeOutOfRangeError.
QPair assign(const StrongSingleton& s, int j, int d);

// All functions from the class into {0,...,d-1}: exactly the d constant
// assignments, in ascending constant_value order.
std::vector<QFunction> enumerate_qfunctions(const QSet& qs, int d);

// d^qcard, exactly: how many valuations classical identity would allow on a
// class of the same size. The quotient against the d quasi-functions is the
// collapse factor d^(qcard-1).
Count classical_function_count(std::uint64_t qcard, int d);

}  // namespace qontext::qset
