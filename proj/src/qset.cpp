#include "qontext/qset.hpp"

namespace qontext::qset {

QSet make_class(std::string label, std::uint64_t qcard) {
  return QSet{std::move(label), qcard};
}

bool indistinguishable(const StrongSingleton& a, const StrongSingleton& b) {
  return a.class_label == b.class_label;
}

bool member_of(const StrongSingleton& s, const QSet& cls) {
  return s.class_label == cls.class_label;
}

std::pair<StrongSingleton, QSet> extract_strong_singleton(const QSet& qs) {
  if (qs.qcard == 0) throw EmptyClassError{};
  return {StrongSingleton{qs.class_label}, QSet{qs.class_label, qs.qcard - 1}};
}

QPair assign(const StrongSingleton& s, int j, int d) {
  if (d < 1) throw InvalidOutcomeCountError{};
  if (j < 0 || j >= d) throw OutcomeOutOfRangeError(j, d);
  return QPair{s, j};
}

std::vector<QFunction> enumerate_qfunctions(const QSet& qs, int d) {
  if (d < 1) throw InvalidOutcomeCountError{};
  std::vector<QFunction> fns;
  fns.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) fns.push_back(QFunction{qs, d, j});
  return fns;
}

Count classical_function_count(std::uint64_t qcard, int d) {
  if (d < 1) throw InvalidOutcomeCountError{};
  Count result = 1;
  Count base = d;
  std::uint64_t e = qcard;
  while (e > 0) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return result;
}

}  // namespace qontext::qset
