#include "qontext/inequality.hpp"

#include <algorithm>

#include "qontext/qset.hpp"

namespace qontext::inequality {

namespace {

// Lexicographic key with +1 ordered before -1.
int lex_key(const ProductTriple& t) {
  auto bit = [](int v) { return v == 1 ? 0 : 1; };
  return bit(t.xy) * 4 + bit(t.xz) * 2 + bit(t.yz);
}

int sign_of(int outcome) { return outcome == 0 ? 1 : -1; }

}  // namespace

std::vector<std::pair<SignTriple, ProductTriple>> classical_table() {
  std::vector<std::pair<SignTriple, ProductTriple>> rows;
  rows.reserve(8);
  for (int x : {1, -1})
    for (int y : {1, -1})
      for (int z : {1, -1})
        rows.emplace_back(SignTriple{x, y, z},
                          ProductTriple{x * y, x * z, y * z, Origin::classical});
  return rows;
}

std::pair<int, int> classical_bounds() {
  int lo = 3, hi = -3;
  for (const auto& row : classical_table()) {
    lo = std::min(lo, row.second.sum());
    hi = std::max(hi, row.second.sum());
  }
  return {lo, hi};
}

std::vector<ProductTriple> quasi_table() {
  // Two strong singletons per class: one for each context the observable
  // sits in. Their assigned values are independent by construction.
  using namespace qontext::qset;
  const auto pick_two = [](const QSet& cls) {
    auto first = extract_strong_singleton(cls);
    auto second = extract_strong_singleton(first.second);
    return std::pair{first.first, second.first};
  };
  const auto [x_in_xy, x_in_xz] = pick_two(make_class("X", 2));
  const auto [y_in_xy, y_in_yz] = pick_two(make_class("Y", 2));
  const auto [z_in_xz, z_in_yz] = pick_two(make_class("Z", 2));

  std::vector<ProductTriple> rows;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e)
          for (int f = 0; f < 2; ++f)
            for (int g = 0; g < 2; ++g) {
              const QPair px_xy = assign(x_in_xy, a, 2);
              const QPair px_xz = assign(x_in_xz, b, 2);
              const QPair py_xy = assign(y_in_xy, c, 2);
              const QPair py_yz = assign(y_in_yz, e, 2);
              const QPair pz_xz = assign(z_in_xz, f, 2);
              const QPair pz_yz = assign(z_in_yz, g, 2);
              ProductTriple row{sign_of(px_xy.value) * sign_of(py_xy.value),
                                sign_of(px_xz.value) * sign_of(pz_xz.value),
                                sign_of(py_yz.value) * sign_of(pz_yz.value), Origin::quasi};
              if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
            }

  std::sort(rows.begin(), rows.end(),
            [](const ProductTriple& a, const ProductTriple& b) { return lex_key(a) < lex_key(b); });
  return rows;
}

std::vector<ProductTriple> forbidden_rows() {
  std::vector<ProductTriple> rows = quasi_table();
  std::erase_if(rows, [](const ProductTriple& t) { return t.product() != -1; });
  return rows;
}

std::pair<int, int> quasi_bounds() {
  int lo = 3, hi = -3;
  for (const ProductTriple& t : quasi_table()) {
    lo = std::min(lo, t.sum());
    hi = std::max(hi, t.sum());
  }
  return {lo, hi};
}

std::array<ProductTriple, 4> classical_product_vertices() {
  return {ProductTriple{1, 1, 1, Origin::classical}, ProductTriple{1, -1, -1, Origin::classical},
          ProductTriple{-1, 1, -1, Origin::classical}, ProductTriple{-1, -1, 1, Origin::classical}};
}

RealizabilityResult is_classically_realizable(const Behavior& b, double tol) {
  // Vertices form a Hadamard system; inverting it gives the weights in
  // closed form.
  RealizabilityResult r;
  r.weights = {(1.0 + b.exy + b.exz + b.eyz) / 4.0, (1.0 + b.exy - b.exz - b.eyz) / 4.0,
               (1.0 - b.exy + b.exz - b.eyz) / 4.0, (1.0 - b.exy - b.exz + b.eyz) / 4.0};
  r.realizable = std::all_of(r.weights.begin(), r.weights.end(),
                             [tol](double w) { return w >= -tol; });
  return r;
}

}  // namespace qontext::inequality
