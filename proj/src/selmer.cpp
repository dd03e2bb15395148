#include "selmer.hpp"

#include <algorithm>
#include <set>

namespace ec23 {

FieldElement SelmerBasis::rep(const std::vector<long>& e) const {
  if (e.size() != gens.size()) fail(Err::Internal, "SelmerBasis::rep: exponent arity mismatch");
  FieldElement x(1);
  for (size_t i = 0; i < gens.size(); ++i)
    for (long k = 0; k < e[i]; ++k) x *= gens[i];
  return x;
}

SelmerBasis selmer_group(std::vector<PrimeIdeal> S, long m, long project_from) {
  if (m < 1) fail(Err::Internal, "selmer_group: m must be >= 1");
  if (project_from != 0 && (project_from <= 0 || project_from % m != 0))
    fail(Err::Internal, "selmer_group: project_from must be a positive multiple of m");

  SelmerBasis B;
  B.S = std::move(S);
  B.m = m;
  B.gens.push_back(FieldElement(-1));
  B.orders.push_back(m % 2 == 0 ? 2 : 1);
  B.gens.push_back(FieldElement::gen());
  B.orders.push_back(m);
  for (const PrimeIdeal& p : B.S) {
    B.gens.push_back(p.pi);
    B.orders.push_back(m);
  }

  size_t k = B.gens.size();
  // the image of F(S, project_from) -> F(S, m) is spanned by the classes of
  // the same global generators, one exponent unit vector each
  std::set<std::vector<long>> span;
  std::vector<long> zero(k, 0);
  span.insert(zero);
  if (project_from == 0) {
    std::vector<long> e(k, 0);
    for (;;) {
      span.insert(e);
      size_t i = 0;
      while (i < k && ++e[i] == B.orders[i]) e[i++] = 0;
      if (i == k) break;
    }
  } else {
    bool grew = true;
    while (grew) {
      grew = false;
      std::set<std::vector<long>> next = span;
      for (const std::vector<long>& e : span)
        for (size_t i = 0; i < k; ++i) {
          std::vector<long> f = e;
          f[i] = (f[i] + 1) % B.orders[i];
          if (next.insert(f).second) grew = true;
        }
      span.swap(next);
    }
  }
  B.classes.assign(span.begin(), span.end());
  return B;
}

} // namespace ec23
