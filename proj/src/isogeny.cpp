#include "isogeny.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <tuple>

#include "common.hpp"
#include "counting.hpp"
#include "tate.hpp"

namespace ec23 {

// Velu codomain on the given model (no minimalization). Kernel h must be the
// monic x-polynomial of the kernel: one root per +-pair for odd ell, the
// single 2-torsion x-coordinate for ell = 2.
static Curve velu_raw(const Curve& E, const Invariants& I, const FPoly& h, long ell) {
  FieldElement t, w;
  if (ell == 2) {
    FieldElement x0 = -h[0];
    t = (FieldElement(6) * x0 * x0 + I.b2 * x0 + I.b4) * FieldElement(mpq_class(1, 2));
    w = x0 * t;
  } else {
    long n = fp_deg(h);
    FieldElement s1 = n >= 1 ? -h[n - 1] : FieldElement(0);
    FieldElement s2 = n >= 2 ? h[n - 2] : FieldElement(0);
    FieldElement s3 = n >= 3 ? -h[n - 3] : FieldElement(0);
    FieldElement p2 = s1 * s1 - FieldElement(2) * s2;            // sum of squares
    FieldElement p3 = s1 * p2 - s2 * s1 + FieldElement(3) * s3;  // sum of cubes
    t = FieldElement(6) * p2 + I.b2 * s1 + FieldElement(n) * I.b4;
    w = FieldElement(10) * p3 + FieldElement(2) * I.b2 * p2 + FieldElement(3) * I.b4 * s1 +
        FieldElement(n) * I.b6;
  }
  return {E.a1, E.a2, E.a3, E.a4 - FieldElement(5) * t,
          E.a6 - I.b2 * t - FieldElement(7) * w};
}

Curve velu(const Curve& E, const FPoly& kernel, long ell) {
  Curve Em = conductor_and_minimal_model(E).minimal;
  Invariants I = invariants(Em);
  FPoly h = kernel;
  fp_trim(h);
  long n = fp_deg(h);
  long expect = ell == 2 ? 1 : (ell - 1) / 2;
  if (n != expect || !(h[n] == FieldElement(1)))
    fail(Err::InvalidKernel, "velu: kernel degree/monic mismatch");
  FPoly psi = ell == 2 ? two_division_poly(Em) : division_poly_g(Em, (int)ell);
  FPoly rem = fp_rem(psi, h);
  fp_trim(rem);
  if (fp_deg(rem) >= 0) fail(Err::InvalidKernel, "velu: kernel does not divide division polynomial");
  Curve C = velu_raw(Em, I, h, ell);
  if (invariants(C).disc.is_zero()) fail(Err::InvalidKernel, "velu: singular output");
  return conductor_and_minimal_model(C).minimal;
}

// first `want` good primes of E by norm
static std::vector<PrimeIdeal> good_primes(const IdealHNF& cond, size_t want) {
  std::vector<PrimeIdeal> out;
  for (long p = 2; out.size() < want && p < 200; p++) {
    bool prime = true;
    for (long d = 2; d * d <= p; d++)
      if (p % d == 0) { prime = false; break; }
    if (!prime) continue;
    for (const PrimeIdeal& q : factor_rational_prime(p)) {
      if (valuation(cond, q) == 0) out.push_back(q);
      if (out.size() >= want) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.norm() < b.norm() || (a.norm() == b.norm() && a.ideal < b.ideal);
  });
  while (out.size() > want) out.pop_back();
  return out;
}

std::vector<FPoly> kernel_polynomials(const Curve& E, long ell) {
  if (ell > 1000) fail(Err::LimitExceeded, "kernel_polynomials: degree too large");
  GlobalModel gm = conductor_and_minimal_model(E);
  const Curve& Em = gm.minimal;
  Invariants I = invariants(Em);
  std::vector<FPoly> out;

  std::vector<FPoly> candidates;
  if (ell == 2) {
    for (const FieldElement& x0 : roots_in_F(two_division_poly(Em)))
      candidates.push_back({-x0, FieldElement(1)});
  } else {
    long n = (ell - 1) / 2;
    FFactorization fac = fp_factor(division_poly_g(Em, (int)ell), (int)n);
    std::vector<FPoly> parts;
    for (auto& [g, m] : fac.factors)
      for (int i = 0; i < m; i++) parts.push_back(g);
    std::sort(parts.begin(), parts.end(), [](const FPoly& a, const FPoly& b) {
      if (fp_deg(a) != fp_deg(b)) return fp_deg(a) < fp_deg(b);
      for (int i = fp_deg(a); i >= 0; i--) {
        int c = a[i].cmp(b[i]);
        if (c) return c < 0;
      }
      return false;
    });
    // subset products with degree sum exactly n
    long enumerated = 0;
    std::vector<size_t> pick;
    auto rec = [&](auto&& self, size_t from, long need) -> void {
      if (need == 0) {
        FPoly h = {FieldElement(1)};
        for (size_t i : pick) h = fp_mul(h, parts[i]);
        candidates.push_back(h);
        return;
      }
      if (++enumerated > 200000) fail(Err::LimitExceeded, "kernel_polynomials: factor subset blowup");
      for (size_t i = from; i < parts.size(); i++) {
        if (fp_deg(parts[i]) > need) break; // sorted by degree
        pick.push_back(i);
        self(self, i + 1, need - fp_deg(parts[i]));
        pick.pop_back();
      }
    };
    rec(rec, 0, n);
  }

  // accept candidates whose Velu image is a curve with the same conductor
  // and matching Frobenius data at 3 good primes
  std::vector<PrimeIdeal> qs = good_primes(gm.conductor, 3);
  std::vector<mpz_class> ap0;
  for (const PrimeIdeal& q : qs) ap0.push_back(count_points(Em, q).ap);
  for (const FPoly& h : candidates) {
    Curve C = velu_raw(Em, I, h, ell);
    if (invariants(C).disc.is_zero()) continue;
    GlobalModel gc;
    try {
      gc = conductor_and_minimal_model(C);
    } catch (const Error&) {
      continue;
    }
    if (!(gc.conductor == gm.conductor)) continue;
    bool ok = true;
    for (size_t i = 0; i < qs.size() && ok; i++)
      ok = count_points(gc.minimal, qs[i]).ap == ap0[i];
    if (ok) out.push_back(h);
  }

  std::sort(out.begin(), out.end(), [](const FPoly& a, const FPoly& b) {
    if (fp_deg(a) != fp_deg(b)) return fp_deg(a) < fp_deg(b);
    for (int i = fp_deg(a); i >= 0; i--) {
      int c = a[i].cmp(b[i]);
      if (c) return c < 0;
    }
    return false;
  });
  return out;
}

IsogenyClassGraph isogeny_class(const Curve& E, int cap) {
  IsogenyClassGraph G;
  GlobalModel gm = conductor_and_minimal_model(E);
  G.conductor = gm.conductor;
  G.report = reducible_primes(gm.minimal);
  std::vector<long> degs;
  for (const mpz_class& p : G.report.S_prime) degs.push_back(p.get_si());

  std::vector<Curve> verts{gm.minimal};
  std::set<std::tuple<int, int, long>> edgeset;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    Curve Ei = verts[i];
    for (long ell : degs) {
      for (const FPoly& h : kernel_polynomials(Ei, ell)) {
        Curve C = velu(Ei, h, ell);
        int j = -1;
        for (size_t k = 0; k < verts.size() && j < 0; k++)
          if (verts[k] == C || is_isomorphic(verts[k], C)) j = (int)k;
        if (j < 0) {
          if ((int)verts.size() >= cap)
            fail(Err::ClassSizeLimit, "isogeny_class: closure exceeds vertex cap");
          verts.push_back(C);
          j = (int)verts.size() - 1;
          queue.push_back(j);
        }
        edgeset.insert({std::min(i, j), std::max(i, j), ell});
      }
    }
  }

  // deterministic order: lexicographic on canonical models
  std::vector<int> order(verts.size());
  for (size_t i = 0; i < verts.size(); i++) order[i] = (int)i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return verts[x].cmp(verts[y]) < 0; });
  std::vector<int> rank(verts.size());
  for (size_t i = 0; i < order.size(); i++) rank[order[i]] = (int)i;
  for (int i : order) G.vertices.push_back(verts[i]);
  std::set<long> degseen;
  for (auto& [i, j, ell] : edgeset) {
    int x = rank[i], y = rank[j];
    G.edges.push_back({std::min(x, y), std::max(x, y), ell});
    degseen.insert(ell);
  }
  std::sort(G.edges.begin(), G.edges.end(), [](const IsogenyEdge& a, const IsogenyEdge& b) {
    return std::tie(a.from, a.to, a.degree) < std::tie(b.from, b.to, b.degree);
  });
  G.isogeny_primes.assign(degseen.begin(), degseen.end());
  return G;
}

std::string graph_dot(const IsogenyClassGraph& G) {
  std::ostringstream os;
  os << "graph \"" << (G.label.empty() ? "isogeny_class" : G.label) << "\" {\n";
  os << "  node [shape=circle fontsize=10];\n";
  for (size_t i = 0; i < G.vertices.size(); i++)
    os << "  v" << i << " [label=\"" << G.vertices[i].str() << "\"];\n";
  for (const IsogenyEdge& e : G.edges) {
    os << "  v" << e.from << " -- v" << e.to;
    if (e.degree == 2)
      os << " [style=solid]";
    else if (e.degree == 3)
      os << " [style=dashed]";
    else
      os << " [label=\"" << e.degree << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace ec23
