#include "linalg.hpp"

namespace ec23 {

static void row_submul(Row3& r, const mpz_class& q, const Row3& s) {
  for (int j = 0; j < 3; j++) r[j] -= q * s[j];
}

bool hnf3(std::vector<Row3> rows, Mat3& out) {
  size_t pivot = 0;
  for (int col = 0; col < 3 && pivot < rows.size(); col++) {
    // gcd elimination below the pivot in this column
    for (;;) {
      size_t best = rows.size();
      for (size_t i = pivot; i < rows.size(); i++) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() ||
            cmp(abs(rows[i][col]), abs(rows[best][col])) < 0)
          best = i;
      }
      if (best == rows.size()) break; // column exhausted
      std::swap(rows[pivot], rows[best]);
      bool clean = true;
      for (size_t i = pivot + 1; i < rows.size(); i++) {
        if (rows[i][col] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[pivot][col].get_mpz_t());
        row_submul(rows[i], q, rows[pivot]);
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) {
        if (rows[pivot][col] < 0)
          for (int j = 0; j < 3; j++) rows[pivot][j] = -rows[pivot][j];
        pivot++;
        break;
      }
    }
  }
  if (pivot < 3) return false;
  for (int j = 1; j < 3; j++) {
    for (int i = 0; i < j; i++) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][j].get_mpz_t(), rows[j][j].get_mpz_t());
      row_submul(rows[i], q, rows[j]);
    }
  }
  for (int i = 0; i < 3; i++) out[i] = rows[i];
  return true;
}

bool in_span(const Mat3& H, const Row3& v, Row3* coeffs) {
  Row3 t = v, z;
  for (int j = 0; j < 3; j++) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t[j].get_mpz_t(), H[j][j].get_mpz_t());
    if (r != 0) return false;
    z[j] = q;
    row_submul(t, q, H[j]);
  }
  if (coeffs) *coeffs = z;
  return true;
}

Row3 reduce_mod(const Mat3& H, Row3 v) {
  // top-down: later rows have zeros in the columns already fixed
  for (int j = 0; j < 3; j++) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v[j].get_mpz_t(), H[j][j].get_mpz_t());
    row_submul(v, q, H[j]);
  }
  return v;
}

std::optional<std::vector<mpz_class>> solve_in_span(const std::vector<Row3>& rows,
                                                    const Row3& target) {
  size_t n = rows.size();
  std::vector<Row3> work = rows;
  // transform[i] = coefficients of work[i] in terms of the input rows
  std::vector<std::vector<mpz_class>> tr(n, std::vector<mpz_class>(n, 0));
  for (size_t i = 0; i < n; i++) tr[i][i] = 1;

  size_t pivot = 0;
  std::array<int, 3> pivcol{-1, -1, -1};
  for (int col = 0; col < 3 && pivot < n; col++) {
    for (;;) {
      size_t best = n;
      for (size_t i = pivot; i < n; i++) {
        if (work[i][col] == 0) continue;
        if (best == n || cmp(abs(work[i][col]), abs(work[best][col])) < 0) best = i;
      }
      if (best == n) break;
      std::swap(work[pivot], work[best]);
      std::swap(tr[pivot], tr[best]);
      bool clean = true;
      for (size_t i = pivot + 1; i < n; i++) {
        if (work[i][col] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), work[i][col].get_mpz_t(), work[pivot][col].get_mpz_t());
        row_submul(work[i], q, work[pivot]);
        for (size_t k = 0; k < n; k++) tr[i][k] -= q * tr[pivot][k];
        if (work[i][col] != 0) clean = false;
      }
      if (clean) {
        pivcol[pivot] = col;
        pivot++;
        break;
      }
    }
  }
  // forward-substitute target against the staircase rows
  Row3 t = target;
  std::vector<mpz_class> z(n, 0);
  for (size_t i = 0; i < pivot; i++) {
    int col = pivcol[i];
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t[col].get_mpz_t(), work[i][col].get_mpz_t());
    if (r != 0) return std::nullopt;
    row_submul(t, q, work[i]);
    for (size_t k = 0; k < n; k++) z[k] += q * tr[i][k];
  }
  if (t[0] != 0 || t[1] != 0 || t[2] != 0) return std::nullopt;
  return z;
}

} // namespace ec23
