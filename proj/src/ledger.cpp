#include "ledger.hpp"

#include <algorithm>
#include <fstream>

#include "common.hpp"

namespace ec23 {

long cusp_count(const IdealHNF& n) {
  if (n.norm() == 0) fail(Err::ZeroIdeal, "cusp_count: zero ideal");
  long c = 0;
  for (const IdealHNF& d : ideal_divisors(n)) {
    IdealHNF g = ideal_add(d, ideal_quotient(n, d));
    c += phi_u(g).get_si();
  }
  return c;
}

LevelRecord eisenstein_and_cuspidal(LevelRecord rec) {
  rec.c = cusp_count(rec.level);
  rec.eis_rank = 2 * rec.c - 1;
  if (rec.total_dim)
    rec.cusp_dim = *rec.total_dim - rec.eis_rank;
  return rec;
}

std::map<IdealHNF, long> newspace_ledger(const std::map<IdealHNF, LevelRecord>& records) {
  // order the levels by (norm, HNF) so divisors precede multiples
  std::vector<const LevelRecord*> levels;
  for (auto& [lvl, rec] : records) levels.push_back(&rec);
  std::sort(levels.begin(), levels.end(), [](const LevelRecord* a, const LevelRecord* b) {
    mpz_class na = a->level.norm(), nb = b->level.norm();
    return na < nb || (na == nb && a->level < b->level);
  });

  std::map<IdealHNF, long> out;
  for (const LevelRecord* rec : levels) {
    LevelRecord filled = eisenstein_and_cuspidal(*rec);
    if (!filled.cusp_dim)
      fail(Err::MissingTotalDim, "newspace_ledger: level " + filled.level.str() + " has no total_dim");
    long nd = *filled.cusp_dim;
    for (const IdealHNF& d : ideal_divisors(rec->level)) {
      if (d == rec->level) continue;
      auto it = out.find(d);
      if (it == out.end() || it->second == 0) continue;
      long sigma0 = (long)ideal_divisors(ideal_quotient(rec->level, d)).size();
      nd -= it->second * sigma0;
    }
    out[rec->level] = nd;
  }
  return out;
}

std::map<IdealHNF, LevelRecord> ingest_dims(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::IoError, "ingest_dims: cannot open " + path);
  std::map<IdealHNF, LevelRecord> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty() || line[0] == '#') continue;
    // exactly three tab-separated fields
    std::vector<std::string> parts;
    size_t pos = 0;
    while (true) {
      size_t tab = line.find('\t', pos);
      parts.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (parts.size() != 3)
      fail(Err::Parse, "ingest_dims: line " + std::to_string(lineno) + ": expected generator<TAB>norm<TAB>total_dim");
    LevelRecord rec;
    try {
      rec.level = IdealHNF::parse(parts[0]);
      mpz_class want(parts[1]);
      if (abs(want) != rec.level.norm())
        fail(Err::Parse, "ingest_dims: line " + std::to_string(lineno) + ": norm checksum mismatch");
      rec.total_dim = std::stol(parts[2]);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(Err::Parse, "ingest_dims: line " + std::to_string(lineno) + ": bad field");
    }
    if (out.count(rec.level))
      fail(Err::DuplicateLevel, "ingest_dims: line " + std::to_string(lineno) + ": duplicate level " + rec.level.str());
    out[rec.level] = rec;
  }
  return out;
}

} // namespace ec23
