#include "dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "common.hpp"
#include "tate.hpp"

namespace ec23 {

std::optional<std::pair<long, long>> cm_check(const FieldElement& j) {
  struct Row {
    long D, f;
    FieldElement j;
  };
  static const std::vector<Row> table = {
      {-3, 3, FieldElement(-12288000)},
      {-3, 2, FieldElement(54000)},
      {-3, 1, FieldElement(0)},
      {-4, 2, FieldElement(287496)},
      {-4, 1, FieldElement(1728)},
      {-7, 2, FieldElement(16581375)},
      {-7, 1, FieldElement(-3375)},
      {-8, 1, FieldElement(8000)},
      {-11, 1, FieldElement(-32768)},
      {-19, 1, FieldElement(-884736)},
      {-43, 1, FieldElement(-884736000)},
      {-67, 1, FieldElement(-147197952000)},
      {-163, 1, FieldElement(mpq_class("-262537412640768000"))},
      {-23, 2, FieldElement(mpq_class("5023465669375"), mpq_class("-6654675189750"),
                            mpq_class("3792102031375"))},
      {-23, 1, FieldElement(mpq_class("-1437500"), mpq_class("1904875"),
                            mpq_class("-1084125"))},
  };
  for (const Row& r : table)
    if (r.j == j) return std::make_pair(r.D, r.f);
  return std::nullopt;
}

static std::string letters(long k) { // 0 -> a, 25 -> z, 26 -> aa
  std::string s;
  do {
    s.insert(s.begin(), char('a' + k % 26));
    k = k / 26 - 1;
  } while (k >= 0);
  return s;
}

Dataset assign_labels(Dataset ds) {
  if (ds.records.empty()) return ds;
  // group records by class id, keeping per-class graphs when present
  std::map<std::string, std::vector<CurveRecord>> groups;
  std::map<std::string, const IsogenyClassGraph*> graphs;
  for (const CurveRecord& r : ds.records) groups[r.class_id].push_back(r);
  for (const IsogenyClassGraph& g : ds.classes)
    if (!g.label.empty()) graphs[g.label] = &g;

  // global (norm, HNF) index over all ideals up to the largest conductor norm
  mpz_class maxnorm = 1;
  for (const CurveRecord& r : ds.records) maxnorm = std::max(maxnorm, r.norm);
  std::map<IdealHNF, long> index;
  {
    long i = 0;
    for (const IdealHNF& I : ideals_of_norm_up_to(maxnorm.get_si())) index[I] = ++i;
  }

  struct Cls {
    IdealHNF cond;
    mpz_class norm;
    std::vector<CurveRecord> recs;
    const IsogenyClassGraph* graph = nullptr;
  };
  std::vector<Cls> classes;
  for (auto& [id, recs] : groups) {
    Cls c;
    c.cond = recs[0].conductor;
    c.norm = recs[0].norm;
    c.recs = recs;
    std::sort(c.recs.begin(), c.recs.end(),
              [](const CurveRecord& a, const CurveRecord& b) { return a.ainvs.cmp(b.ainvs) < 0; });
    auto it = graphs.find(id);
    if (it != graphs.end()) c.graph = it->second;
    classes.push_back(std::move(c));
  }
  std::sort(classes.begin(), classes.end(), [](const Cls& a, const Cls& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    if (!(a.cond == b.cond)) return a.cond < b.cond;
    return a.recs[0].ainvs.cmp(b.recs[0].ainvs) < 0;
  });

  Dataset out;
  long at_level = 0;
  for (size_t i = 0; i < classes.size(); i++) {
    Cls& c = classes[i];
    at_level = (i > 0 && classes[i - 1].cond == c.cond) ? at_level + 1 : 0;
    std::string cid = std::to_string(index[c.cond]) + letters(at_level);
    IsogenyClassGraph g;
    if (c.graph) g = *c.graph;
    g.label = cid;
    g.conductor = c.cond;
    if (g.vertices.empty())
      for (const CurveRecord& r : c.recs) g.vertices.push_back(r.ainvs);
    out.classes.push_back(std::move(g));
    for (size_t k = 0; k < c.recs.size(); k++) {
      CurveRecord r = c.recs[k];
      r.class_id = cid;
      r.label = cid + std::to_string(k + 1);
      out.records.push_back(std::move(r));
    }
    out.level_index[c.cond] = index[c.cond];
  }
  return out;
}

Dataset dataset_from_classes(const std::vector<IsogenyClassGraph>& classes) {
  Dataset ds;
  for (size_t i = 0; i < classes.size(); i++) {
    const IsogenyClassGraph& g = classes[i];
    IsogenyClassGraph gg = g;
    gg.label = "?" + std::to_string(i); // provisional id for grouping
    for (const Curve& E : g.vertices) {
      CurveRecord r;
      r.conductor = g.conductor;
      r.norm = g.conductor.norm();
      r.ainvs = E;
      r.torsion = torsion_subgroup(E);
      r.cm_flag = cm_check(invariants(E).j()).has_value();
      r.class_id = gg.label;
      ds.records.push_back(std::move(r));
    }
    ds.classes.push_back(std::move(gg));
  }
  return assign_labels(std::move(ds));
}

static std::string torsion_str(const TorsionStructure& t) { return t.str(); }

static TorsionStructure torsion_parse(const std::string& s) {
  TorsionStructure t;
  if (s == "0") return t;
  size_t x = s.find(" x ");
  try {
    if (x == std::string::npos) {
      if (s.empty() || s[0] != 'Z') throw std::invalid_argument(s);
      t.m = std::stol(s.substr(1));
    } else {
      if (s[0] != 'Z' || s[x + 3] != 'Z') throw std::invalid_argument(s);
      t.n = std::stol(s.substr(1, x - 1));
      t.m = std::stol(s.substr(x + 4));
    }
  } catch (const std::exception&) {
    fail(Err::Parse, "bad torsion string: " + s);
  }
  return t;
}

static std::string ainvs_str(const Curve& E) {
  return "[" + E.a1.str() + ";" + E.a2.str() + ";" + E.a3.str() + ";" + E.a4.str() + ";" +
         E.a6.str() + "]";
}

void dataset_write(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Err::IoError, "dataset_write: cannot open " + path);
  for (const CurveRecord& r : ds.records) {
    out << r.label << '\t' << principal_generator(r.conductor).str() << '\t' << r.norm << '\t'
        << ainvs_str(r.ainvs) << '\t' << torsion_str(r.torsion) << '\t'
        << (r.rank ? std::to_string(*r.rank) : "") << '\t' << r.class_id << '\n';
  }
  if (!out.good()) fail(Err::IoError, "dataset_write: write failure on " + path);
}

Dataset dataset_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::IoError, "dataset_read: cannot open " + path);
  Dataset ds;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> parts;
    size_t pos = 0;
    while (true) {
      size_t tab = line.find('\t', pos);
      parts.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (parts.size() != 7)
      fail(Err::Parse, "dataset_read: line " + std::to_string(lineno) + ": expected 7 fields");
    CurveRecord r;
    try {
      r.label = parts[0];
      r.conductor = IdealHNF::principal(FieldElement::parse(parts[1]));
      r.norm = mpz_class(parts[2]);
      std::string a = parts[3];
      if (a.size() < 2 || a.front() != '[' || a.back() != ']') throw std::invalid_argument(a);
      a = a.substr(1, a.size() - 2);
      for (char& ch : a)
        if (ch == ';') ch = ',';
      r.ainvs = Curve::parse("[" + a + "]");
      r.torsion = torsion_parse(parts[4]);
      if (!parts[5].empty()) r.rank = std::stol(parts[5]);
      r.class_id = parts[6];
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(Err::Parse, "dataset_read: line " + std::to_string(lineno) + ": bad field");
    }
    if (r.conductor.norm() != abs(r.norm))
      fail(Err::Parse, "dataset_read: line " + std::to_string(lineno) + ": norm checksum mismatch");
    ds.records.push_back(std::move(r));
  }
  // vertex-only class graphs in record order
  std::map<std::string, size_t> where;
  for (const CurveRecord& r : ds.records) {
    auto it = where.find(r.class_id);
    if (it == where.end()) {
      IsogenyClassGraph g;
      g.label = r.class_id;
      g.conductor = r.conductor;
      g.vertices.push_back(r.ainvs);
      where[r.class_id] = ds.classes.size();
      ds.classes.push_back(std::move(g));
    } else {
      ds.classes[it->second].vertices.push_back(r.ainvs);
    }
    if (!ds.level_index.count(r.conductor)) ds.level_index[r.conductor] = 0;
  }
  // recompute the global indices for the levels present
  mpz_class maxnorm = 1;
  for (const CurveRecord& r : ds.records) maxnorm = std::max(maxnorm, r.norm);
  long i = 0;
  for (const IdealHNF& I : ideals_of_norm_up_to(maxnorm.get_si())) {
    ++i;
    auto it = ds.level_index.find(I);
    if (it != ds.level_index.end()) it->second = i;
  }
  return ds;
}

TablesReport emit_tables(const Dataset& ds) {
  TablesReport rep;
  // per class: rank annotation (first annotated record), size, degrees
  struct ClsInfo {
    std::optional<long> rank;
    long size = 0;
    std::set<long> degs;
    mpz_class norm;
    std::string first_label;
    std::string first_curve;
  };
  std::map<std::string, ClsInfo> cls;
  for (const IsogenyClassGraph& g : ds.classes) {
    ClsInfo& c = cls[g.label];
    c.size = (long)g.vertices.size();
    c.norm = g.conductor.norm();
    for (const IsogenyEdge& e : g.edges) c.degs.insert(e.degree);
  }
  for (const CurveRecord& r : ds.records) {
    ClsInfo& c = cls[r.class_id];
    if (!c.rank && r.rank) c.rank = r.rank;
    if (c.first_label.empty()) {
      c.first_label = r.label;
      c.first_curve = r.ainvs.str();
    }
  }

  // ranks
  std::map<long, TablesReport::RankRow> ranks; // key -1 for n/a
  for (auto& [id, c] : cls) {
    long key = c.rank ? *c.rank : -1;
    TablesReport::RankRow& row = ranks[key];
    if (c.rank) row.rank = *c.rank;
    row.n_isog++;
    row.n_isom += c.size;
    if (row.min_norm == 0 || c.norm < row.min_norm) row.min_norm = c.norm;
  }
  for (auto& [k, row] : ranks)
    if (k >= 0) rep.by_rank.push_back(row);
  if (ranks.count(-1)) rep.by_rank.push_back(ranks[-1]); // unannotated last

  // class sizes
  for (auto& [id, c] : cls) rep.class_sizes[c.size]++;

  // isogeny degrees; example = minimal-label class showing the degree
  std::map<std::string, TablesReport::DegreeRow> degs;
  auto touch = [&](const std::string& key, const ClsInfo& c, long directed) {
    TablesReport::DegreeRow& row = degs[key];
    row.degree = key;
    row.n_isog++;
    row.n_isom += directed;
    if (row.example.empty() || c.norm < row.norm) {
      row.example = c.first_curve;
      row.norm = c.norm;
    }
  };
  for (const IsogenyClassGraph& g : ds.classes) {
    const ClsInfo& c = cls[g.label];
    if (g.edges.empty() && c.size == 1) touch("None", c, 1);
    std::map<long, long> dirs;
    for (const IsogenyEdge& e : g.edges) dirs[e.degree] += 2;
    for (auto& [d, cnt] : dirs) touch(std::to_string(d), c, cnt);
  }
  if (degs.count("None")) rep.by_degree.push_back(degs["None"]);
  std::vector<long> dvals;
  for (auto& [k, row] : degs)
    if (k != "None") dvals.push_back(std::stol(k));
  std::sort(dvals.begin(), dvals.end());
  for (long d : dvals) rep.by_degree.push_back(degs[std::to_string(d)]);

  // torsion structures, ordered by (order, larger cyclic part)
  std::map<std::pair<long, long>, TablesReport::TorsionRow> tors;
  for (const CurveRecord& r : ds.records) {
    auto key = std::make_pair(r.torsion.order(), r.torsion.m);
    TablesReport::TorsionRow& row = tors[key];
    row.torsion = r.torsion.str();
    row.n_isom++;
    if (row.example.empty() || r.norm < row.norm) {
      row.example = r.ainvs.str();
      row.norm = r.norm;
    }
  }
  for (auto& [k, row] : tors) rep.by_torsion.push_back(row);
  return rep;
}

std::string TablesReport::str() const {
  std::ostringstream os;
  os << "rank\t#isog\t#isom\tsmallest norm\n";
  for (const RankRow& r : by_rank)
    os << (r.rank ? std::to_string(*r.rank) : "n/a") << '\t' << r.n_isog << '\t' << r.n_isom
       << '\t' << r.min_norm.get_str() << '\n';
  os << "\nclass size\tnumber\n";
  for (auto& [size, count] : class_sizes) os << size << '\t' << count << '\n';
  os << "\ndegree\t#isog\t#directed\texample\tnorm\n";
  for (const DegreeRow& r : by_degree)
    os << r.degree << '\t' << r.n_isog << '\t' << r.n_isom << '\t' << r.example << '\t'
       << r.norm.get_str() << '\n';
  os << "\ntorsion\t#isom\texample\tnorm\n";
  for (const TorsionRow& r : by_torsion)
    os << r.torsion << '\t' << r.n_isom << '\t' << r.example << '\t' << r.norm.get_str() << '\n';
  return os.str();
}

void export_graph(const IsogenyClassGraph& G, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Err::IoError, "export_graph: cannot open " + path);
  out << graph_dot(G);
  if (!out.good()) fail(Err::IoError, "export_graph: write failure on " + path);
}

} // namespace ec23
