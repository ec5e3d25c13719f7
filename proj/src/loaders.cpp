#include <fstream>
#include <sstream>

#include "ringlab/constructions.hpp"
#include "ringlab/expr.hpp"

// Plain-text table loaders. Both formats share the same shape: a first line
// naming the kind ("algebra" or "morita"), then "key = values" lines with
// decimal integers, row-major tables, and '#' comments. Repeated keys append,
// so long tables may be split across lines.

namespace ringlab {

namespace {

struct KvFile {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> entries;

  bool has(const std::string& key) const {
    for (const auto& [k, v] : entries) {
      if (k == key) return true;
    }
    return false;
  }

  std::string text(const std::string& key) const {
    for (const auto& [k, v] : entries) {
      if (k == key) return v;
    }
    throw RingError("data file is missing key '" + key + "'");
  }

  std::vector<int64_t> ints(const std::string& key) const {
    std::vector<int64_t> out;
    bool found = false;
    for (const auto& [k, v] : entries) {
      if (k != key) continue;
      found = true;
      std::istringstream is(v);
      int64_t x;
      while (is >> x) out.push_back(x);
    }
    if (!found) throw RingError("data file is missing key '" + key + "'");
    return out;
  }

  int64_t num(const std::string& key) const {
    auto v = ints(key);
    if (v.size() != 1) throw RingError("key '" + key + "' needs exactly one integer");
    return v[0];
  }
};

KvFile read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RingError("cannot open data file '" + path + "'");
  KvFile f;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (f.kind.empty()) {
        f.kind = line;
        continue;
      }
      throw RingError("malformed line in data file '" + path + "': " + line);
    }
    f.entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  if (f.kind.empty()) throw RingError("data file '" + path + "' has no kind header");
  return f;
}

std::vector<Index> to_index(const std::vector<int64_t>& v) {
  return std::vector<Index>(v.begin(), v.end());
}

BimoduleTable load_bimodule(const KvFile& f, const std::string& prefix, int64_t left_order,
                            int64_t right_order) {
  BimoduleTable m;
  m.order = f.num(prefix + ".order");
  m.zero = f.has(prefix + ".zero") ? static_cast<Index>(f.num(prefix + ".zero")) : 0;
  m.add = to_index(f.ints(prefix + ".add"));
  m.neg = to_index(f.ints(prefix + ".neg"));
  m.left = to_index(f.ints(prefix + ".left"));
  m.right = to_index(f.ints(prefix + ".right"));
  m.right_cols = right_order;
  if (m.add.size() != static_cast<size_t>(m.order) * m.order ||
      m.neg.size() != static_cast<size_t>(m.order) ||
      m.left.size() != static_cast<size_t>(left_order) * m.order ||
      m.right.size() != static_cast<size_t>(m.order) * right_order) {
    throw RingError("bimodule '" + prefix + "' table dimensions are inconsistent");
  }
  return m;
}

}  // namespace

AlgebraPresentation alg_from_file(const std::string& path) {
  KvFile f = read_kv_file(path);
  if (f.kind != "algebra") throw RingError("'" + path + "' is not an algebra file");
  AlgebraPresentation a;
  a.modulus = f.num("modulus");
  a.rank = static_cast<int>(f.num("rank"));
  a.unit = f.ints("unit");
  auto flat = f.ints("sc");
  if (static_cast<int64_t>(flat.size()) !=
      static_cast<int64_t>(a.rank) * a.rank * a.rank) {
    throw RingError("algebra file needs rank^3 structure constants, got " +
                    std::to_string(flat.size()));
  }
  a.sc.resize(static_cast<size_t>(a.rank) * a.rank);
  for (int i = 0; i < a.rank * a.rank; ++i) {
    a.sc[i].assign(flat.begin() + static_cast<int64_t>(i) * a.rank,
                   flat.begin() + static_cast<int64_t>(i + 1) * a.rank);
  }
  for (int i = 0; i < a.rank; ++i) a.basis_labels.push_back("e" + std::to_string(i));
  a.name = "ALG(@" + path + ")";
  validate_algebra(a);
  return a;
}

MoritaData morita_from_file(const std::string& path, const Limits& lim) {
  KvFile f = read_kv_file(path);
  if (f.kind != "morita") throw RingError("'" + path + "' is not a morita data file");
  MoritaData d;
  d.A = build_ring(f.text("A"), lim);
  d.B = build_ring(f.text("B"), lim);
  d.M = load_bimodule(f, "M", d.A->order(), d.B->order());
  d.N = load_bimodule(f, "N", d.B->order(), d.A->order());
  d.phi = to_index(f.ints("phi"));
  d.psi = to_index(f.ints("psi"));
  if (d.phi.size() != static_cast<size_t>(d.M.order) * d.N.order ||
      d.psi.size() != static_cast<size_t>(d.N.order) * d.M.order) {
    throw RingError("morita pairing tables have inconsistent dimensions");
  }
  d.name = "MOR(@" + path + ")";
  return d;
}

}  // namespace ringlab
