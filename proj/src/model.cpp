#include "agpsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "agpsched/errors.hpp"

namespace agpsched {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& s, const std::string& where) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ValidationError(where + ": expected a real number, got '" + s + "'");
  }
  if (pos != s.size()) throw ValidationError(where + ": trailing characters in number '" + s + "'");
  if (!std::isfinite(v)) throw ValidationError(where + ": non-finite value");
  return v;
}

int parse_int(const std::string& s, const std::string& where) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw ValidationError(where + ": expected an integer, got '" + s + "'");
  }
  if (pos != s.size()) throw ValidationError(where + ": trailing characters in integer '" + s + "'");
  return static_cast<int>(v);
}

void validate(const AnnealingModel& m) {
  if (m.n_sites <= 0) throw ValidationError("model: n_sites must be positive");
  std::set<std::pair<int, int>> seen;
  for (const auto& c : m.couplings) {
    if (c.i < 0 || c.j >= m.n_sites || c.i >= c.j)
      throw ValidationError("model: coupling (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                            ") violates 0 <= i < j < n_sites");
    if (!seen.insert({c.i, c.j}).second)
      throw ValidationError("model: duplicate coupling (" + std::to_string(c.i) + "," +
                            std::to_string(c.j) + ")");
    if (!std::isfinite(c.strength)) throw ValidationError("model: non-finite coupling strength");
  }
  std::set<int> fseen;
  for (const auto& f : m.fields_z) {
    if (f.site < 0 || f.site >= m.n_sites)
      throw ValidationError("model: field site " + std::to_string(f.site) + " out of range");
    if (!fseen.insert(f.site).second)
      throw ValidationError("model: duplicate field on site " + std::to_string(f.site));
    if (!std::isfinite(f.strength)) throw ValidationError("model: non-finite field strength");
  }
}

// Accumulate bond strengths; periodic wrap on small rings can revisit a pair
// (e.g. next-nearest bonds at L = 4), which doubles that bond.
class BondAccumulator {
 public:
  void add(int a, int b, double v) {
    if (a == b) return;  // self-bond from wrap at tiny L contributes a constant; drop
    if (a > b) std::swap(a, b);
    bonds_[{a, b}] += v;
  }
  std::vector<Coupling> take() const {
    std::vector<Coupling> out;
    out.reserve(bonds_.size());
    for (const auto& [key, v] : bonds_) out.push_back({key.first, key.second, v});
    return out;
  }

 private:
  std::map<std::pair<int, int>, double> bonds_;
};

}  // namespace

std::string AnnealingModel::tag() const {
  std::ostringstream os;
  const char* b = boundary == Boundary::kPeriodic ? "periodic" : "open";
  switch (family) {
    case ModelFamily::kTfim: os << "tfim(J=" << J << ",L=" << n_sites << "," << b << ")"; break;
    case ModelFamily::kAnnni:
      os << "annni(J=" << J << ",k=" << k << ",L=" << n_sites << "," << b << ")";
      break;
    case ModelFamily::kGeneric:
      os << "generic(L=" << n_sites << ",couplings=" << couplings.size()
         << ",fields=" << fields_z.size() << ")";
      break;
  }
  return os.str();
}

AnnealingModel make_tfim(int n_sites, double J, Boundary boundary) {
  if (boundary == Boundary::kPeriodic && n_sites < 2)
    throw ValidationError("tfim: periodic boundary needs n_sites >= 2");
  AnnealingModel m;
  m.n_sites = n_sites;
  m.boundary = boundary;
  m.family = ModelFamily::kTfim;
  m.J = J;
  BondAccumulator acc;
  for (int i = 0; i + 1 < n_sites; ++i) acc.add(i, i + 1, J);
  if (boundary == Boundary::kPeriodic && n_sites > 1) acc.add(n_sites - 1, 0, J);
  m.couplings = acc.take();
  validate(m);
  return m;
}

AnnealingModel make_annni(int n_sites, double J, double k, Boundary boundary) {
  if (boundary == Boundary::kPeriodic && n_sites < 3)
    throw ValidationError("annni: periodic boundary needs n_sites >= 3");
  AnnealingModel m;
  m.n_sites = n_sites;
  m.boundary = boundary;
  m.family = ModelFamily::kAnnni;
  m.J = J;
  m.k = k;
  BondAccumulator acc;
  const int last = boundary == Boundary::kPeriodic ? n_sites : n_sites - 1;
  for (int i = 0; i < last; ++i) acc.add(i, (i + 1) % n_sites, J);
  const int last2 = boundary == Boundary::kPeriodic ? n_sites : n_sites - 2;
  // +k Z Z in H_P means J_{i,i+2} = -k in the canonical -J_ij convention.
  for (int i = 0; i < last2; ++i) acc.add(i, (i + 2) % n_sites, -k);
  m.couplings = acc.take();
  validate(m);
  return m;
}

AnnealingModel make_generic(int n_sites, std::vector<Coupling> couplings,
                            std::vector<LocalField> fields, Boundary boundary) {
  AnnealingModel m;
  m.n_sites = n_sites;
  m.boundary = boundary;
  m.family = ModelFamily::kGeneric;
  m.couplings = std::move(couplings);
  m.fields_z = std::move(fields);
  std::sort(m.couplings.begin(), m.couplings.end(), [](const Coupling& a, const Coupling& b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  std::sort(m.fields_z.begin(), m.fields_z.end(),
            [](const LocalField& a, const LocalField& b) { return a.site < b.site; });
  validate(m);
  return m;
}

AnnealingModel parse_model(std::string_view text, const std::string& source_name) {
  std::string family, boundary = "periodic";
  std::map<std::string, std::string> scalars;
  std::vector<Coupling> couplings;
  std::vector<LocalField> fields;

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ValidationError(where + ": empty key or value");

    if (key == "coupling") {
      std::istringstream row(value);
      std::string si, sj, sv;
      if (!(row >> si >> sj >> sv) || !(row >> std::ws).eof())
        throw ValidationError(where + ": coupling rows are 'coupling = i j J'");
      couplings.push_back({parse_int(si, where), parse_int(sj, where), parse_real(sv, where)});
    } else if (key == "field") {
      std::istringstream row(value);
      std::string si, sv;
      if (!(row >> si >> sv) || !(row >> std::ws).eof())
        throw ValidationError(where + ": field rows are 'field = i h'");
      fields.push_back({parse_int(si, where), parse_real(sv, where)});
    } else if (key == "family" || key == "boundary" || key == "n_sites" || key == "J" ||
               key == "k") {
      if (!scalars.emplace(key, value).second)
        throw ValidationError(where + ": duplicate key '" + key + "'");
      if (key == "family") family = value;
      if (key == "boundary") boundary = value;
    } else {
      throw ValidationError(where + ": unknown key '" + key + "'");
    }
  }

  auto require = [&](const char* key) -> std::string {
    auto it = scalars.find(key);
    if (it == scalars.end())
      throw ValidationError(source_name + ": missing required key '" + std::string(key) + "'");
    return it->second;
  };
  auto forbid = [&](const char* key) {
    if (scalars.count(key))
      throw ValidationError(source_name + ": key '" + std::string(key) + "' not valid for family '" +
                            family + "'");
  };

  if (family.empty()) throw ValidationError(source_name + ": missing required key 'family'");
  Boundary bnd;
  if (boundary == "periodic")
    bnd = Boundary::kPeriodic;
  else if (boundary == "open")
    bnd = Boundary::kOpen;
  else
    throw ValidationError(source_name + ": boundary must be 'periodic' or 'open'");
  const int n = parse_int(require("n_sites"), source_name);

  if (family == "tfim") {
    forbid("k");
    if (!couplings.empty() || !fields.empty())
      throw ValidationError(source_name + ": tfim takes no coupling/field rows");
    return make_tfim(n, parse_real(require("J"), source_name), bnd);
  }
  if (family == "annni") {
    if (!couplings.empty() || !fields.empty())
      throw ValidationError(source_name + ": annni takes no coupling/field rows");
    return make_annni(n, parse_real(require("J"), source_name),
                      parse_real(require("k"), source_name), bnd);
  }
  if (family == "generic") {
    forbid("J");
    forbid("k");
    return make_generic(n, std::move(couplings), std::move(fields), bnd);
  }
  throw ValidationError(source_name + ": unknown family '" + family + "'");
}

AnnealingModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), path.string());
}

std::string serialize_model(const AnnealingModel& m) {
  std::ostringstream os;
  os.precision(17);
  switch (m.family) {
    case ModelFamily::kTfim:
      os << "family = tfim\n";
      break;
    case ModelFamily::kAnnni:
      os << "family = annni\n";
      break;
    case ModelFamily::kGeneric:
      os << "family = generic\n";
      break;
  }
  os << "n_sites = " << m.n_sites << "\n";
  os << "boundary = " << (m.boundary == Boundary::kPeriodic ? "periodic" : "open") << "\n";
  if (m.family == ModelFamily::kTfim) os << "J = " << m.J << "\n";
  if (m.family == ModelFamily::kAnnni) os << "J = " << m.J << "\nk = " << m.k << "\n";
  if (m.family == ModelFamily::kGeneric) {
    for (const auto& c : m.couplings)
      os << "coupling = " << c.i << " " << c.j << " " << c.strength << "\n";
    for (const auto& f : m.fields_z) os << "field = " << f.site << " " << f.strength << "\n";
  }
  return os.str();
}

OperatorSum problem_hamiltonian(const AnnealingModel& m) {
  OperatorSum h(m.n_sites);
  for (const auto& c : m.couplings) {
    PauliString zz(m.n_sites);
    zz.set_site(c.i, 'Z');
    zz.set_site(c.j, 'Z');
    h.add(zz, Complex{-c.strength, 0});
  }
  for (const auto& f : m.fields_z)
    h.add(PauliString::single(m.n_sites, f.site, 'Z'), Complex{-f.strength, 0});
  return h;
}

OperatorSum driver_hamiltonian(const AnnealingModel& m) {
  OperatorSum h(m.n_sites);
  for (int i = 0; i < m.n_sites; ++i)
    h.add(PauliString::single(m.n_sites, i, 'X'), Complex{-1, 0});
  return h;
}

OperatorSum interpolated_hamiltonian(const AnnealingModel& m, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw ValidationError("interpolated_hamiltonian: lambda must lie in [0, 1]");
  OperatorSum h = Complex{lambda, 0} * problem_hamiltonian(m);
  h.axpy(Complex{1.0 - lambda, 0}, driver_hamiltonian(m));
  return h;
}

}  // namespace agpsched
