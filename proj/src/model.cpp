#include "cheeger_gap/model.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "cheeger_gap/error.hpp"

namespace cheeger_gap {

namespace {

bool key_less(const Triplet& a, const Triplet& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

StoquasticMatrix StoquasticMatrix::from_triplets(std::size_t dim, std::vector<Triplet> entries) {
  if (dim > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorKind::size_limit, "matrix dimension exceeds 32-bit indexing");
  }
  for (const auto& e : entries) {
    if (e.row >= dim || e.col >= dim) {
      throw Error(ErrorKind::invalid_model, "entry (" + std::to_string(e.row) + "," +
                                                std::to_string(e.col) + ") outside dimension " +
                                                std::to_string(dim));
    }
  }
  std::sort(entries.begin(), entries.end(), key_less);
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col) {
      throw Error(ErrorKind::invalid_model, "duplicate entry (" + std::to_string(entries[k].row) +
                                                "," + std::to_string(entries[k].col) + ")");
    }
  }

  StoquasticMatrix m;
  m.dim_ = dim;
  m.entries_ = std::move(entries);
  m.diag_.assign(dim, 0.0);

  // Symmetric completion: a pair listed in both orientations contributes its
  // upper-triangle value to both positions.
  std::vector<Triplet> full;
  full.reserve(2 * m.entries_.size());
  for (const auto& e : m.entries_) {
    if (e.row == e.col) {
      m.diag_[e.row] = e.value;
      full.push_back(e);
      continue;
    }
    if (e.row > e.col) {
      const Triplet mirror{e.col, e.row, 0.0};
      if (std::binary_search(m.entries_.begin(), m.entries_.end(), mirror, key_less)) continue;
    }
    full.push_back({e.row, e.col, e.value});
    full.push_back({e.col, e.row, e.value});
  }
  std::sort(full.begin(), full.end(), key_less);
  m.row_ptr_.assign(dim + 1, 0);
  m.cols_.reserve(full.size());
  m.vals_.reserve(full.size());
  for (const auto& e : full) {
    ++m.row_ptr_[e.row + 1];
    m.cols_.push_back(e.col);
    m.vals_.push_back(e.value);
  }
  for (std::size_t r = 0; r < dim; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

double StoquasticMatrix::value(std::uint32_t i, std::uint32_t j) const {
  auto find = [&](std::uint32_t r, std::uint32_t c) -> const Triplet* {
    const Triplet key{r, c, 0.0};
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key, key_less);
    return (it != entries_.end() && it->row == r && it->col == c) ? &*it : nullptr;
  };
  if (const auto* t = find(std::min(i, j), std::max(i, j))) return t->value;
  if (const auto* t = find(std::max(i, j), std::min(i, j))) return t->value;
  return 0.0;
}

kernels::CsrView StoquasticMatrix::csr() const noexcept {
  return {dim_, row_ptr_, cols_, vals_};
}

void StoquasticMatrix::apply(std::span<const double> x, std::span<double> y) const {
  kernels::spmv(csr(), x, y);
}

std::vector<double> StoquasticMatrix::dense() const {
  std::vector<double> a(dim_ * dim_, 0.0);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) a[r * dim_ + cols_[k]] = vals_[k];
  }
  return a;
}

ValidationReport validate(const StoquasticMatrix& h) {
  ValidationReport report;
  const auto n = h.dim();

  {
    ValidationReport::Check c{"dimension", n >= 2, ""};
    if (!c.passed) c.detail = "N = " + std::to_string(n) + " < 2";
    report.checks.push_back(c);
  }

  {
    ValidationReport::Check c{"symmetry", true, ""};
    for (const auto& e : h.entries()) {
      if (e.row <= e.col) continue;
      const double mirror = h.value(e.col, e.row);
      // value() prefers the upper triangle, so a mismatch shows up here.
      if (mirror != e.value) {
        c.passed = false;
        std::ostringstream os;
        os << "H(" << e.row << "," << e.col << ") = " << e.value << " but H(" << e.col << ","
           << e.row << ") = " << mirror;
        c.detail = os.str();
        break;
      }
    }
    report.checks.push_back(c);
  }

  {
    ValidationReport::Check c{"sign", true, ""};
    for (const auto& e : h.entries()) {
      if (!(e.value <= 0.0)) {
        c.passed = false;
        std::ostringstream os;
        os << "H(" << e.row << "," << e.col << ") = " << e.value << " is positive or NaN";
        c.detail = os.str();
        break;
      }
    }
    report.checks.push_back(c);
  }

  {
    ValidationReport::Check c{"connectivity", true, ""};
    if (n == 0) {
      c.passed = false;
      c.detail = "empty matrix";
    } else {
      const auto a = h.csr();
      std::vector<char> seen(n, 0);
      std::queue<std::uint32_t> q;
      q.push(0);
      seen[0] = 1;
      std::size_t reached = 1;
      while (!q.empty()) {
        const auto v = q.front();
        q.pop();
        for (auto k = a.row_ptr[v]; k < a.row_ptr[v + 1]; ++k) {
          const auto u = a.cols[k];
          if (u == v || a.values[k] == 0.0 || seen[u]) continue;
          seen[u] = 1;
          ++reached;
          q.push(u);
        }
      }
      if (reached != n) {
        c.passed = false;
        c.detail = "off-diagonal support reaches " + std::to_string(reached) + " of " +
                   std::to_string(n) + " basis states (reducible)";
      }
    }
    report.checks.push_back(c);
  }
  return report;
}

void require_valid(const StoquasticMatrix& h) {
  const auto report = validate(h);
  if (!report.ok()) throw Error(ErrorKind::validation, report.summary());
}

StoquasticMatrix build_ring(std::size_t sites, double hopping) {
  if (sites < 3) throw Error(ErrorKind::invalid_model, "ring needs at least 3 sites");
  if (!(hopping > 0.0)) throw Error(ErrorKind::invalid_model, "ring hopping t must be positive");
  std::vector<Triplet> e;
  e.reserve(sites);
  for (std::uint32_t i = 0; i < sites; ++i) {
    const auto j = static_cast<std::uint32_t>((i + 1) % sites);
    e.push_back({std::min(i, j), std::max(i, j), -hopping});
  }
  return StoquasticMatrix::from_triplets(sites, std::move(e));
}

namespace {

void check_spins(std::size_t spins, std::size_t min_spins, std::size_t max_spins, const char* what) {
  if (spins < min_spins) {
    throw Error(ErrorKind::invalid_model,
                std::string(what) + " needs at least " + std::to_string(min_spins) + " spins");
  }
  if (spins > max_spins) {
    throw Error(ErrorKind::size_limit, std::string(what) + " with n = " + std::to_string(spins) +
                                           " exceeds the spin limit " + std::to_string(max_spins));
  }
}

void add_spin_flips(std::size_t spins, double field, std::vector<Triplet>& e) {
  const std::uint32_t dim = std::uint32_t{1} << spins;
  for (std::uint32_t s = 0; s < dim; ++s) {
    for (std::size_t k = 0; k < spins; ++k) {
      const std::uint32_t t = s ^ (std::uint32_t{1} << k);
      if (s < t) e.push_back({s, t, -field});
    }
  }
}

}  // namespace

StoquasticMatrix build_transverse_field(std::size_t spins, double field, std::size_t max_spins) {
  check_spins(spins, 1, max_spins, "transverse-field model");
  if (!(field > 0.0)) throw Error(ErrorKind::invalid_model, "transverse field B must be positive");
  std::vector<Triplet> e;
  e.reserve((std::size_t{1} << spins) * spins / 2);
  add_spin_flips(spins, field, e);
  return StoquasticMatrix::from_triplets(std::size_t{1} << spins, std::move(e));
}

StoquasticMatrix build_ising_chain(std::size_t spins, double field, std::size_t max_spins) {
  check_spins(spins, 2, max_spins, "Ising chain");
  if (!(field > 0.0)) {
    throw Error(ErrorKind::validation,
                "Ising chain with B <= 0 is reducible (doubly degenerate ground state at B = 0)");
  }
  const std::uint32_t dim = std::uint32_t{1} << spins;
  std::vector<Triplet> e;
  e.reserve(static_cast<std::size_t>(dim) * (spins / 2 + 1));
  for (std::uint32_t s = 0; s < dim; ++s) {
    double bonds = 0.0;
    for (std::size_t k = 0; k + 1 < spins; ++k) {
      const bool same = ((s >> k) & 1u) == ((s >> (k + 1)) & 1u);
      bonds += (same ? 1.0 : -1.0) + 2.0;
    }
    e.push_back({s, s, -bonds});
  }
  add_spin_flips(spins, field, e);
  return StoquasticMatrix::from_triplets(dim, std::move(e));
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "ring") return ModelKind::ring;
  if (name == "transverse" || name == "transverse_field" || name == "hypercube") {
    return ModelKind::transverse_field;
  }
  if (name == "ising" || name == "ising_chain") return ModelKind::ising_chain;
  if (name == "file") return ModelKind::file;
  throw Error(ErrorKind::invalid_model, "unknown model kind '" + name + "'");
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::ring: return "ring";
    case ModelKind::transverse_field: return "transverse";
    case ModelKind::ising_chain: return "ising";
    case ModelKind::file: return "file";
  }
  return "unknown";
}

StoquasticMatrix build_model(const ModelSpec& spec, std::size_t max_spins) {
  switch (spec.kind) {
    case ModelKind::ring: return build_ring(spec.size, spec.coupling);
    case ModelKind::transverse_field: return build_transverse_field(spec.size, spec.coupling, max_spins);
    case ModelKind::ising_chain: return build_ising_chain(spec.size, spec.coupling, max_spins);
    case ModelKind::file: return load_matrix(spec.path);
  }
  throw Error(ErrorKind::internal, "unhandled model kind");
}

void write_matrix(std::ostream& os, const StoquasticMatrix& h) {
  os << "stoq 1\n" << h.dim() << ' ' << h.stored() << '\n';
  char buf[64];
  for (const auto& e : h.entries()) {
    std::snprintf(buf, sizeof buf, "%.17e", e.value);
    os << e.row << ' ' << e.col << ' ' << buf << '\n';
  }
}

StoquasticMatrix read_matrix(std::istream& is, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) -> Error {
    return Error(ErrorKind::parse, source + ":" + std::to_string(line_no) + ": " + what);
  };
  auto next = [&](std::string& out) {
    while (std::getline(is, line)) {
      ++line_no;
      out = trim(line);
      if (out.empty() || out.front() == '#') continue;
      return true;
    }
    return false;
  };

  std::string text;
  if (!next(text)) throw fail("empty input, expected header 'stoq 1'");
  if (text != "stoq 1") throw fail("bad header '" + text + "', expected 'stoq 1'");

  if (!next(text)) throw fail("missing 'N nnz' line");
  std::size_t dim = 0;
  std::size_t nnz = 0;
  {
    std::istringstream ls(text);
    std::string extra;
    if (!(ls >> dim >> nnz) || (ls >> extra)) throw fail("expected 'N nnz', got '" + text + "'");
  }

  std::vector<Triplet> entries;
  entries.reserve(nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    if (!next(text)) throw fail("expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
    std::istringstream ls(text);
    std::uint64_t i = 0;
    std::uint64_t j = 0;
    std::string value_text;
    std::string extra;
    if (!(ls >> i >> j >> value_text) || (ls >> extra)) throw fail("expected 'i j value'");
    double v = 0.0;
    const auto* first = value_text.data();
    const auto* last = first + value_text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) throw fail("bad value '" + value_text + "'");
    if (i >= dim || j >= dim) throw fail("index out of range for N = " + std::to_string(dim));
    entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), v});
  }
  if (next(text)) throw fail("unexpected data after " + std::to_string(nnz) + " entries");

  StoquasticMatrix h;
  try {
    h = StoquasticMatrix::from_triplets(dim, std::move(entries));
  } catch (const Error& e) {
    throw Error(ErrorKind::parse, source + ": " + e.what());
  }
  const auto report = validate(h);
  if (!report.ok()) throw Error(ErrorKind::validation, source + ": " + report.summary());
  return h;
}

void save_matrix(const StoquasticMatrix& h, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::parse, "cannot open " + path.string() + " for writing");
  write_matrix(os, h);
  if (!os) throw Error(ErrorKind::parse, "failed writing " + path.string());
}

StoquasticMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::parse, "cannot open " + path.string());
  return read_matrix(is, path.string());
}

}  // namespace cheeger_gap
