#include <orbitforge/rootsystem.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>

namespace orbitforge {

bool SimpleType::valid() const {
  switch (series) {
    case Series::A: return rank >= 1;
    case Series::B: return rank >= 2;
    case Series::C: return rank >= 3;
    case Series::D: return rank >= 4;
    case Series::E: return rank >= 6 && rank <= 8;
    case Series::F: return rank == 4;
    case Series::G: return rank == 2;
  }
  return false;
}

std::string SimpleType::str() const {
  return std::string(1, static_cast<char>(series)) + std::to_string(rank);
}

SimpleType SimpleType::parse(const std::string& text) {
  if (text.size() < 2) throw UsageError("bad type string: '" + text + "'");
  char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  Series s;
  switch (c) {
    case 'A': s = Series::A; break;
    case 'B': s = Series::B; break;
    case 'C': s = Series::C; break;
    case 'D': s = Series::D; break;
    case 'E': s = Series::E; break;
    case 'F': s = Series::F; break;
    case 'G': s = Series::G; break;
    default: throw UsageError("unknown series in type '" + text + "'");
  }
  int r = 0;
  for (size_t i = 1; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw UsageError("bad rank in type '" + text + "'");
    r = r * 10 + (text[i] - '0');
    if (r > 64) throw UsageError("rank out of range in '" + text + "'");
  }
  SimpleType t{s, r};
  if (!t.valid()) throw UsageError("illegal (series, rank) pair '" + text + "'");
  return t;
}

namespace {

Coords operator-(const Coords& a, const Coords& b) {
  Coords r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

int coords_height(const Coords& c) {
  return std::accumulate(c.begin(), c.end(), 0);
}

}  // namespace

std::shared_ptr<const RootSystem> RootSystem::build(SimpleType type) {
  if (!type.valid())
    throw UsageError("illegal (series, rank) pair " + type.str());
  auto rs = std::shared_ptr<RootSystem>(new RootSystem());
  rs->type_ = type;
  rs->rank_ = type.rank;

  // Cartan matrix, cartan_[i][j] = <alpha_j, alpha_i^vee>.
  int n = type.rank;
  rs->cartan_.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) rs->cartan_[i][i] = 2;
  auto edge = [&](int i, int j, int aij, int aji) {
    rs->cartan_[i][j] = aij;
    rs->cartan_[j][i] = aji;
  };
  switch (type.series) {
    case Series::A:
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, -1, -1);
      break;
    case Series::B:  // alpha_n short
      for (int i = 0; i + 2 < n; ++i) edge(i, i + 1, -1, -1);
      edge(n - 2, n - 1, -1, -2);
      break;
    case Series::C:  // alpha_n long
      for (int i = 0; i + 2 < n; ++i) edge(i, i + 1, -1, -1);
      edge(n - 2, n - 1, -2, -1);
      break;
    case Series::D:
      for (int i = 0; i + 3 < n; ++i) edge(i, i + 1, -1, -1);
      edge(n - 3, n - 2, -1, -1);
      edge(n - 3, n - 1, -1, -1);
      break;
    case Series::E:
      // chain 1-3-4-5-6(-7-8), node 2 hangs off 4 (Bourbaki, 0-based here)
      edge(0, 2, -1, -1);
      edge(2, 3, -1, -1);
      edge(1, 3, -1, -1);
      for (int i = 3; i + 1 < n; ++i) edge(i, i + 1, -1, -1);
      break;
    case Series::F:  // 1,2 long; 3,4 short
      edge(0, 1, -1, -1);
      edge(1, 2, -1, -2);
      edge(2, 3, -1, -1);
      break;
    case Series::G:  // alpha_1 short
      edge(0, 1, -3, -1);
      break;
  }

  rs->enumerate_roots();
  rs->compute_lengths();
  rs->compute_structure_constants();
  rs->compute_coroots();
  rs->compute_kappa();

  // highest root = unique positive root of maximal height
  int best = 0;
  for (int r = 1; r < rs->n_positive_; ++r)
    if (coords_height(rs->roots_[r]) > coords_height(rs->roots_[best])) best = r;
  rs->highest_root_ = best;
  return rs;
}

void RootSystem::enumerate_roots() {
  std::map<Coords, int> seen;
  std::vector<Coords> pos;
  for (int i = 0; i < rank_; ++i) {
    Coords c(rank_, 0);
    c[i] = 1;
    seen.emplace(c, static_cast<int>(pos.size()));
    pos.push_back(c);
  }
  // grow by height using root strings: beta + alpha_i is a root iff
  // q = p - <beta, alpha_i^vee> > 0, p = down-string length
  size_t begin = 0;
  while (begin < pos.size()) {
    size_t end = pos.size();
    for (size_t k = begin; k < end; ++k) {
      Coords beta = pos[k];
      for (int i = 0; i < rank_; ++i) {
        int pairing = 0;
        for (int j = 0; j < rank_; ++j) pairing += beta[j] * cartan_[i][j];
        // down-string stays inside the already enumerated positives
        int p = 0;
        Coords down = beta;
        while (true) {
          down[i] -= 1;
          if (!seen.count(down)) break;
          ++p;
        }
        if (p - pairing > 0) {
          Coords up = beta;
          up[i] += 1;
          if (!seen.count(up)) {
            seen.emplace(up, static_cast<int>(pos.size()));
            pos.push_back(up);
          }
        }
      }
    }
    begin = end;
  }

  // height first, then reverse-lex so that alpha_1 precedes alpha_2
  std::sort(pos.begin(), pos.end(), [](const Coords& a, const Coords& b) {
    int ha = coords_height(a), hb = coords_height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  n_positive_ = static_cast<int>(pos.size());
  roots_ = pos;
  roots_.reserve(2 * pos.size());
  for (const auto& c : pos) {
    Coords neg(rank_);
    for (int j = 0; j < rank_; ++j) neg[j] = -c[j];
    roots_.push_back(neg);
  }
  root_index_.clear();
  for (int r = 0; r < static_cast<int>(roots_.size()); ++r)
    root_index_.emplace(roots_[r], r);
}

int RootSystem::root_index(const Coords& c) const {
  auto it = root_index_.find(c);
  return it == root_index_.end() ? -1 : it->second;
}

int RootSystem::root_sum(int a, int b) const {
  Coords s(rank_);
  for (int j = 0; j < rank_; ++j) s[j] = roots_[a][j] + roots_[b][j];
  return root_index(s);
}

int RootSystem::height(int r) const { return coords_height(roots_[r]); }

int RootSystem::cartan_pairing(int r, int i) const {
  int v = 0;
  for (int j = 0; j < rank_; ++j) v += roots_[r][j] * cartan_[i][j];
  return v;
}

void RootSystem::compute_lengths() {
  // length ratios across Dynkin edges: d_j / d_i = cartan(i,j) / cartan(j,i)
  std::vector<Rat> d(rank_, Rat(0));
  d[0] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) {
        if (i == j || cartan_[i][j] == 0) continue;
        if (d[i] != 0 && d[j] == 0) {
          d[j] = d[i] * Rat(cartan_[i][j]) / Rat(cartan_[j][i]);
          changed = true;
        }
      }
  }
  Rat mx = *std::max_element(d.begin(), d.end());
  for (auto& x : d) x = x * 2 / mx;

  simple_pairing_.assign(rank_, std::vector<Rat>(rank_, Rat(0)));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      simple_pairing_[i][j] = Rat(cartan_[i][j]) * d[i] / 2;

  length_sq_.resize(roots_.size());
  for (size_t r = 0; r < roots_.size(); ++r) {
    Rat v(0);
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        v += Rat(roots_[r][i]) * Rat(roots_[r][j]) * simple_pairing_[i][j];
    length_sq_[r] = v;
  }
}

int RootSystem::p_string(int a, int b) const {
  int p = 0;
  Coords c = roots_[b];
  while (true) {
    c = c - roots_[a];
    if (root_index(c) < 0) break;
    ++p;
  }
  return p;
}

int RootSystem::resolve_n(int a, int b) const {
  const int npos = n_positive_;
  bool aneg = a >= npos, bneg = b >= npos;
  if (!aneg && !bneg) {
    int v = n_table_[a * roots_.size() + b];
    if (v == 0) throw InternalError("structure constant requested before set");
    return v;
  }
  if (aneg && bneg) return -resolve_n(a - npos, b - npos);
  if (aneg && !bneg) return -resolve_n(a - npos, b + npos);
  // a positive, b negative; reduce to a positive pair via Killing ratios:
  // N_{a,-bp} = -N_{bp,d} l_d/l_a  (d = a-bp > 0), or
  // N_{a,-bp} = -N_{a,d'} l_{d'}/l_{bp}  (d' = bp-a > 0)
  int bp = b - npos;
  int diff = root_index(roots_[a] - roots_[bp]);
  if (diff < 0) throw InternalError("resolve_n on a non-composable pair");
  Rat v;
  if (diff < npos) {
    v = Rat(-resolve_n(bp, diff)) * length_sq_[diff] / length_sq_[a];
  } else {
    int dp = diff - npos;
    v = Rat(-resolve_n(a, dp)) * length_sq_[dp] / length_sq_[bp];
  }
  if (v.get_den() != 1) throw InternalError("non-integral structure constant");
  return static_cast<int>(v.get_num().get_si());
}

void RootSystem::compute_structure_constants() {
  const int npos = n_positive_;
  const size_t nr = roots_.size();
  n_table_.assign(nr * nr, 0);
  auto set_n = [&](int i, int j, int v) {
    n_table_[i * nr + j] = v;
    n_table_[j * nr + i] = -v;
  };

  // Extraspecial-pair induction over positive roots in (height, lex) order.
  for (int g = 0; g < npos; ++g) {
    if (height(g) < 2) continue;
    std::vector<std::pair<int, int>> specials;
    for (int a = 0; a < npos; ++a) {
      int b = root_index(roots_[g] - roots_[a]);
      if (b >= 0 && b < npos && a < b) specials.emplace_back(a, b);
    }
    if (specials.empty())
      throw InternalError("no additive decomposition for a non-simple root");
    auto [e, h] = specials.front();  // minimal first component: extraspecial
    set_n(e, h, p_string(e, h) + 1);
    for (size_t s = 1; s < specials.size(); ++s) {
      auto [a, b] = specials[s];
      // Jacobi on (e, h, -a):
      //   N_{e,h} N_{g,-a} + N_{h,-a} N_{h-a,e} + N_{-a,e} N_{e-a,h} = 0
      long t = 0;
      int hma = root_index(roots_[h] - roots_[a]);
      if (hma >= 0)
        t += static_cast<long>(resolve_n(h, a + npos)) * resolve_n(hma, e);
      int ema = root_index(roots_[e] - roots_[a]);
      if (ema >= 0)
        t += static_cast<long>(resolve_n(a + npos, e)) * resolve_n(ema, h);
      int neh = n_table_[e * nr + h];
      if (t % neh != 0) throw InternalError("non-integral Jacobi division");
      long n_g_nega = -t / neh;
      // N_{a,b} = -N_{g,-a} l_g / l_b
      Rat v = Rat(-n_g_nega) * length_sq_[g] / length_sq_[b];
      if (v.get_den() != 1) throw InternalError("non-integral N_{a,b}");
      set_n(a, b, static_cast<int>(v.get_num().get_si()));
    }
  }

  // Close the table over all sign patterns.
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nr; ++j) {
      if (i == j || n_table_[i * nr + j] != 0) continue;
      int s = root_sum(static_cast<int>(i), static_cast<int>(j));
      if (s < 0) continue;
      n_table_[i * nr + j] = resolve_n(static_cast<int>(i), static_cast<int>(j));
    }
}

void RootSystem::compute_coroots() {
  coroots_.resize(roots_.size());
  for (size_t r = 0; r < roots_.size(); ++r) {
    std::vector<int> c(rank_);
    for (int i = 0; i < rank_; ++i) {
      // coroot coefficient: b_i * (alpha_i,alpha_i) / (beta,beta)
      Rat v = Rat(roots_[r][i]) * simple_pairing_[i][i] / length_sq_[r];
      if (v.get_den() != 1) throw InternalError("non-integral coroot");
      c[i] = static_cast<int>(v.get_num().get_si());
    }
    coroots_[r] = c;
  }
}

BasisCombo RootSystem::bracket_basis(int x, int y) const {
  const int nr = n_roots();
  bool xc = x >= nr, yc = y >= nr;
  if (xc && yc) return {};
  if (xc) {
    int v = cartan_pairing(y, x - nr);
    if (v == 0) return {};
    return {{y, Rat(v)}};
  }
  if (yc) {
    int v = cartan_pairing(x, y - nr);
    if (v == 0) return {};
    return {{x, Rat(-v)}};
  }
  if (y == negate(x)) {
    BasisCombo out;
    for (int i = 0; i < rank_; ++i)
      if (coroots_[x][i] != 0) out.emplace_back(nr + i, Rat(coroots_[x][i]));
    return out;
  }
  int s = root_sum(x, y);
  if (s < 0) return {};
  return {{s, Rat(n_table_[x * roots_.size() + y])}};
}

void RootSystem::compute_kappa() {
  kappa_.resize(roots_.size());
  for (int r = 0; r < static_cast<int>(roots_.size()); ++r) {
    int nr = negate(r);
    Rat tr(0);
    for (int x = 0; x < n_basis(); ++x) {
      for (const auto& [y, cy] : bracket_basis(nr, x))
        for (const auto& [z, cz] : bracket_basis(r, y))
          if (z == x) tr += cy * cz;
    }
    kappa_[r] = tr;
  }
}

BasisElement RootSystem::decode(int code) const {
  if (code < n_roots()) return {false, code};
  return {true, code - n_roots()};
}

int RootSystem::encode(const BasisElement& b) const {
  if (b.is_cartan) {
    if (b.index < 0 || b.index >= rank_)
      throw UsageError("cartan index out of range");
    return n_roots() + b.index;
  }
  if (b.index < 0 || b.index >= n_roots())
    throw UsageError("root index out of range");
  return b.index;
}

RootSystemPtr build_root_system(SimpleType type) { return RootSystem::build(type); }

RootSystemPtr build_root_system(const std::string& type) {
  return RootSystem::build(SimpleType::parse(type));
}

BasisCombo lie_bracket(const RootSystem& rs, const BasisElement& x,
                       const BasisElement& y) {
  return rs.bracket_basis(rs.encode(x), rs.encode(y));
}

}  // namespace orbitforge
