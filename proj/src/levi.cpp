#include <orbitforge/levi.hpp>

#include <algorithm>
#include <numeric>
#include <queue>

namespace orbitforge {

std::string qcoords_key(const QCoords& q) {
  std::string s;
  for (size_t i = 0; i < q.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(q[i]);
  }
  return s;
}

QCoords qcoords_parse(const std::string& key, int dim) {
  QCoords q;
  std::string cur;
  for (char c : key) {
    if (c == ',') {
      q.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) q.push_back(std::stoi(cur));
  if (static_cast<int>(q.size()) != dim)
    throw UsageError("quasiroot key '" + key + "' has wrong dimension");
  return q;
}

QCoords qcoords_neg(const QCoords& q) {
  QCoords r(q.size());
  for (size_t i = 0; i < q.size(); ++i) r[i] = -q[i];
  return r;
}

QCoords qcoords_add(const QCoords& a, const QCoords& b) {
  QCoords r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

namespace {
int qsum(const QCoords& q) { return std::accumulate(q.begin(), q.end(), 0); }
}  // namespace

std::shared_ptr<const LeviDatum> LeviDatum::make(RootSystemPtr rs,
                                                 const std::set<int>& gamma) {
  for (int i : gamma)
    if (i < 0 || i >= rs->rank())
      throw UsageError("gamma index out of range: " + std::to_string(i + 1));
  if (static_cast<int>(gamma.size()) >= rs->rank())
    throw DomainError("gamma = Pi gives a degenerate (point) orbit");

  auto levi = std::shared_ptr<LeviDatum>(new LeviDatum());
  levi->rs_ = std::move(rs);
  levi->gamma_.assign(gamma.begin(), gamma.end());
  const RootSystem& R = *levi->rs_;
  for (int i = 0; i < R.rank(); ++i)
    if (!gamma.count(i)) levi->m_positions_.push_back(i);

  levi->in_m_.assign(R.n_roots(), false);
  for (int r = 0; r < R.n_roots(); ++r) {
    bool outside = false;
    for (int pos : levi->m_positions_)
      if (R.root(r)[pos] != 0) outside = true;
    if (outside) {
      levi->m_roots_.push_back(r);
      levi->in_m_[r] = true;
    } else {
      levi->levi_roots_.push_back(r);
    }
  }

  std::set<QCoords> pos_images;
  for (int r : levi->m_roots_) {
    QCoords q = levi->q_of_root(r);
    levi->fibers_[q].push_back(r);
    if (R.is_positive(r)) pos_images.insert(q);
  }
  std::vector<QCoords> pos(pos_images.begin(), pos_images.end());
  std::sort(pos.begin(), pos.end(), [](const QCoords& a, const QCoords& b) {
    if (qsum(a) != qsum(b)) return qsum(a) < qsum(b);
    return a > b;
  });
  levi->n_qpositive_ = static_cast<int>(pos.size());
  levi->quasiroots_ = pos;
  for (const auto& q : pos) levi->quasiroots_.push_back(qcoords_neg(q));
  for (int i = 0; i < static_cast<int>(levi->quasiroots_.size()); ++i)
    levi->q_index_.emplace(levi->quasiroots_[i], i);

  for (size_t i = 0; i < levi->m_positions_.size(); ++i) {
    QCoords e(levi->m_positions_.size(), 0);
    e[i] = 1;
    levi->simple_.push_back(e);
  }
  return levi;
}

int LeviDatum::q_index(const QCoords& q) const {
  auto it = q_index_.find(q);
  return it == q_index_.end() ? -1 : it->second;
}

QCoords LeviDatum::q_of_root(int root) const {
  QCoords q(m_positions_.size());
  for (size_t i = 0; i < m_positions_.size(); ++i)
    q[i] = rs_->root(root)[m_positions_[i]];
  return q;
}

const std::vector<int>& LeviDatum::fiber(const QCoords& q) const {
  auto it = fibers_.find(q);
  if (it == fibers_.end())
    throw UsageError("not a quasiroot: " + qcoords_key(q));
  return it->second;
}

LeviPtr make_levi(RootSystemPtr rs, const std::set<int>& gamma) {
  return LeviDatum::make(std::move(rs), gamma);
}

SubsetVerdict subset_classify(const LeviDatum& levi,
                              const std::set<QCoords>& subset) {
  for (const auto& q : subset)
    if (levi.q_index(q) < 0)
      throw UsageError("subset element is not a quasiroot: " + qcoords_key(q));

  // linear: subset equals span(subset) intersected with Omega-bar
  RatMat rows;
  for (const auto& q : subset) rows.emplace_back(q.begin(), q.end());
  bool linear = true;
  for (const auto& q : levi.quasiroots()) {
    if (subset.count(q)) continue;
    if (in_span(rows, RatVec(q.begin(), q.end()))) {
      linear = false;
      break;
    }
  }
  if (linear) return {SubsetVerdict::Kind::linear, std::nullopt};

  // semilinear: closed under in-Omega-bar addition, and an exact half
  for (const auto& x : subset)
    for (const auto& y : subset) {
      QCoords s = qcoords_add(x, y);
      if (levi.q_index(s) >= 0 && !subset.count(s))
        return {SubsetVerdict::Kind::neither, std::make_pair(x, y)};
    }
  for (const auto& x : subset)
    if (subset.count(qcoords_neg(x)))
      return {SubsetVerdict::Kind::neither, std::make_pair(x, qcoords_neg(x))};
  for (const auto& q : levi.quasiroots())
    if (!subset.count(q) && !subset.count(qcoords_neg(q)))
      return {SubsetVerdict::Kind::neither, std::make_pair(q, qcoords_neg(q))};
  return {SubsetVerdict::Kind::semilinear, std::nullopt};
}

RatVec Quotient::project(const QCoords& q) const {
  RatVec v(q.begin(), q.end());
  for (size_t i = 0; i < span_pivots.size(); ++i) {
    Rat f = v[span_pivots[i]];
    if (f == 0) continue;
    for (size_t j = 0; j < v.size(); ++j) v[j] -= f * span_rref[i][j];
  }
  return v;
}

Quotient quotient_by(const LeviDatum& levi, const std::set<QCoords>& psi) {
  auto verdict = subset_classify(levi, psi);
  if (verdict.kind != SubsetVerdict::Kind::linear)
    throw DomainError("quotient requires a linear subset");
  Quotient out;
  RatMat rows;
  for (const auto& q : psi) rows.emplace_back(q.begin(), q.end());
  out.span_rref = rref(rows, &out.span_pivots);

  std::map<RatVec, int> index;
  for (const auto& q : levi.quasiroots()) {
    RatVec img = out.project(q);
    bool zero = std::all_of(img.begin(), img.end(),
                            [](const Rat& x) { return x == 0; });
    if (zero) continue;  // the psi part projects away
    auto it = index.find(img);
    if (it == index.end()) {
      it = index.emplace(img, static_cast<int>(out.classes.size())).first;
      out.classes.push_back(img);
      out.fibers.emplace_back();
    }
    out.projection.emplace(q, it->second);
    out.fibers[it->second].push_back(q);
  }
  return out;
}

bool PositiveSystem::contains(const QCoords& q) const {
  return std::find(positive.begin(), positive.end(), q) != positive.end();
}

PositiveSystem positive_system_from(const LeviDatum& levi,
                                    const std::set<QCoords>& positive) {
  auto verdict = subset_classify(levi, positive);
  if (verdict.kind != SubsetVerdict::Kind::semilinear)
    throw DomainError("candidate positive set is not semilinear");
  PositiveSystem ps;
  ps.positive.assign(positive.begin(), positive.end());
  std::sort(ps.positive.begin(), ps.positive.end(),
            [](const QCoords& a, const QCoords& b) {
              if (qsum(a) != qsum(b)) return qsum(a) < qsum(b);
              return a > b;
            });
  for (const auto& y : ps.positive) {
    bool decomposable = false;
    for (const auto& x : ps.positive) {
      QCoords diff(y.size());
      for (size_t i = 0; i < y.size(); ++i) diff[i] = y[i] - x[i];
      if (diff == QCoords(y.size(), 0)) continue;
      if (positive.count(diff)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) ps.simple.push_back(y);
  }
  return ps;
}

PositiveSystem standard_positive(const LeviDatum& levi) {
  std::set<QCoords> pos(levi.quasiroots().begin(),
                        levi.quasiroots().begin() + levi.n_qpositive());
  return positive_system_from(levi, pos);
}

std::vector<long> betti_numbers(const RootSystem& rs,
                                const std::set<int>& gamma) {
  for (int i : gamma)
    if (i < 0 || i >= rs.rank())
      throw UsageError("gamma index out of range: " + std::to_string(i + 1));
  if (static_cast<int>(gamma.size()) >= rs.rank())
    throw DomainError("gamma = Pi gives a degenerate (point) orbit");

  // BFS over the W-orbit of the Gamma-dominant weight; depth equals the
  // length of the minimal coset representative of W_Gamma \ W
  using Weight = std::vector<int>;  // coords <v, alpha_j^vee>
  Weight start(rs.rank(), 0);
  for (int i = 0; i < rs.rank(); ++i)
    if (!gamma.count(i)) start[i] = 1;

  constexpr size_t kOrbitCap = 2'000'000;
  std::map<Weight, int> depth;
  depth.emplace(start, 0);
  std::queue<Weight> work;
  work.push(start);
  std::vector<long> counts{1};
  while (!work.empty()) {
    Weight v = work.front();
    work.pop();
    int d = depth[v];
    for (int i = 0; i < rs.rank(); ++i) {
      if (v[i] <= 0) continue;  // walk down the weak order only
      Weight w = v;
      for (int j = 0; j < rs.rank(); ++j) w[j] -= v[i] * rs.cartan(j, i);
      if (depth.emplace(w, d + 1).second) {
        if (depth.size() > kOrbitCap)
          throw DomainError("Weyl orbit exceeds the resource cap");
        if (static_cast<int>(counts.size()) <= d + 1) counts.resize(d + 2, 0);
        counts[d + 1] += 1;
        work.push(w);
      }
    }
  }
  return counts;
}

}  // namespace orbitforge
