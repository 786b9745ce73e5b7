#include <orbitforge/moduli.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace orbitforge {

namespace {

QCoords qsub(const QCoords& a, const QCoords& b) {
  QCoords r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

std::string pair_name(const QCoords& a, const QCoords& b) {
  return "(" + qcoords_key(a) + ") + (" + qcoords_key(b) + ")";
}

std::optional<Rat> rat_sqrt(const Rat& x) {
  if (x < 0) return std::nullopt;
  mpz_class n = x.get_num(), d = x.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) ||
      !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return Rat(sn) / Rat(sd);
}

Rat rat_reconstruct(double x, long max_den) {
  // continued fractions with a denominator cap
  bool neg = x < 0;
  double v = std::fabs(x);
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(v);
    long ai = static_cast<long>(a);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = v - a;
    if (frac < 1e-12) break;
    v = 1.0 / frac;
  }
  Rat r(p1, q1 == 0 ? 1 : q1);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

}  // namespace

std::vector<std::pair<QCoords, QCoords>> composable_pairs(
    const LeviDatum& levi) {
  std::vector<std::pair<QCoords, QCoords>> out;
  const auto& qs = levi.quasiroots();
  for (size_t i = 0; i < qs.size(); ++i)
    for (size_t j = i; j < qs.size(); ++j)
      if (levi.q_index(qcoords_add(qs[i], qs[j])) >= 0)
        out.emplace_back(qs[i], qs[j]);
  return out;
}

std::vector<std::pair<QCoords, QCoords>> composable_pairs(
    const LeviDatum& levi, const PositiveSystem& ps) {
  std::vector<std::pair<QCoords, QCoords>> out;
  const auto& qs = ps.positive;
  for (size_t i = 0; i < qs.size(); ++i)
    for (size_t j = i; j < qs.size(); ++j) {
      QCoords s = qcoords_add(qs[i], qs[j]);
      if (levi.q_index(s) >= 0 && ps.contains(s))
        out.emplace_back(qs[i], qs[j]);
    }
  return out;
}

FFSolution solve_ff(const LeviPtr& levi, const PositiveSystem& ps,
                    const std::map<QCoords, Rat>& seeds, const Rat& K) {
  for (const auto& s : ps.simple)
    if (!seeds.count(s))
      throw UsageError("missing seed for simple quasiroot " + qcoords_key(s));
  for (const auto& [q, v] : seeds)
    if (std::find(ps.simple.begin(), ps.simple.end(), q) == ps.simple.end())
      throw UsageError("seed key " + qcoords_key(q) +
                       " is not a simple quasiroot of this system");

  std::map<QCoords, Rat> val;
  for (const auto& s : ps.simple) val[s] = seeds.at(s);

  std::optional<std::pair<QCoords, QCoords>> blocking;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& q : ps.positive) {
      if (val.count(q)) continue;
      std::optional<Rat> got;
      for (const auto& x : ps.positive) {
        auto xv = val.find(x);
        if (xv == val.end()) continue;
        QCoords y = qsub(q, x);
        if (!ps.contains(y)) continue;
        auto yv = val.find(y);
        if (yv == val.end()) continue;
        Rat den = xv->second + yv->second;
        if (den == 0) {
          blocking = std::make_pair(x, y);
          continue;
        }
        Rat v = (xv->second * yv->second + K * K) / den;
        if (got && *got != v) throw InternalError("recursion paths disagree");
        got = v;
      }
      if (got) {
        val[q] = *got;
        progress = true;
      }
    }
  }
  for (const auto& q : ps.positive)
    if (!val.count(q)) {
      if (blocking)
        throw DomainError("inadmissible seeds: zero denominator at " +
                          pair_name(blocking->first, blocking->second));
      throw InternalError("quasiroot unreachable by the recursion: " +
                          qcoords_key(q));
    }

  FFSolution sol;
  sol.levi = levi;
  sol.K = K;
  sol.seeds = seeds;
  sol.c.levi = levi;
  sol.c.positive = ps;
  for (const auto& [q, v] : val)
    if (v != 0) sol.c.values[q] = v;

  // recursion pairs close by construction; the remaining composable pairs
  // must close too, else the seeds were inadmissible
  for (const auto& [a, b] : composable_pairs(*levi)) {
    Rat ca = sol.c.at(a), cb = sol.c.at(b), cs = sol.c.at(qcoords_add(a, b));
    if (cs * (ca + cb) != ca * cb + K * K)
      throw DomainError("inadmissible seeds: pair equation fails at " +
                        pair_name(a, b));
  }
  return sol;
}

VerifyReport verify_ff(const LeviPtr& levi, const BracketCoefficients& c,
                       const Rat& K) {
  VerifyReport rep;
  for (const auto& [a, b] : composable_pairs(*levi)) {
    Rat ca = c.at(a), cb = c.at(b), cs = c.at(qcoords_add(a, b));
    if (cs * (ca + cb) != ca * cb + K * K)
      rep.violations.push_back(FFViolation{a, b});
  }
  rep.schouten_residual_zero = phi_bracket_residual(levi, c, K).is_zero();
  rep.ok = rep.violations.empty() && rep.schouten_residual_zero;
  return rep;
}

namespace {

// exact separating functional on a finite symmetric set: base-M weights
std::set<QCoords> generic_half(const LeviDatum& levi,
                               const std::set<QCoords>& sym) {
  std::set<QCoords> half;
  if (sym.empty()) return half;
  long m = 2;
  for (const auto& q : levi.quasiroots())
    for (int v : q) m = std::max(m, static_cast<long>(std::abs(v)) + 1);
  for (const auto& q : sym) {
    long dot = 0, w = 1;
    for (int v : q) {
      dot += v * w;
      w *= m;
    }
    if (dot > 0) half.insert(q);
  }
  return half;
}

}  // namespace

PositiveSystem adapted_positive_system(const LeviPtr& levi,
                                       const BracketCoefficients& c,
                                       const Rat& K) {
  if (!verify_ff(levi, c, K).ok)
    throw DomainError("coefficients do not solve the pair equations at this K");

  std::set<QCoords> psi;
  for (const auto& q : levi->quasiroots()) {
    Rat v = c.at(q);
    if (v != K && v != -K) psi.insert(q);
  }

  std::set<QCoords> positives = generic_half(*levi, psi);
  if (psi.size() != levi->quasiroots().size()) {
    if (K == 0)
      throw DomainError(
          "no adapted half exists for K = 0 with vanishing coefficients");
    auto quot = quotient_by(*levi, psi);
    for (size_t k = 0; k < quot.classes.size(); ++k) {
      Rat v = c.at(quot.fibers[k].front());
      for (const auto& q : quot.fibers[k])
        if (c.at(q) != v)
          throw InternalError("coefficients not constant on a coset");
      if (v == K)
        for (const auto& q : quot.fibers[k]) positives.insert(q);
      else if (v != -K)
        throw InternalError("coset value is neither K nor -K");
    }
  }

  PositiveSystem ps = positive_system_from(*levi, positives);
  for (const auto& [x, y] : composable_pairs(*levi, ps))
    if (c.at(x) + c.at(y) == 0)
      throw InternalError("adapted system still hits a zero denominator");
  return ps;
}

std::vector<BracketCoefficients> tangent_basis(const LeviPtr& levi,
                                               const BracketCoefficients& c,
                                               const Rat& K) {
  if (K == 0) throw UsageError("tangent basis requires K != 0");
  if (!verify_ff(levi, c, K).ok)
    throw DomainError("coefficients do not solve the pair equations at this K");
  const PositiveSystem& ps = c.positive;
  auto pairs = composable_pairs(*levi, ps);
  for (const auto& [x, y] : pairs)
    if (c.at(x) + c.at(y) == 0)
      throw DomainError(
          "positive system is not adapted to the solution; use "
          "adapted_positive_system first");

  std::vector<BracketCoefficients> basis;
  Multivector fv = bivector_from_coefficients(c);
  for (size_t k = 0; k < ps.simple.size(); ++k) {
    std::map<QCoords, Rat> d;
    for (size_t i = 0; i < ps.simple.size(); ++i)
      d[ps.simple[i]] = Rat(i == k ? 1 : 0);

    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& q : ps.positive) {
        if (d.count(q)) continue;
        std::optional<Rat> got;
        for (const auto& x : ps.positive) {
          auto xd = d.find(x);
          if (xd == d.end()) continue;
          QCoords y = qsub(q, x);
          if (!ps.contains(y)) continue;
          auto yd = d.find(y);
          if (yd == d.end()) continue;
          Rat cx = c.at(x), cy = c.at(y), cq = c.at(q);
          Rat v = (xd->second * (cy - cq) + yd->second * (cx - cq)) / (cx + cy);
          if (got && *got != v)
            throw InternalError("tangent recursion paths disagree");
          got = v;
        }
        if (got) {
          d[q] = *got;
          progress = true;
        }
      }
    }
    BracketCoefficients b;
    b.levi = levi;
    b.positive = ps;
    for (const auto& [q, v] : d)
      if (v != 0) b.values[q] = v;
    if (!schouten(fv, bivector_from_coefficients(b)).is_zero())
      throw InternalError("tangent vector does not annihilate the bracket");
    basis.push_back(std::move(b));
  }
  return basis;
}

double ApproxCoefficients::at(const QCoords& q) const {
  auto it = values.find(q);
  if (it != values.end()) return it->second;
  it = values.find(qcoords_neg(q));
  if (it != values.end()) return -it->second;
  if (levi->q_index(q) < 0)
    throw UsageError("not a quasiroot: " + qcoords_key(q));
  return 0.0;
}

ApproxCoefficients approx_from_exact(const BracketCoefficients& c) {
  ApproxCoefficients a;
  a.levi = c.levi;
  for (const auto& q : c.positive.positive) a.values[q] = rat_double(c.at(q));
  return a;
}

ApproxCoefficients from_parametrization(const LeviPtr& levi,
                                        const Parametrization& p) {
  if (static_cast<int>(p.lambda.size()) != levi->q_dim())
    throw UsageError("lambda functional has the wrong dimension");
  auto verdict = subset_classify(*levi, p.psi);
  if (verdict.kind != SubsetVerdict::Kind::linear)
    throw UsageError("psi is not a linear subset");

  auto lam = [&](const QCoords& q) {
    double v = 0;
    for (size_t i = 0; i < q.size(); ++i) v += q[i] * p.lambda[i];
    return v;
  };
  double Kd = rat_double(p.K);

  // outside psi the value is +-K by quotient class
  std::map<QCoords, int> sign_of;
  if (p.psi.size() != levi->quasiroots().size()) {
    auto quot = quotient_by(*levi, p.psi);
    std::vector<int> cls_sign(quot.classes.size(), 0);
    for (const auto& rep : p.b_reps) {
      auto it = quot.projection.find(rep);
      if (it == quot.projection.end())
        throw UsageError("B representative " + qcoords_key(rep) +
                         " lies in psi or outside Omega-bar");
      cls_sign[it->second] = +1;
      auto mit = quot.projection.find(qcoords_neg(rep));
      if (mit == quot.projection.end())
        throw InternalError("quotient lost a mirror class");
      if (cls_sign[mit->second] == +1)
        throw UsageError("B meets -B in the quotient");
      cls_sign[mit->second] = -1;
    }
    if (p.K != 0)
      for (int s : cls_sign)
        if (s == 0)
          throw UsageError("B and -B do not cover the quotient classes");
    for (const auto& [q, cls] : quot.projection) sign_of[q] = cls_sign[cls];
  }

  ApproxCoefficients out;
  out.levi = levi;
  auto std_ps = standard_positive(*levi);
  for (const auto& q : std_ps.positive) {
    double v = 0;
    if (p.psi.count(q)) {
      double l = lam(q);
      if (l == 0) throw UsageError("lambda vanishes on " + qcoords_key(q));
      if (p.K == 0)
        v = 1.0 / l;
      else
        v = Kd / std::tanh(Kd * l / 2.0);
    } else if (p.K == 0) {
      v = 0.0;
    } else {
      v = sign_of.at(q) > 0 ? Kd : -Kd;
    }
    out.values[q] = v;
  }
  return out;
}

Parametrization extract_parametrization(const LeviPtr& levi,
                                        const ApproxCoefficients& c,
                                        const Rat& K) {
  if (K == 0) throw UsageError("extraction requires K != 0");
  constexpr double kTol = 1e-9;
  double Kd = rat_double(K);

  Parametrization p;
  p.K = K;
  for (const auto& q : levi->quasiroots()) {
    double v = c.at(q);
    if (std::fabs(v - Kd) > kTol && std::fabs(v + Kd) > kTol) p.psi.insert(q);
  }
  auto verdict = subset_classify(*levi, p.psi);
  if (verdict.kind != SubsetVerdict::Kind::linear)
    throw DomainError("extraction failed: the off-(+-K) set is not linear");

  if (p.psi.size() != levi->quasiroots().size()) {
    auto quot = quotient_by(*levi, p.psi);
    std::set<int> taken;
    for (size_t k = 0; k < quot.classes.size(); ++k) {
      if (taken.count(static_cast<int>(k))) continue;
      double v = c.at(quot.fibers[k].front());
      if (std::fabs(v - Kd) <= kTol) {
        p.b_reps.insert(quot.fibers[k].front());
        auto mit = quot.projection.find(qcoords_neg(quot.fibers[k].front()));
        taken.insert(mit->second);
      }
    }
  }

  // principal real branch: lambda(q) = (1/K) ln((c+K)/(c-K)) needs |c| > |K|
  std::map<QCoords, double> lam;
  for (const auto& q : p.psi) {
    double v = c.at(q);
    if (std::fabs(v) <= std::fabs(Kd) + kTol)
      throw DomainError(
          "extraction failed: value inside the real coth range (complex "
          "branch) at " +
          qcoords_key(q));
    lam[q] = std::log((v + Kd) / (v - Kd)) / Kd;
  }

  // fit one linear functional over the quasiroot coordinates
  const int dim = levi->q_dim();
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const auto& [q, l] : lam) {
    rows.push_back(std::vector<double>(q.begin(), q.end()));
    rhs.push_back(l);
  }
  std::vector<double> sol(dim, 0.0);
  {
    std::vector<std::vector<double>> a(dim, std::vector<double>(dim + 1, 0));
    for (size_t r = 0; r < rows.size(); ++r)
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) a[i][j] += rows[r][i] * rows[r][j];
        a[i][dim] += rows[r][i] * rhs[r];
      }
    for (int col = 0, row = 0; col < dim && row < dim; ++col) {
      int piv = row;
      for (int i = row + 1; i < dim; ++i)
        if (std::fabs(a[i][col]) > std::fabs(a[piv][col])) piv = i;
      if (std::fabs(a[piv][col]) < 1e-13) continue;
      std::swap(a[piv], a[row]);
      for (int i = 0; i < dim; ++i) {
        if (i == row) continue;
        double f = a[i][col] / a[row][col];
        for (int j = col; j <= dim; ++j) a[i][j] -= f * a[row][j];
      }
      ++row;
    }
    for (int i = 0; i < dim; ++i)
      if (std::fabs(a[i][i]) > 1e-13) sol[i] = a[i][dim] / a[i][i];
  }
  // additivity: the fitted functional must reproduce every branch value
  for (size_t r = 0; r < rows.size(); ++r) {
    double fit = 0;
    for (int i = 0; i < dim; ++i) fit += rows[r][i] * sol[i];
    if (std::fabs(fit - rhs[r]) > kTol)
      throw DomainError(
          "extraction failed: branch values are not additive over psi");
  }
  p.lambda = sol;
  return p;
}

double ff_residual_max(const LeviPtr& levi, const ApproxCoefficients& c,
                       double K) {
  double worst = 0;
  for (const auto& [a, b] : composable_pairs(*levi)) {
    double ca = c.at(a), cb = c.at(b), cs = c.at(qcoords_add(a, b));
    worst = std::max(worst, std::fabs(cs * (ca + cb) - ca * cb - K * K));
  }
  return worst;
}

GoodVerdict classify_good_pair(const RootSystem& rs,
                               const std::set<int>& gamma) {
  for (int i : gamma)
    if (i < 0 || i >= rs.rank())
      throw UsageError("gamma index out of range: " + std::to_string(i + 1));
  if (static_cast<int>(gamma.size()) >= rs.rank())
    throw DomainError("gamma = Pi gives a degenerate (point) orbit");

  GoodVerdict v;
  const Coords& top = rs.root(rs.highest_root());
  for (int i = 0; i < rs.rank(); ++i)
    if (!gamma.count(i)) v.removed_coefficients[i] = top[i];

  if (rs.type().series == Series::A) {
    v.good = true;
    v.certificate = "type A: every semisimple orbit is good";
    return v;
  }
  bool all_one = true;
  for (const auto& [i, coeff] : v.removed_coefficients)
    if (coeff != 1) all_one = false;
  size_t removed = v.removed_coefficients.size();
  v.good = all_one && (removed == 1 || removed == 2);
  std::string coeffs;
  for (const auto& [i, coeff] : v.removed_coefficients) {
    if (!coeffs.empty()) coeffs += ", ";
    coeffs += "alpha_" + std::to_string(i + 1) + " -> " + std::to_string(coeff);
  }
  v.certificate = (v.good ? std::string("good: ") : std::string("not good: ")) +
                  std::to_string(removed) +
                  " removed simple root(s) with highest-root coefficients [" +
                  coeffs + "]";
  return v;
}

namespace {

// pair form Q(v) = c_v(g)(c_v(x)+c_v(y)) - c_v(x)c_v(y), polarized
Rat pair_form(const BracketCoefficients& v, const BracketCoefficients& w,
              const QCoords& x, const QCoords& y) {
  QCoords g = qcoords_add(x, y);
  Rat vx = v.at(x), vy = v.at(y), vg = v.at(g);
  Rat wx = w.at(x), wy = w.at(y), wg = w.at(g);
  return (vg * (wx + wy) + wg * (vx + vy) - vx * wy - wx * vy) / 2;
}

BracketCoefficients from_vector(const LeviPtr& levi, const PositiveSystem& ps,
                                const RatVec& v) {
  BracketCoefficients c;
  c.levi = levi;
  c.positive = ps;
  for (size_t i = 0; i < ps.positive.size(); ++i)
    if (v[i] != 0) c.values[ps.positive[i]] = v[i];
  return c;
}

RatVec to_vector(const BracketCoefficients& c) {
  RatVec v;
  v.reserve(c.positive.positive.size());
  for (const auto& q : c.positive.positive) v.push_back(c.at(q));
  return v;
}

}  // namespace

BracketCoefficients family_member(const GoodFamily& fam, int sign,
                                  const Rat& t) {
  BracketCoefficients out = fam.f0;
  out *= Rat(sign >= 0 ? 1 : -1);
  BracketCoefficients shift = fam.s;
  shift *= t;
  out += shift;
  return out;
}

GoodFamily good_bracket_family(const LeviPtr& levi,
                               const std::map<QCoords, Rat>& lambda,
                               const Rat& K) {
  if (K == 0) throw UsageError("the good family requires K != 0");
  auto verdict = classify_good_pair(
      *levi->rs(), std::set<int>(levi->gamma().begin(), levi->gamma().end()));
  if (!verdict.good)
    throw DomainError("not a good pair: " + verdict.certificate);

  GoodFamily fam;
  fam.levi = levi;
  fam.K = K;
  fam.s = kks(levi, lambda);
  const PositiveSystem& ps = fam.s.positive;
  auto pairs = composable_pairs(*levi, ps);

  if (pairs.empty()) {
    // no pair constraints and phi_M = 0: every invariant bivector works;
    // pick the constant-K representative
    fam.f0 = coefficients_constant(levi, K);
  } else {
    const size_t n = ps.positive.size();
    std::map<QCoords, size_t> col;
    for (size_t i = 0; i < n; ++i) col[ps.positive[i]] = i;
    // kernel of the compatibility condition with s (linear in d)
    RatMat sys;
    for (const auto& [x, y] : pairs) {
      QCoords g = qcoords_add(x, y);
      RatVec row(n, Rat(0));
      Rat sx = fam.s.at(x), sy = fam.s.at(y), sg = fam.s.at(g);
      row[col.at(x)] += sy - sg;
      row[col.at(y)] += sx - sg;
      row[col.at(g)] -= sx + sy;
      sys.push_back(std::move(row));
    }
    RatMat kernel = nullspace(sys);
    RatVec s_vec = to_vector(fam.s);
    if (!in_span(kernel, s_vec))
      throw InternalError("KKS bracket escaped its own kernel");

    // basis of the kernel led by s
    RatMat lead{s_vec};
    std::vector<RatVec> u;
    for (const auto& k : kernel) {
      if (in_span(lead, k)) continue;
      lead.push_back(k);
      u.push_back(k);
    }
    const size_t m = u.size();
    if (m == 0)
      throw InternalError("good pair but the kernel has no direction beyond "
                          "KKS");

    std::vector<BracketCoefficients> ub;
    for (const auto& x : u) ub.push_back(from_vector(levi, ps, x));

    // the pair forms are s-translation invariant on the kernel; solve
    // <M_p, x x^T> = K^2 for the rank-one unknown
    std::vector<RatMat> forms;
    for (const auto& [x, y] : pairs) {
      RatMat M(m, RatVec(m, Rat(0)));
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) M[i][j] = pair_form(ub[i], ub[j], x, y);
      forms.push_back(std::move(M));
    }

    RatVec x0;
    bool solved = false;
    if (m == 1) {
      Rat a = forms.front()[0][0];
      for (const auto& M : forms)
        if (M[0][0] != a)
          throw InternalError("pair forms disagree on a good pair");
      if (a == 0) throw InternalError("degenerate pair form on a good pair");
      auto root = rat_sqrt(K * K / a);
      if (!root)
        throw DomainError(
            "the good bracket has no rational representative for this lambda "
            "and K");
      x0 = {*root};
      solved = true;
    } else {
      std::vector<std::pair<size_t, size_t>> vars;
      for (size_t i = 0; i < m; ++i)
        for (size_t j = i; j < m; ++j) vars.emplace_back(i, j);
      RatMat a;
      RatVec rhs;
      for (const auto& M : forms) {
        RatVec row;
        for (auto [i, j] : vars) row.push_back(i == j ? M[i][i] : M[i][j] * 2);
        a.push_back(std::move(row));
        rhs.push_back(K * K);
      }
      auto xsol = solve(a, rhs);
      if (xsol && exact_rank(a) == static_cast<int>(vars.size())) {
        std::map<std::pair<size_t, size_t>, Rat> X;
        for (size_t v = 0; v < vars.size(); ++v) X[vars[v]] = (*xsol)[v];
        auto get = [&](size_t i, size_t j) {
          return i <= j ? X[{i, j}] : X[{j, i}];
        };
        size_t piv = m;
        for (size_t i = 0; i < m; ++i)
          if (get(i, i) != 0) {
            piv = i;
            break;
          }
        if (piv == m)
          throw InternalError("vanishing rank-one solution on a good pair");
        auto xk = rat_sqrt(get(piv, piv));
        if (!xk)
          throw DomainError(
              "the good bracket has no rational representative for this "
              "lambda and K");
        x0.assign(m, Rat(0));
        x0[piv] = *xk;
        for (size_t i = 0; i < m; ++i)
          if (i != piv) x0[i] = get(piv, i) / *xk;
        for (size_t i = 0; i < m; ++i)
          for (size_t j = i; j < m; ++j)
            if (x0[i] * x0[j] != get(i, j))
              throw InternalError("rank-one factorization failed");
        solved = true;
      }
    }

    if (!solved) {
      // seeded floating search with rational reconstruction; the exact
      // verification below is the ground truth
      std::mt19937 rng(7);
      std::uniform_real_distribution<double> init(-3.0, 3.0);
      std::vector<std::vector<std::vector<double>>> fd;
      for (const auto& M : forms) {
        std::vector<std::vector<double>> Md(m, std::vector<double>(m));
        for (size_t i = 0; i < m; ++i)
          for (size_t j = 0; j < m; ++j) Md[i][j] = rat_double(M[i][j]);
        fd.push_back(std::move(Md));
      }
      double K2 = rat_double(K * K);
      for (int attempt = 0; attempt < 40 && !solved; ++attempt) {
        std::vector<double> x(m);
        for (auto& v : x) v = init(rng);
        for (int it = 0; it < 400; ++it) {
          std::vector<std::vector<double>> J;
          std::vector<double> r;
          for (const auto& M : fd) {
            double q = 0;
            std::vector<double> grad(m, 0.0);
            for (size_t i = 0; i < m; ++i)
              for (size_t j = 0; j < m; ++j) {
                q += x[i] * M[i][j] * x[j];
                grad[i] += 2 * M[i][j] * x[j];
              }
            J.push_back(std::move(grad));
            r.push_back(q - K2);
          }
          std::vector<std::vector<double>> nrm(m,
                                               std::vector<double>(m + 1, 0));
          for (size_t p = 0; p < J.size(); ++p)
            for (size_t i = 0; i < m; ++i) {
              for (size_t j = 0; j < m; ++j) nrm[i][j] += J[p][i] * J[p][j];
              nrm[i][m] += J[p][i] * r[p];
            }
          for (size_t i = 0; i < m; ++i) nrm[i][i] += 1e-9;
          for (size_t colp = 0; colp < m; ++colp) {
            size_t piv = colp;
            for (size_t i = colp + 1; i < m; ++i)
              if (std::fabs(nrm[i][colp]) > std::fabs(nrm[piv][colp])) piv = i;
            std::swap(nrm[piv], nrm[colp]);
            if (std::fabs(nrm[colp][colp]) < 1e-14) continue;
            for (size_t i = 0; i < m; ++i) {
              if (i == colp) continue;
              double f = nrm[i][colp] / nrm[colp][colp];
              for (size_t j = colp; j <= m; ++j) nrm[i][j] -= f * nrm[colp][j];
            }
          }
          double step = 0;
          for (size_t i = 0; i < m; ++i) {
            double di =
                std::fabs(nrm[i][i]) < 1e-14 ? 0.0 : nrm[i][m] / nrm[i][i];
            x[i] -= di;
            step += std::fabs(di);
          }
          if (step < 1e-14) break;
        }
        RatVec cand(m);
        for (size_t i = 0; i < m; ++i) cand[i] = rat_reconstruct(x[i], 1000000);
        bool exact = true;
        for (const auto& M : forms) {
          Rat q(0);
          for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) q += cand[i] * M[i][j] * cand[j];
          if (q != K * K) exact = false;
        }
        if (exact) {
          x0 = cand;
          solved = true;
        }
      }
      if (!solved)
        throw DomainError("no exact good bracket found by the floating search");
    }

    RatVec f0_vec(ps.positive.size(), Rat(0));
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < ps.positive.size(); ++j)
        f0_vec[j] += x0[i] * u[i][j];
    fam.f0 = from_vector(levi, ps, f0_vec);
  }

  // ground truth: both defining conditions, exactly, plus t-shift closure
  Multivector sv = bivector_from_coefficients(fam.s);
  const std::vector<Rat> shifts{Rat(0), Rat(1), Rat(-1), Rat(Rat(3) / 7),
                                Rat(Rat(-3) / 7)};
  for (int sign : {+1, -1})
    for (const Rat& t : shifts) {
      BracketCoefficients f = family_member(fam, sign, t);
      if (!phi_bracket_residual(levi, f, K).is_zero())
        throw InternalError("family member fails the bracket condition");
      if (!schouten(bivector_from_coefficients(f), sv).is_zero())
        throw InternalError("family member fails KKS compatibility");
    }
  fam.conditions_verified = true;
  return fam;
}

}  // namespace orbitforge
