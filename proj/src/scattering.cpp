#include "cluster/scattering.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace cluster {

namespace {

// ---------------------------------------------------------------------------
// Truncated power series in y_1..y_r

std::int64_t total_degree(const Exponent& b) { return std::accumulate(b.begin(), b.end(), std::int64_t{0}); }

LaurentPoly truncate(const LaurentPoly& p, int order) {
  LaurentPoly out(p.rank());
  for (const auto& [e, c] : p.terms())
    if (total_degree(e) <= order) out.add_term(e, c);
  return out;
}

LaurentPoly series_one(std::size_t r) { return LaurentPoly::constant(r, Rational(1)); }

LaurentPoly series_mul(const LaurentPoly& a, const LaurentPoly& b, int order) {
  LaurentPoly out(a.rank());
  for (const auto& [ea, ca] : a.terms()) {
    const auto da = total_degree(ea);
    if (da > order) continue;
    for (const auto& [eb, cb] : b.terms())
      if (da + total_degree(eb) <= order) out.add_term(ea + eb, ca * cb);
  }
  return out;
}

LaurentPoly series_inverse(const LaurentPoly& a, int order) {
  if (a.coefficient(Exponent(a.rank(), 0)) != 1)
    throw ClusterError(ErrorKind::InvalidInput, "series inverse needs constant term 1");
  const LaurentPoly h = series_one(a.rank()) - a;
  LaurentPoly sum = series_one(a.rank());
  LaurentPoly power = series_one(a.rank());
  for (int k = 1; k <= order; ++k) {
    power = series_mul(power, h, order);
    if (power.is_zero()) break;
    sum += power;
  }
  return sum;
}

LaurentPoly series_pow(const LaurentPoly& a, std::int64_t e, int order) {
  if (e < 0) return series_pow(series_inverse(a, order), -e, order);
  LaurentPoly result = series_one(a.rank());
  LaurentPoly base = truncate(a, order);
  while (e > 0) {
    if (e & 1) result = series_mul(result, base, order);
    e >>= 1;
    if (e > 0) base = series_mul(base, base, order);
  }
  return result;
}

// theta(z^q) = z^q prod_j G_j^{pi(q)_j}
struct Automorphism {
  std::vector<LaurentPoly> G;
};

Automorphism identity_auto(std::size_t r) { return {std::vector<LaurentPoly>(r, series_one(r))}; }

Automorphism wall_auto(const LaurentPoly& f, const Exponent& n0, int sigma, int order) {
  Automorphism a;
  for (std::size_t j = 0; j < n0.size(); ++j) a.G.push_back(series_pow(f, sigma * n0[j], order));
  return a;
}

// (outer o inner)_j = outer_j * inner_j(outer(y)), outer(y_i) = y_i prod_k outer_k^{B(i,k)}.
Automorphism compose(const Automorphism& outer, const Automorphism& inner, const IntMatrix& B, int order) {
  const std::size_t r = outer.G.size();
  std::vector<LaurentPoly> Y;
  for (std::size_t i = 0; i < r; ++i) {
    Exponent unit(r, 0);
    unit[i] = 1;
    LaurentPoly y = LaurentPoly::monomial(unit);
    for (std::size_t k = 0; k < r; ++k) {
      const auto e = to_int64(B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
      if (e != 0) y = series_mul(y, series_pow(outer.G[k], e, order), order);
    }
    Y.push_back(std::move(y));
  }
  std::vector<std::vector<LaurentPoly>> powers(r);
  auto y_power = [&](std::size_t i, std::int64_t e) -> const LaurentPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(series_one(r));
    while (static_cast<std::int64_t>(cache.size()) <= e) cache.push_back(series_mul(cache.back(), Y[i], order));
    return cache[static_cast<std::size_t>(e)];
  };
  Automorphism out;
  for (std::size_t j = 0; j < r; ++j) {
    LaurentPoly sub(r);
    for (const auto& [b, c] : inner.G[j].terms()) {
      if (total_degree(b) > order) continue;
      LaurentPoly term = LaurentPoly::constant(r, c);
      for (std::size_t i = 0; i < r; ++i)
        if (b[i] != 0) term = series_mul(term, y_power(i, b[i]), order);
      sub += term;
    }
    out.G.push_back(series_mul(outer.G[j], sub, order));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plane geometry on the projected diagram

std::int64_t gcd_vec(const Exponent& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

Exponent primitive(const Exponent& v) {
  const auto g = gcd_vec(v);
  if (g == 0) return v;
  Exponent out(v);
  for (auto& x : out) x /= g;
  return out;
}

Exponent rot90(const Exponent& v) { return {-v[1], v[0]}; }

int half_plane(const Exponent& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; }

bool angle_less(const Exponent& a, const Exponent& b) {
  if (half_plane(a) != half_plane(b)) return half_plane(a) < half_plane(b);
  return a[0] * b[1] - a[1] * b[0] > 0;
}

struct Event {
  Exponent direction;
  std::vector<const Wall*> walls;
};

// Crossing points of a small counterclockwise loop, in angular order.
std::vector<Event> loop_events(const ScatteringDiagram& d) {
  std::vector<Event> events;
  auto add = [&](const Exponent& dir, const Wall* w) {
    const Exponent p = primitive(dir);
    for (auto& e : events)
      if (e.direction == p) {
        e.walls.push_back(w);
        return;
      }
    events.push_back({p, {w}});
  };
  for (const auto& w : d.walls) {
    if (w.direction) {
      add(*w.direction, &w);
    } else {
      const Exponent along = rot90(w.normal);
      add(along, &w);
      add(scaled(along, -1), &w);
    }
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return angle_less(a.direction, b.direction); });
  return events;
}

// +1 when the loop crosses towards increasing <n0, .> at this direction.
int loop_sign(const Exponent& normal, const Exponent& direction) { return dot(normal, rot90(direction)) > 0 ? 1 : -1; }

Automorphism loop_automorphism(const ScatteringDiagram& d, int order) {
  const std::size_t r = d.dimension();
  Automorphism theta = identity_auto(r);
  for (const auto& ev : loop_events(d))
    for (const Wall* w : ev.walls)
      theta = compose(wall_auto(w->function, w->normal, -loop_sign(w->normal, ev.direction), order), theta,
                      d.exchange, order);
  return theta;
}

Exponent unit_exponent(std::size_t size, std::size_t index) {
  Exponent e(size, 0);
  e[index] = 1;
  return e;
}

std::size_t prin_rank(const ScatteringDiagram& d) { return d.seed.index_count() + d.seed.rank; }

}  // namespace

// ---------------------------------------------------------------------------

std::size_t ScatteringDiagram::inserted_count() const {
  return static_cast<std::size_t>(std::count_if(walls.begin(), walls.end(), [](const Wall& w) { return w.label == 0; }));
}

Exponent project(const ScatteringDiagram& d, const Exponent& q) {
  if (q.size() != prin_rank(d)) throw ClusterError(ErrorKind::RankMismatch, "exponent is not in M_prin");
  Exponent out;
  for (int l : d.unfrozen) out.push_back(q[static_cast<std::size_t>(d.seed.position(l))]);
  return out;
}

Exponent lift_normal(const ScatteringDiagram& d, const Exponent& n0) {
  Exponent out(prin_rank(d), 0);
  for (std::size_t j = 0; j < d.unfrozen.size(); ++j) out[static_cast<std::size_t>(d.seed.position(d.unfrozen[j]))] = n0[j];
  return out;
}

Exponent prin_exponent(const ScatteringDiagram& d, const Exponent& b) {
  Exponent out(prin_rank(d), 0);
  for (std::size_t j = 0; j < d.unfrozen.size(); ++j)
    if (b[j] != 0) out = out + scaled(to_exponent(p1_prin_of_index(d.seed, d.unfrozen[j])), b[j]);
  return out;
}

LaurentPoly to_prin(const ScatteringDiagram& d, const LaurentPoly& f) {
  LaurentPoly out(prin_rank(d));
  for (const auto& [b, c] : f.terms()) out.add_term(prin_exponent(d, b), c);
  return out;
}

RationalFn wall_crossing(const ScatteringDiagram& d, const RationalFn& f, const Wall& wall, int direction_sign) {
  if (direction_sign == 0) throw ClusterError(ErrorKind::NonTransverse, "path runs along the wall");
  const Exponent u = scaled(lift_normal(d, wall.normal), direction_sign > 0 ? 1 : -1);
  return twist_pullback(f, u, to_prin(d, wall.function));
}

bool crossing_convention_self_test(const Seed& seed) {
  ScatteringDiagram d;
  d.seed = seed;
  d.unfrozen = seed.unfrozen_labels();
  const Seed prin = principal_seed(seed).seed;
  const std::size_t n = seed.index_count() + seed.rank;
  for (std::size_t j = 0; j < d.unfrozen.size(); ++j) {
    Wall w{unit_exponent(d.unfrozen.size(), j), std::nullopt,
           LaurentPoly::binomial(unit_exponent(d.unfrozen.size(), j)), d.unfrozen[j]};
    for (std::size_t k = 0; k < n; ++k) {
      Exponent q = unit_exponent(n, k);
      q[static_cast<std::size_t>(seed.position(d.unfrozen[j]))] += 1;
      const RationalFn probe = RationalFn::monomial(q);
      if (wall_crossing(d, probe, w, 1) != mutation_step(prin, Side::A, d.unfrozen[j], probe)) return false;
    }
  }
  return true;
}

ScatteringDiagram initial_diagram(const Seed& seed) {
  ScatteringDiagram d;
  d.seed = seed;
  d.unfrozen = seed.unfrozen_labels();
  const std::size_t r = d.unfrozen.size();
  d.exchange = IntMatrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      d.exchange(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          seed.pairing(seed.e(d.unfrozen[i]), seed.e(d.unfrozen[j]));
  d.skew = is_skew(seed).has_value();
  for (std::size_t i = 0; i < r; ++i)
    d.walls.push_back({unit_exponent(r, i), std::nullopt, LaurentPoly::binomial(unit_exponent(r, i)), d.unfrozen[i]});
  if (!crossing_convention_self_test(seed))
    throw ClusterError(ErrorKind::InvalidInput, "wall-crossing convention disagrees with the A_prin mutation");
  d.exact = r < 2;
  return d;
}

RationalFn path_ordered_product(const ScatteringDiagram& d, const RationalFn& f) {
  if (d.dimension() < 2) return f;
  RationalFn g = f;
  for (const auto& ev : loop_events(d))
    for (const Wall* w : ev.walls) g = wall_crossing(d, g, *w, loop_sign(w->normal, ev.direction));
  return g;
}

CheckReport loop_identity_check(const ScatteringDiagram& d, int random_probes, std::uint64_t rng_seed) {
  CheckReport report;
  report.theorem = "consistency";
  const std::size_t n = prin_rank(d);
  std::vector<Exponent> probes;
  for (int l : d.unfrozen) probes.push_back(unit_exponent(n, static_cast<std::size_t>(d.seed.position(l))));
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<int> dist(-2, 2);
  for (int p = 0; p < random_probes; ++p) {
    Exponent q(n);
    for (auto& x : q) x = dist(rng);
    probes.push_back(q);
  }
  for (const auto& q : probes) {
    ++report.checked;
    const RationalFn z = RationalFn::monomial(q);
    const RationalFn image = path_ordered_product(d, z);
    if (image != z) report.fail("loop moves z^" + LaurentPoly::monomial(q).to_string() + " to " + image.to_string());
  }
  return report;
}

void complete_to_order(ScatteringDiagram& d, int k) {
  const std::size_t r = d.dimension();
  if (r > 2) throw ClusterError(ErrorKind::UnsupportedRank, "completion is implemented for at most two unfrozen indices");
  if (r < 2) {
    d.order = std::max(d.order, k);
    d.exact = true;
    return;
  }
  for (int deg = d.order + 1; deg <= k; ++deg) {
    const Automorphism theta = loop_automorphism(d, deg);
    std::map<Exponent, std::vector<Rational>> delta;
    for (std::size_t j = 0; j < r; ++j)
      for (const auto& [b, c] : theta.G[j].terms()) {
        const auto db = total_degree(b);
        if (db == 0) continue;
        if (db < deg) throw ClusterError(ErrorKind::InvalidInput, "loop product fails below the current order");
        auto& v = delta.try_emplace(b, std::vector<Rational>(r, Rational(0))).first->second;
        v[j] = c;
      }
    for (const auto& [a, dv] : delta) {
      Exponent w(r, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t l = 0; l < r; ++l)
          w[i] -= a[l] * to_int64(d.exchange(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(i)));
      if (gcd_vec(w) == 0) throw ClusterError(ErrorKind::InvalidInput, "loop defect along the kernel of the exchange matrix");
      const Exponent dir = primitive(w);
      const Exponent n0 = rot90(dir);
      std::optional<Rational> lambda;
      for (std::size_t j = 0; j < r && !lambda; ++j)
        if (n0[j] != 0) lambda = dv[j] / Rational(n0[j]);
      for (std::size_t j = 0; j < r; ++j)
        if (dv[j] != *lambda * n0[j]) throw ClusterError(ErrorKind::InvalidInput, "loop defect is not normal to its wall");
      auto it = std::find_if(d.walls.begin(), d.walls.end(),
                             [&](const Wall& wall) { return wall.label == 0 && wall.direction == dir; });
      if (it == d.walls.end()) {
        d.walls.push_back({n0, dir, series_one(r), 0});
        it = std::prev(d.walls.end());
      }
      it->function.add_term(a, *lambda);
    }
    d.order = deg;
  }
  d.order = std::max(d.order, k);
  // Exact when the next order shows no defect and the loop fixes probes exactly.
  const Automorphism next = loop_automorphism(d, d.order + 1);
  bool quiet = true;
  for (const auto& g : next.G) quiet = quiet && g == series_one(r);
  d.exact = quiet && loop_identity_check(d, 3, 7).pass;
}

Endpoint default_endpoint(const ScatteringDiagram& d, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<long long> num(1000003, 9999991), den(1000003, 9999991);
  for (;;) {
    Endpoint Q;
    for (std::size_t i = 0; i < d.dimension(); ++i) Q.push_back(Rational(num(rng), den(rng)));
    bool generic = true;
    for (const auto& w : d.walls) {
      Rational s(0);
      for (std::size_t i = 0; i < Q.size(); ++i) s += Q[i] * w.normal[i];
      if (s == 0) generic = false;
    }
    if (generic) return Q;
  }
}

namespace {

struct LineSearch {
  const ScatteringDiagram& d;
  const Exponent& q;
  int order;
  std::map<std::pair<std::vector<const Wall*>, std::int64_t>, LaurentPoly> power_cache;
  std::vector<BrokenLine> lines;
  LaurentPoly value;

  Rational pair(const Exponent& n0, const std::vector<Rational>& x) const {
    Rational s(0);
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * n0[i];
    return s;
  }

  const LaurentPoly& crossing_power(const std::vector<const Wall*>& walls, std::int64_t s) {
    auto key = std::make_pair(walls, s);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    LaurentPoly f = series_one(d.dimension());
    for (const Wall* w : walls) f = series_mul(f, w->function, order);
    return power_cache.emplace(key, series_pow(f, s, order)).first->second;
  }

  void run(const std::vector<Rational>& x, const Exponent& p, const Exponent& remaining, const Rational& coef,
           std::vector<std::pair<Exponent, Exponent>>& bends, const Exponent& final_exponent) {
    const Exponent dir = project(d, p);
    std::optional<Rational> best;
    std::vector<const Wall*> hit;
    for (const auto& w : d.walls) {
      const std::int64_t nd = dot(w.normal, dir);
      if (nd == 0) continue;
      const Rational t = -pair(w.normal, x) / Rational(nd);
      if (t <= 0) continue;
      std::vector<Rational> h(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) h[i] = x[i] + t * dir[i];
      if (x.size() == 2 && h[0] == 0 && h[1] == 0)
        throw ClusterError(ErrorKind::EndpointNotGeneric, "a broken line runs into the joint");
      if (w.direction && pair(*w.direction, h) <= 0) continue;
      if (!best || t < *best) {
        best = t;
        hit.assign(1, &w);
      } else if (t == *best) {
        hit.push_back(&w);
      }
    }
    if (!best) {
      if (std::all_of(remaining.begin(), remaining.end(), [](std::int64_t v) { return v == 0; })) {
        lines.push_back({bends, final_exponent, coef});
        value.add_term(final_exponent, coef);
      }
      return;
    }
    std::vector<Rational> h(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) h[i] = x[i] + *best * dir[i];
    run(h, p, remaining, coef, bends, final_exponent);
    const Exponent& n0 = hit.front()->normal;
    const std::int64_t s = std::abs(dot(n0, dir));
    if (s == 0) return;
    const LaurentPoly power = crossing_power(hit, s);
    for (const auto& [b, c] : power.terms()) {
      if (total_degree(b) == 0) continue;
      bool fits = true;
      for (std::size_t i = 0; i < b.size(); ++i) fits = fits && b[i] <= remaining[i];
      if (!fits) continue;
      bends.emplace_back(n0, b);
      run(h, p - prin_exponent(d, b), remaining - b, coef * c, bends, final_exponent);
      bends.pop_back();
    }
  }
};

}  // namespace

ThetaFunction theta(const ScatteringDiagram& d, const Exponent& q, const Endpoint& endpoint) {
  const std::size_t r = d.dimension();
  if (q.size() != prin_rank(d)) throw ClusterError(ErrorKind::RankMismatch, "theta: q must lie in M_prin");
  if (endpoint.size() != r) throw ClusterError(ErrorKind::RankMismatch, "theta: endpoint dimension");
  for (const auto& w : d.walls) {
    Rational s(0);
    for (std::size_t i = 0; i < r; ++i) s += endpoint[i] * w.normal[i];
    if (s == 0) throw ClusterError(ErrorKind::EndpointNotGeneric, "endpoint lies on a wall");
  }
  ThetaFunction out;
  out.q = q;
  LineSearch search{d, q, d.order, {}, {}, LaurentPoly(prin_rank(d))};
  // Enumerate the total bend exponent B with |B| <= order.
  Exponent B(r, 0);
  std::function<void(std::size_t, std::int64_t)> enumerate = [&](std::size_t i, std::int64_t left) {
    if (i == r) {
      const Exponent p = q + prin_exponent(d, B);
      std::vector<std::pair<Exponent, Exponent>> bends;
      const std::size_t before = search.lines.size();
      search.run(endpoint, p, B, Rational(1), bends, p);
      if (search.lines.size() > before) out.max_bend_degree = std::max<int>(out.max_bend_degree, static_cast<int>(total_degree(B)));
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      B[i] = v;
      enumerate(i + 1, left - v);
    }
    B[i] = 0;
  };
  enumerate(0, d.order);
  out.lines = std::move(search.lines);
  out.value = RationalFn(std::move(search.value));
  out.exact = d.exact && 2 * out.max_bend_degree <= d.order;
  out.degree = homogeneous_degree(d.seed, out.value);
  return out;
}

CheckReport theta_identities(const ScatteringDiagram& d, const Exponent& q, const Endpoint& endpoint) {
  CheckReport report;
  report.theorem = "theta identities";
  const auto k = d.seed.index_count();
  Exponent q0 = q;
  Exponent n_part(prin_rank(d), 0);
  for (std::size_t i = k; i < q.size(); ++i) {
    q0[i] = 0;
    n_part[i] = q[i];
  }
  const ThetaFunction tq = theta(d, q, endpoint);
  const ThetaFunction tm = theta(d, q0, endpoint);
  const std::string where = "q=" + LaurentPoly::monomial(q).to_string();
  report.checked += 3;
  if (!tq.degree || *tq.degree != degree_of(d.seed, q)) report.fail(where + ": degree of theta differs from deg z^q");
  if (tq.value != RationalFn::monomial(n_part) * tm.value) report.fail(where + ": theta_(m,n) != z^(0,n) theta_(m,0)");
  for (int label : d.seed.frozen_labels())
    if (frozen_valuation(d.seed, Side::APrin, tq.value, label) != frozen_valuation(d.seed, Side::APrin, tm.value, label))
      report.fail(where + ": frozen valuation at " + std::to_string(label) + " changes under (0,N) shift");
  return report;
}

bool xi_membership(const ScatteringDiagram& d, const Exponent& q, const Endpoint& endpoint) {
  const ThetaFunction t = theta(d, q, endpoint);
  if (!t.exact) throw ClusterError(ErrorKind::TruncatedOnly, "theta function is only known to order " + std::to_string(d.order));
  if (!is_laurent(t.value)) return false;
  const std::size_t n = prin_rank(d);
  for (int l : d.unfrozen) {
    const Exponent u = unit_exponent(n, static_cast<std::size_t>(d.seed.position(l)));
    const Exponent psi = to_exponent(p1_prin_of_index(d.seed, l));
    if (!is_laurent(inverse_mutation_pullback(t.value, u, psi))) return false;
  }
  for (int l : d.seed.frozen_labels())
    if (frozen_valuation(d.seed, Side::APrin, t.value, l) < 0) return false;
  return true;
}

std::vector<IntVector> xi_lambda(const ScatteringDiagram& d, const IntVector& lambda, int radius,
                                 const Endpoint& endpoint) {
  const auto k = static_cast<Eigen::Index>(d.seed.index_count());
  if (lambda.size() != k) throw ClusterError(ErrorKind::RankMismatch, "lambda must lie in M_I");
  const IntMatrix pbar1 = derive_maps(d.seed).pbar1;
  std::vector<IntVector> out;
  IntVector m = IntVector::Constant(k, Integer(-radius));
  for (;;) {
    if (solve_integer(pbar1, IntVector(m - lambda))) {
      Exponent q(prin_rank(d), 0);
      for (Eigen::Index i = 0; i < k; ++i) q[static_cast<std::size_t>(i)] = to_int64(m(i));
      if (xi_membership(d, q, endpoint)) out.push_back(m);
    }
    Eigen::Index i = k - 1;
    while (i >= 0 && m(i) == radius) m(i--) = -radius;
    if (i < 0) break;
    m(i) += 1;
  }
  return out;
}

std::optional<Exponent> pointed_exponent(const ScatteringDiagram& d, const LaurentPoly& f) {
  const std::size_t r = d.dimension();
  IntMatrix V(static_cast<Eigen::Index>(prin_rank(d)), static_cast<Eigen::Index>(r));
  for (std::size_t j = 0; j < r; ++j) V.col(static_cast<Eigen::Index>(j)) = p1_prin_of_index(d.seed, d.unfrozen[j]);
  for (const auto& [e, c] : f.terms()) {
    bool pointed = true;
    for (const auto& [e2, c2] : f.terms()) {
      if (e2 == e) continue;
      const auto b = solve_integer(V, to_int_vector(e2 - e));
      if (!b || (b->array() < 0).any()) {
        pointed = false;
        break;
      }
    }
    if (pointed) return e;
  }
  return std::nullopt;
}

ThetaBasisResult theta_basis_sections(const ScatteringDiagram& d, const IntVector& lambda, const FiberSpec& spec,
                                      int radius, bool full_fg, const Endpoint& endpoint) {
  ThetaBasisResult result;
  const auto k = static_cast<Eigen::Index>(d.seed.index_count());
  const auto n = static_cast<Eigen::Index>(d.seed.rank);
  IntMatrix drop_m = IntMatrix::Zero(n, k + n);
  drop_m.rightCols(n) = IntMatrix::Identity(n, n);
  const auto splitting = default_splitting(d.seed);
  result.all_sections = true;
  for (const IntVector& m : xi_lambda(d, lambda, radius, endpoint)) {
    const IntVector n0 = spec.section(IntVector(m - lambda));
    Exponent q = to_exponent(m);
    const Exponent tail = to_exponent(n0);
    q.insert(q.end(), tail.begin(), tail.end());
    ThetaSection sec;
    sec.m = m;
    sec.theta = theta(d, q, endpoint).value;
    const auto deg = homogeneous_degree(d.seed, sec.theta);
    if (!deg || *deg != lambda) throw ClusterError(ErrorKind::InvalidInput, "theta section is not of degree lambda");
    sec.on_x = MonomialMap{drop_m, {}}.apply(sec.theta);
    sec.is_section = is_section(d.seed, sec.on_x, lambda);
    sec.on_fiber = restrict_to_X_fiber(sec.on_x, spec, splitting);
    result.all_sections = result.all_sections && sec.is_section;
    result.sections.push_back(std::move(sec));
  }
  std::map<Exponent, Eigen::Index> columns;
  for (const auto& s : result.sections)
    for (const auto& [e, c] : s.on_fiber.numerator().terms()) columns.emplace(e, 0);
  Eigen::Index next = 0;
  for (auto& [e, idx] : columns) idx = next++;
  RatMatrix coeffs = RatMatrix::Zero(static_cast<Eigen::Index>(result.sections.size()), next);
  for (std::size_t i = 0; i < result.sections.size(); ++i) {
    const auto& f = result.sections[i].on_fiber;
    if (!f.denominator().empty()) throw ClusterError(ErrorKind::InvalidInput, "restricted section is not a polynomial");
    for (const auto& [e, c] : f.numerator().terms()) coeffs(static_cast<Eigen::Index>(i), columns.at(e)) = c;
  }
  result.independent = field_rank(coeffs) == coeffs.rows();
  result.claim = full_fg ? "basis (spanning assumed by the caller)" : "linearly independent sections";
  return result;
}

}  // namespace cluster
