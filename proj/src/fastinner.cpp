#include "tincalc/fastinner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "tincalc/errors.hpp"
#include "tincalc/integrate.hpp"
#include "tincalc/poly.hpp"
#include "tincalc/sympoly.hpp"

namespace tincalc {

namespace {

constexpr std::array<std::array<unsigned, 2>, 3> kFactorExp{{{0, 0}, {1, 0}, {0, 1}}};  // 1, x, y
constexpr unsigned kMaxPower = 7;

std::size_t monomial_slot(unsigned i, unsigned j) {
  // (0,0) (1,0) (0,1) (2,0) (1,1) (0,2)
  for (std::size_t k = 0; k < Quadratic::kExponents.size(); ++k)
    if (Quadratic::kExponents[k][0] == i && Quadratic::kExponents[k][1] == j) return k;
  throw std::logic_error("monomial out of range");
}

std::array<unsigned, 2> product_exp(unsigned alpha, unsigned beta) {
  return {kFactorExp[alpha][0] + kFactorExp[beta][0], kFactorExp[alpha][1] + kFactorExp[beta][1]};
}

void powers(const ModField& field, ModField::Elem x, std::array<ModField::Elem, kMaxPower>& out) {
  out[0] = 1;
  for (unsigned k = 1; k < kMaxPower; ++k) out[k] = field.mul(out[k - 1], x);
}

}  // namespace

CliqueEvaluator::CliqueEvaluator(const ModField& field, std::size_t prime_id, GridForm form)
    : field_(field), prime_id_(prime_id), form_(form), inv24_(field.inv(24)) {
  const Elem minus = field.neg(1);
  if (form == GridForm::Difference9) {
    specs_.push_back({minus, 0, 0});
  } else {
    specs_.push_back({1, 1, 2});
    specs_.push_back({1, 2, 1});
    specs_.push_back({minus, 1, 1});
    specs_.push_back({minus, 2, 2});
  }
  for (const auto& [i, j] : Quadratic::kExponents) {
    Numerator num{i, j, {}, {}, {}};
    std::map<std::pair<unsigned, unsigned>, Group> groups;
    for (const auto& [e, c] : wedge_numerator(i, j).terms()) {
      // Variables are (y_l, y_u, s_l, s_u).
      const Elem cm = rat_to_mod(c, field, prime_id);
      num.exps.push_back({e[0], e[1], e[2], e[3]});
      num.coeffs.push_back(cm);
      Group& g = groups[{e[2], e[0]}];
      g.dx = e[2];
      g.dy = e[0];
      g.exps.push_back({e[1], e[3]});
      g.coeffs.push_back(cm);
    }
    for (auto& [key, g] : groups) num.groups.push_back(std::move(g));
    numerators_.push_back(std::move(num));
  }
}

const CliqueEvaluator::Numerator& CliqueEvaluator::numerator(unsigned alpha, unsigned beta) const {
  const auto [i, j] = product_exp(alpha, beta);
  return numerators_[monomial_slot(i, j)];
}

CliqueEvaluator::ModEdge CliqueEvaluator::convert(const CrossingEdge& e) const {
  ModEdge m{};
  m.y = rat_to_mod(e.intercept, field_, prime_id_);
  m.s = rat_to_mod(e.slope, field_, prime_id_);
  const LinearFunc jump = e.upper - e.lower;
  const LinearFunc* fs[3] = {&jump, &e.upper, &e.lower};
  for (std::size_t k = 0; k < 3; ++k) {
    m.funcs[k] = {rat_to_mod(fs[k]->a, field_, prime_id_), rat_to_mod(fs[k]->b, field_, prime_id_),
                  rat_to_mod(fs[k]->c, field_, prime_id_)};
  }
  return m;
}

CliqueEvaluator::Elem CliqueEvaluator::sigma(std::span<const ModEdge> steep, std::span<const ModEdge> shallow,
                                             std::size_t direct_cutover) const {
  if (steep.empty() || shallow.empty()) return 0;
  if (std::min(steep.size(), shallow.size()) <= direct_cutover) return sigma_direct(steep, shallow);
  return sigma_fast(steep, shallow);
}

CliqueEvaluator::Elem CliqueEvaluator::sigma_direct(std::span<const ModEdge> steep,
                                                    std::span<const ModEdge> shallow) const {
  if (form_ == GridForm::Difference9) return sigma_direct_difference(steep, shallow);
  const ModField& F = field_;
  Elem total = 0;
  std::array<std::array<Elem, kMaxPower>, 4> pw;
  std::array<Elem, 6> value;
  for (const ModEdge& l : steep) {
    powers(F, l.y, pw[0]);
    powers(F, l.s, pw[2]);
    for (const ModEdge& u : shallow) {
      const Elem ds = F.sub(u.s, l.s);
      if (ds == 0) throw BadPrime(prime_id_, "slope difference vanishes modulo the prime");
      const Elem inv = F.inv(ds);
      powers(F, u.y, pw[1]);
      powers(F, u.s, pw[3]);
      for (std::size_t k = 0; k < numerators_.size(); ++k) {
        const Numerator& num = numerators_[k];
        Elem v = 0;
        for (std::size_t t = 0; t < num.coeffs.size(); ++t) {
          const auto& e = num.exps[t];
          Elem m = F.mul(num.coeffs[t], F.mul(F.mul(pw[0][e[0]], pw[1][e[1]]), F.mul(pw[2][e[2]], pw[3][e[3]])));
          v = F.add(v, m);
        }
        value[k] = F.mul(v, F.pow(inv, num.i + num.j + 1));
      }
      for (const Spec& sp : specs_) {
        const auto& vl = l.funcs[sp.steep_func];
        const auto& wu = u.funcs[sp.shallow_func];
        Elem acc = 0;
        for (unsigned a = 0; a < 3; ++a) {
          Elem inner = 0;
          for (unsigned b = 0; b < 3; ++b) {
            const auto [i, j] = product_exp(a, b);
            inner = F.add(inner, F.mul(wu[b], value[monomial_slot(i, j)]));
          }
          acc = F.add(acc, F.mul(vl[a], inner));
        }
        total = F.add(total, F.mul(sp.sign, acc));
      }
    }
  }
  return total;
}

// Both jumps vanish on their own edge line, so the wedge integral of their
// product collapses to c_l c_u (y_u - y_l)^4 / (24 (s_l - s_u)).
CliqueEvaluator::Elem CliqueEvaluator::sigma_direct_difference(std::span<const ModEdge> steep,
                                                               std::span<const ModEdge> shallow) const {
  const ModField& F = field_;
  const std::size_t n = steep.size() * shallow.size();
  std::vector<Elem> prefix(n + 1, 1);
  std::size_t k = 0;
  for (const ModEdge& l : steep)
    for (const ModEdge& u : shallow) {
      const Elem ds = F.sub(l.s, u.s);
      if (ds == 0) throw BadPrime(prime_id_, "slope difference vanishes modulo the prime");
      prefix[k + 1] = F.mul(prefix[k], ds);
      ++k;
    }
  Elem inv = F.inv(prefix[n]);
  Elem total = 0;
  for (std::size_t a = steep.size(); a-- > 0;) {
    const ModEdge& l = steep[a];
    for (std::size_t b = shallow.size(); b-- > 0;) {
      const ModEdge& u = shallow[b];
      --k;
      const Elem ds = F.sub(l.s, u.s);
      const Elem inv_ds = F.mul(inv, prefix[k]);
      inv = F.mul(inv, ds);
      const Elem dy2 = F.mul(F.sub(u.y, l.y), F.sub(u.y, l.y));
      const Elem num = F.mul(F.mul(l.funcs[0][2], u.funcs[0][2]), F.mul(dy2, dy2));
      total = F.add(total, F.mul(num, inv_ds));
    }
  }
  return F.mul(total, inv24_);
}

CliqueEvaluator::Elem CliqueEvaluator::sigma_fast(std::span<const ModEdge> steep,
                                                  std::span<const ModEdge> shallow) const {
  const ModField& F = field_;
  const std::size_t nu = shallow.size();
  std::vector<Elem> poles(nu);
  std::vector<std::array<Elem, kMaxPower>> ypow(nu), spow(nu);
  for (std::size_t u = 0; u < nu; ++u) {
    poles[u] = shallow[u].s;
    powers(F, shallow[u].y, ypow[u]);
    powers(F, shallow[u].s, spow[u]);
  }
  std::vector<Elem> points(steep.size());
  for (std::size_t l = 0; l < steep.size(); ++l) points[l] = steep[l].s;
  const SubproductTree<ModField> tree(F, points);

  // acc[l] accumulates the clique sum for steep edge l.
  std::vector<Elem> acc(steep.size(), 0);
  std::vector<std::array<Elem, kMaxPower>> lypow(steep.size());
  for (std::size_t l = 0; l < steep.size(); ++l) powers(F, steep[l].y, lypow[l]);

  for (unsigned d = 1; d <= 3; ++d) {
    struct Channel {
      std::size_t spec;
      unsigned alpha, beta;
      const Group* group;
    };
    std::vector<Channel> channels;
    std::vector<std::vector<Elem>> weights;
    for (std::size_t s = 0; s < specs_.size(); ++s)
      for (unsigned a = 0; a < 3; ++a)
        for (unsigned b = 0; b < 3; ++b) {
          const Numerator& num = numerator(a, b);
          if (num.i + num.j + 1 != d) continue;
          for (const Group& g : num.groups) {
            std::vector<Elem> w(nu);
            for (std::size_t u = 0; u < nu; ++u) {
              Elem c = 0;
              for (std::size_t t = 0; t < g.coeffs.size(); ++t)
                c = F.add(c, F.mul(g.coeffs[t], F.mul(ypow[u][g.exps[t][0]], spow[u][g.exps[t][1]])));
              w[u] = F.mul(F.mul(specs_[s].sign, shallow[u].funcs[specs_[s].shallow_func][b]), c);
            }
            channels.push_back({s, a, b, &g});
            weights.push_back(std::move(w));
          }
        }
    const FracBatch<ModField> batch = sum_fractions_batch(F, poles, weights, d);

    // A(spec, alpha, beta, dy) = sum over dx of X^dx N_channel.
    std::map<std::array<unsigned, 4>, Poly<ModField>> assembled;
    for (std::size_t c = 0; c < channels.size(); ++c) {
      const Channel& ch = channels[c];
      Poly<ModField> shifted(ch.group->dx, 0);
      shifted.insert(shifted.end(), batch.N[c].begin(), batch.N[c].end());
      trim(F, shifted);
      auto& slot = assembled[{static_cast<unsigned>(ch.spec), ch.alpha, ch.beta, ch.group->dy}];
      slot = poly_add(F, slot, shifted);
    }
    const std::vector<Elem> dvals = tree.evaluate(batch.D);
    std::vector<Elem> part(steep.size(), 0);
    for (const auto& [key, poly] : assembled) {
      const auto vals = tree.evaluate(poly);
      const auto [s, a, b, dy] = key;
      (void)b;
      for (std::size_t l = 0; l < steep.size(); ++l) {
        const Elem v = F.mul(steep[l].funcs[specs_[s].steep_func][a], F.mul(vals[l], lypow[l][dy]));
        part[l] = F.add(part[l], v);
      }
    }
    for (std::size_t l = 0; l < steep.size(); ++l) {
      if (dvals[l] == 0) throw BadPrime(prime_id_, "fraction denominator vanishes modulo the prime");
      Elem term = F.mul(part[l], F.inv(dvals[l]));
      if (d % 2 == 1) term = F.neg(term);
      acc[l] = F.add(acc[l], term);
    }
  }
  Elem total = 0;
  for (Elem v : acc) total = F.add(total, v);
  return total;
}

Fp clique_sigma(const std::vector<CrossingEdge>& red, const std::vector<CrossingEdge>& blue, const Clique& c,
                const PrimeBasket& basket, std::size_t prime_id, GridForm form, std::size_t direct_cutover) {
  const CliqueEvaluator ev(basket.field(prime_id), prime_id, form);
  std::vector<CliqueEvaluator::ModEdge> r, b;
  for (std::size_t i : c.red) r.push_back(ev.convert(red.at(i)));
  for (std::size_t i : c.blue) b.push_back(ev.convert(blue.at(i)));
  const auto value = c.red_lower ? ev.sigma(b, r, direct_cutover) : ev.sigma(r, b, direct_cutover);
  return {value, prime_id};
}

unsigned default_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TINCALC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

namespace {

struct CrossingSetup {
  std::vector<CrossingEdge> red, blue;
  CliqueFamily family;
  // Distinct rationals of all edges; each edge refers to (y, s, upper, lower).
  std::vector<const Scalar*> values;
  std::vector<std::array<std::uint32_t, 8>> red_refs, blue_refs;

  void index_values() {
    std::map<Scalar, std::uint32_t> seen;
    auto ref = [&](const Scalar& v) {
      const auto [it, fresh] = seen.emplace(v, static_cast<std::uint32_t>(values.size()));
      if (fresh) values.push_back(&v);
      return it->second;
    };
    auto refs = [&](const std::vector<CrossingEdge>& edges, std::vector<std::array<std::uint32_t, 8>>& out) {
      for (const auto& e : edges)
        out.push_back({ref(e.intercept), ref(e.slope), ref(e.upper.a), ref(e.upper.b), ref(e.upper.c), ref(e.lower.a),
                       ref(e.lower.b), ref(e.lower.c)});
    };
    refs(red, red_refs);
    refs(blue, blue_refs);
  }
};

std::vector<CliqueEvaluator::ModEdge> convert_refs(const ModField& F, const std::vector<std::uint64_t>& mods,
                                                   const std::vector<std::array<std::uint32_t, 8>>& refs) {
  std::vector<CliqueEvaluator::ModEdge> out(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const auto& r = refs[i];
    auto& e = out[i];
    e.y = mods[r[0]];
    e.s = mods[r[1]];
    e.funcs[1] = {mods[r[2]], mods[r[3]], mods[r[4]]};
    e.funcs[2] = {mods[r[5]], mods[r[6]], mods[r[7]]};
    for (std::size_t k = 0; k < 3; ++k) e.funcs[0][k] = F.sub(e.funcs[1][k], e.funcs[2][k]);
  }
  return out;
}

struct PassResult {
  std::uint64_t value = 0;
  std::uint64_t ops = 0;
  bool bad = false;
  std::string reason;
};

PassResult run_pass(const CrossingSetup& setup, const PrimeBasket& basket, std::size_t id, const FastOptions& opt) {
  PassResult out;
  const ops::Scope scope;
  try {
    const ModField& F = basket.field(id);
    const CliqueEvaluator ev(F, id, opt.form);
    const auto mods = rat_to_mod_batch(setup.values, F, id);
    const auto red = convert_refs(F, mods, setup.red_refs);
    const auto blue = convert_refs(F, mods, setup.blue_refs);
    std::uint64_t total = 0;
    std::vector<CliqueEvaluator::ModEdge> r, b;
    for (const Clique& c : setup.family.cliques) {
      r.clear();
      b.clear();
      for (std::size_t i : c.red) r.push_back(red[i]);
      for (std::size_t i : c.blue) b.push_back(blue[i]);
      const auto v = c.red_lower ? ev.sigma(b, r, opt.direct_cutover) : ev.sigma(r, b, opt.direct_cutover);
      total = F.add(total, v);
    }
    out.value = total;
  } catch (const BadPrime& e) {
    out.bad = true;
    out.reason = e.what();
  }
  out.ops = scope.elapsed();
  return out;
}

std::size_t estimate_primes(const CrossingSetup& setup, unsigned prime_bits) {
  // The crossing sum's denominator picks up at most one slope difference per
  // crossing and usually far less, since differences repeat. Undershooting
  // only costs a doubling.
  std::size_t slope_bits = 0, count = 0;
  for (const auto* side : {&setup.red, &setup.blue})
    for (const auto& e : *side) {
      slope_bits += bit_size(e.slope);
      ++count;
    }
  const double avg = count ? static_cast<double>(slope_bits) / static_cast<double>(count) : 0.0;
  const double bits = static_cast<double>(setup.family.pair_count()) * (avg + 4.0) + 128.0;
  return std::max<std::size_t>(3, static_cast<std::size_t>(bits / (prime_bits - 1)) + 2);
}

}  // namespace

FastResult inner_product_fast(const Tin& f, const Tin& g, const FastOptions& opt) {
  FastResult res;
  const NormalizedPair np = normalize_pair(f, g, opt.normalize_seed);

  const ops::Scope vertex_scope;
  res.vertex_sum = vertex_term_sum(np.f, np.g);
  const std::uint64_t vertex_ops = vertex_scope.elapsed();

  CrossingSetup setup;
  {
    const auto fe = build_edge_data(np.f);
    const auto ge = build_edge_data(np.g);
    std::vector<std::size_t> fid, gid;
    const auto fs = interior_segments(np.f, fe, &fid);
    const auto gs = interior_segments(np.g, ge, &gid);
    for (std::size_t i : fid) setup.red.push_back(CrossingEdge::from(fe[i]));
    for (std::size_t i : gid) setup.blue.push_back(CrossingEdge::from(ge[i]));
    setup.family = build_clique_cover(fs, gs);
  }
  setup.index_values();
  std::sort(setup.family.cliques.begin(), setup.family.cliques.end(), [](const Clique& a, const Clique& b) {
    return a.red.size() * a.blue.size() > b.red.size() * b.blue.size();
  });
  res.cliques = setup.family.cliques.size();
  res.clique_size = setup.family.total_size();
  res.crossings = setup.family.pair_count();

  if (res.crossings == 0) {
    res.edge_sum = 0;
    res.value = res.vertex_sum;
    res.field_ops = res.field_ops_total = vertex_ops;
    return res;
  }

  const std::size_t initial = opt.primes ? std::max<std::size_t>(opt.primes, 2) : estimate_primes(setup, opt.prime_bits);
  PrimeBasket basket(initial, opt.prime_bits);
  std::vector<std::optional<std::uint64_t>> residues;
  std::vector<std::uint64_t> pass_ops;
  const unsigned threads = opt.threads ? opt.threads : default_threads();
  std::uint64_t first_pass_ops = 0;
  bool have_first = false;

  for (;;) {
    std::vector<std::size_t> pending;
    for (std::size_t id : basket.active())
      if (id >= residues.size() || !residues[id]) pending.push_back(id);
    residues.resize(basket.size());
    pass_ops.resize(basket.size(), 0);

    std::vector<PassResult> results(pending.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k; (k = next.fetch_add(1)) < pending.size();) results[k] = run_pass(setup, basket, pending[k], opt);
    };
    const unsigned nthreads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pending.size())));
    if (nthreads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    std::size_t lost = 0;
    for (std::size_t k = 0; k < pending.size(); ++k) {
      const std::size_t id = pending[k];
      pass_ops[id] = results[k].ops;
      res.field_ops_total += results[k].ops;
      if (results[k].bad) {
        basket.discard(id, results[k].reason);
        ++lost;
        continue;
      }
      residues[id] = results[k].value;
      if (!have_first) {
        first_pass_ops = results[k].ops;
        have_first = true;
      }
    }
    if (lost) {
      basket.grow(basket.size() + lost);
      continue;
    }
    try {
      res.edge_sum = crt_reconstruct(residues, basket);
      break;
    } catch (const InsufficientPrimes&) {
      basket.grow(2 * basket.size());
    }
  }
  for (std::size_t id = 0; id < basket.size(); ++id) {
    if (!basket.ok(id))
      ++res.primes_discarded;
    else if (id < residues.size() && residues[id])
      ++res.primes_used;
  }
  res.value = res.vertex_sum + res.edge_sum;
  res.field_ops = vertex_ops + first_pass_ops;
  res.field_ops_total += vertex_ops;
  return res;
}

}  // namespace tincalc
