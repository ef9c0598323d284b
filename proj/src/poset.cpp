#include "bruhat/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace bruhat::poset {

GradedPoset::GradedPoset(std::vector<int> ranks, std::vector<std::pair<int, int>> covers,
                         std::vector<std::string> labels)
    : rank_(std::move(ranks)), label_(std::move(labels)), covers_(std::move(covers)) {
  int n = size();
  if (n == 0) throw std::invalid_argument("poset must be nonempty");
  if (label_.empty()) {
    label_.reserve(n);
    for (int i = 0; i < n; ++i) label_.push_back(std::to_string(i));
  }
  if (static_cast<int>(label_.size()) != n)
    throw std::invalid_argument("label count does not match element count");
  for (int r : rank_) {
    if (r < 0) throw std::invalid_argument("negative rank");
    height_ = std::max(height_, r);
  }

  std::sort(covers_.begin(), covers_.end());
  covers_.erase(std::unique(covers_.begin(), covers_.end()), covers_.end());
  up_.assign(n, {});
  down_.assign(n, {});
  for (const auto& [a, b] : covers_) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("cover out of range");
    if (rank_[b] != rank_[a] + 1) throw std::invalid_argument("cover must step rank by one");
    up_[a].push_back(b);
    down_[b].push_back(a);
  }

  for (int x = 0; x < n; ++x) {
    if (down_[x].empty() && rank_[x] != 0)
      throw std::invalid_argument("minimal element above rank 0");
    if (up_[x].empty() && rank_[x] != height_)
      throw std::invalid_argument("maximal element below the top rank");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return rank_[a] > rank_[b]; });
  above_.assign(n, Bitset(n));
  for (int x : order) {
    above_[x].set(x);
    for (int y : up_[x]) above_[x] |= above_[y];
  }

  int nbottom = 0, ntop = 0;
  for (int x = 0; x < n; ++x) {
    if (rank_[x] == 0) { ++nbottom; bottom_ = x; }
    if (rank_[x] == height_) { ++ntop; top_ = x; }
  }
  if (nbottom != 1) bottom_ = -1;
  if (ntop != 1) top_ = -1;
}

int GradedPoset::bottom() const {
  if (bottom_ < 0) throw std::logic_error("poset has no least element");
  return bottom_;
}

int GradedPoset::top() const {
  if (top_ < 0) throw std::logic_error("poset has no greatest element");
  return top_;
}

std::vector<int> GradedPoset::elements_of_rank(int r) const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x)
    if (rank_[x] == r) out.push_back(x);
  return out;
}

std::vector<int> GradedPoset::open_interval(int x, int y) const {
  std::vector<int> out;
  for (int z = 0; z < size(); ++z)
    if (less(x, z) && less(z, y)) out.push_back(z);
  return out;
}

Json GradedPoset::to_json() const {
  Json elems = Json::array();
  for (int x = 0; x < size(); ++x)
    elems.push_back(Json{{"id", x}, {"rank", rank_[x]}, {"label", label_[x]}});
  Json covers = Json::array();
  for (const auto& [a, b] : covers_) covers.push_back(Json::array({a, b}));
  return Json{{"size", size()}, {"height", height_}, {"elements", elems}, {"covers", covers}};
}

GradedPoset GradedPoset::from_json(const Json& j) {
  int n = j.at("size").get<int>();
  std::vector<int> ranks(n);
  std::vector<std::string> labels(n);
  for (const auto& e : j.at("elements")) {
    int id = e.at("id").get<int>();
    if (id < 0 || id >= n) throw std::invalid_argument("element id out of range");
    ranks[id] = e.at("rank").get<int>();
    labels[id] = e.at("label").get<std::string>();
  }
  std::vector<std::pair<int, int>> covers;
  for (const auto& c : j.at("covers"))
    covers.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
  return GradedPoset(std::move(ranks), std::move(covers), std::move(labels));
}

GradedPoset poset_from_relation(const std::vector<Bitset>& rel,
                                std::vector<std::string> labels) {
  int n = static_cast<int>(rel.size());
  if (n == 0) throw std::invalid_argument("empty relation");
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(rel[x].size()) != n) throw std::invalid_argument("ragged relation");
    if (!rel[x].test(x)) throw std::invalid_argument("relation must be reflexive");
  }
  std::vector<Bitset> below(n, Bitset(n));  // columns: below[y][x] iff x <= y
  for (int x = 0; x < n; ++x)
    for (int y = rel[x].find_first(); y != static_cast<int>(Bitset::npos);
         y = rel[x].find_next(y)) {
      if (x != y && rel[y].test(x)) throw std::invalid_argument("relation is not antisymmetric");
      if (!rel[y].is_subset_of(rel[x])) throw std::invalid_argument("relation is not transitive");
      below[y].set(x);
    }

  std::vector<std::pair<int, int>> covers;
  for (int a = 0; a < n; ++a)
    for (int b = rel[a].find_first(); b != static_cast<int>(Bitset::npos);
         b = rel[a].find_next(b)) {
      if (a == b) continue;
      Bitset mid = rel[a] & below[b];
      if (mid.count() == 2) covers.emplace_back(a, b);  // only a and b between them
    }

  // Longest-chain ranks; |below| is a topological key since x < y forces
  // below[x] to be a proper subset of below[y].
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return below[a].count() < below[b].count(); });
  std::vector<int> ranks(n, 0);
  std::vector<std::vector<int>> down(n);
  for (const auto& [a, b] : covers) down[b].push_back(a);
  for (int x : order)
    for (int a : down[x]) ranks[x] = std::max(ranks[x], ranks[a] + 1);

  return GradedPoset(std::move(ranks), std::move(covers), std::move(labels));
}

GradedPoset chain(int length) {
  if (length < 0) throw std::invalid_argument("negative chain length");
  std::vector<int> ranks(length + 1);
  std::iota(ranks.begin(), ranks.end(), 0);
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < length; ++i) covers.emplace_back(i, i + 1);
  return GradedPoset(std::move(ranks), std::move(covers));
}

long long mobius(const GradedPoset& p, int x, int y) {
  if (!p.leq(x, y)) return 0;
  std::vector<int> zs;
  for (int z = 0; z < p.size(); ++z)
    if (p.leq(x, z) && p.leq(z, y)) zs.push_back(z);
  std::sort(zs.begin(), zs.end(), [&](int a, int b) { return p.rank(a) < p.rank(b); });
  std::unordered_map<int, long long> mu;
  for (int z : zs) {
    if (z == x) {
      mu[z] = 1;
      continue;
    }
    long long acc = 0;
    for (int t : zs)
      if (p.less(t, z)) acc = checked_add(acc, mu[t]);
    mu[z] = -acc;
  }
  return mu[y];
}

bool is_eulerian(const GradedPoset& p) {
  int n = p.size();
  std::vector<int> byrank(n);
  std::iota(byrank.begin(), byrank.end(), 0);
  std::sort(byrank.begin(), byrank.end(),
            [&](int a, int b) { return p.rank(a) < p.rank(b); });
  std::vector<long long> mu(n);
  for (int x = 0; x < n; ++x) {
    for (int z : byrank) {
      if (!p.leq(x, z)) continue;
      if (z == x) {
        mu[z] = 1;
      } else {
        long long acc = 0;
        for (int t : byrank) {
          if (p.rank(t) >= p.rank(z)) break;
          if (p.leq(x, t) && p.less(t, z)) acc = checked_add(acc, mu[t]);
        }
        mu[z] = -acc;
      }
      int gap = p.rank(z) - p.rank(x);
      if (mu[z] != (gap % 2 == 0 ? 1 : -1)) return false;
    }
  }
  return true;
}

bool is_thin(const GradedPoset& p) {
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y) {
      if (p.rank(y) != p.rank(x) + 2 || !p.leq(x, y)) continue;
      int between = 0;
      for (int z : p.upper_covers(x))
        if (p.leq(z, y)) ++between;
      if (between != 2) return false;
    }
  return true;
}

SubPoset closed_interval(const GradedPoset& p, int x, int y) {
  if (!p.leq(x, y)) throw std::invalid_argument("not an interval: x is not below y");
  SubPoset out;
  for (int z = 0; z < p.size(); ++z)
    if (p.leq(x, z) && p.leq(z, y)) out.orig.push_back(z);
  std::vector<int> newid(p.size(), -1);
  for (std::size_t i = 0; i < out.orig.size(); ++i) newid[out.orig[i]] = static_cast<int>(i);
  std::vector<int> ranks;
  std::vector<std::string> labels;
  for (int z : out.orig) {
    ranks.push_back(p.rank(z) - p.rank(x));
    labels.push_back(p.label(z));
  }
  std::vector<std::pair<int, int>> covers;
  for (const auto& [a, b] : p.covers())
    if (newid[a] >= 0 && newid[b] >= 0) covers.emplace_back(newid[a], newid[b]);
  out.poset = GradedPoset(std::move(ranks), std::move(covers), std::move(labels));
  return out;
}

GradedPoset product(const GradedPoset& p, const GradedPoset& q) {
  int np = p.size(), nq = q.size();
  std::vector<int> ranks(static_cast<std::size_t>(np) * nq);
  std::vector<std::string> labels(ranks.size());
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < nq; ++b) {
      ranks[a * nq + b] = p.rank(a) + q.rank(b);
      labels[a * nq + b] = "(" + p.label(a) + "," + q.label(b) + ")";
    }
  std::vector<std::pair<int, int>> covers;
  for (const auto& [a, a2] : p.covers())
    for (int b = 0; b < nq; ++b) covers.emplace_back(a * nq + b, a2 * nq + b);
  for (const auto& [b, b2] : q.covers())
    for (int a = 0; a < np; ++a) covers.emplace_back(a * nq + b, a * nq + b2);
  return GradedPoset(std::move(ranks), std::move(covers), std::move(labels));
}

GradedPoset pyramid(const GradedPoset& p) { return product(p, chain(1)); }

ZipperCheck is_zipper(const GradedPoset& p, int x, int y, int z) {
  ZipperCheck out;
  if (x == y || x == z || y == z) {
    out.reason = "x, y, z must be distinct";
    return out;
  }
  std::vector<int> dz = p.lower_covers(z);
  std::sort(dz.begin(), dz.end());
  std::vector<int> xy{std::min(x, y), std::max(x, y)};
  if (dz != xy) {
    out.reason = "z does not cover exactly x and y";
    return out;
  }
  Bitset common = p.up_set(x) & p.up_set(y);
  if (!common.is_subset_of(p.up_set(z))) {
    out.reason = "z is not the unique join of x and y";
    return out;
  }
  for (int a = 0; a < p.size(); ++a) {
    if (a == x || a == y) continue;
    if (p.leq(a, x) != p.leq(a, y)) {
      out.reason = "x and y have different strict down-sets";
      return out;
    }
  }
  out.ok = true;
  out.proper = !p.upper_covers(z).empty();
  return out;
}

ZipResult zip(const GradedPoset& p, int x, int y, int z) {
  ZipperCheck check = is_zipper(p, x, y, z);
  if (!check.ok) throw std::invalid_argument("not a zipper: " + check.reason);

  int n = p.size();
  int nn = n - 2;
  int merged = nn - 1;
  std::vector<int> old_to_new(n, -1);
  int next = 0;
  for (int a = 0; a < n; ++a) {
    if (a == x || a == y) old_to_new[a] = merged;
    else if (a != z) old_to_new[a] = next++;
  }

  std::vector<Bitset> rel(nn, Bitset(nn));
  std::vector<std::string> labels(nn);
  for (int a = 0; a < n; ++a) {
    if (a == z || a == x || a == y) continue;
    labels[old_to_new[a]] = p.label(a);
  }
  labels[merged] = "(" + p.label(x) + "," + p.label(y) + ")";

  auto survives = [&](int a) { return a != x && a != y && a != z; };
  for (int a = 0; a < n; ++a) {
    if (!survives(a)) continue;
    for (int b = 0; b < n; ++b) {
      if (!survives(b)) continue;
      if (p.leq(a, b)) rel[old_to_new[a]].set(old_to_new[b]);
    }
    if (p.leq(a, x)) rel[old_to_new[a]].set(merged);
    if (p.leq(x, a) || p.leq(y, a)) rel[merged].set(old_to_new[a]);
  }
  rel[merged].set(merged);

  ZipResult out{poset_from_relation(rel, std::move(labels)), std::move(old_to_new), merged};
  if (out.poset.rank(merged) != p.rank(x))
    throw std::logic_error("zip changed the rank of the merged element");
  return out;
}

ShaveResult shave(const GradedPoset& p, int atom) {
  if (!p.has_bounds()) throw std::invalid_argument("shaving needs a bounded poset");
  if (p.rank(atom) != 1) throw std::invalid_argument("shaving is defined at an atom");
  if (p.height() < 2) throw std::invalid_argument("poset is too short to shave");
  int h0 = p.bottom(), h1 = p.top();

  ShaveResult out;
  out.bottom = 0;
  out.origin.emplace_back(h0, 0);
  for (int v = 0; v < p.size(); ++v)
    if (p.less(atom, v)) out.origin.emplace_back(v, 0);
  for (int v = 0; v < p.size(); ++v)
    if (v != h0 && v != atom) out.origin.emplace_back(v, 1);

  int n = static_cast<int>(out.origin.size());
  std::vector<Bitset> rel(n, Bitset(n));
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    auto [v, part] = out.origin[i];
    labels[i] = "(" + p.label(v) + "," + std::to_string(part) + ")";
    for (int j = 0; j < n; ++j) {
      auto [v2, part2] = out.origin[j];
      if (p.leq(v, v2) && part <= part2) rel[i].set(j);
    }
  }
  out.poset = poset_from_relation(rel, std::move(labels));

  // Cross-check: zipping (atom,0),(h0,a),(atom,a) inside p x [h0,a] and
  // cutting at (h1,a) must give the same poset.
  GradedPoset pr = product(p, closed_interval(p, h0, atom).poset);
  int x = atom * 2 + 0, y = h0 * 2 + 1, z = atom * 2 + 1;
  ZipResult zr = zip(pr, x, y, z);
  SubPoset cut = closed_interval(zr.poset, zr.merged, zr.old_to_new[h1 * 2 + 1]);
  if (!is_isomorphic(out.poset, cut.poset))
    throw std::logic_error("the two shaving constructions disagree");
  return out;
}

bool is_order_projection(const GradedPoset& p, const GradedPoset& q,
                         const std::vector<int>& eta) {
  if (static_cast<int>(eta.size()) != p.size()) return false;
  std::vector<bool> hit(q.size(), false);
  for (int a = 0; a < p.size(); ++a) {
    if (eta[a] < 0 || eta[a] >= q.size()) return false;
    hit[eta[a]] = true;
  }
  for (bool h : hit)
    if (!h) return false;
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      if (p.leq(a, b) && !q.leq(eta[a], eta[b])) return false;
  // Every relation downstairs lifts: c <= d in q must come from some a <= b
  // with eta(a) = c, eta(b) = d.
  for (int c = 0; c < q.size(); ++c)
    for (int d = 0; d < q.size(); ++d) {
      if (!q.leq(c, d)) continue;
      bool lifted = false;
      for (int a = 0; a < p.size() && !lifted; ++a) {
        if (eta[a] != c) continue;
        for (int b = 0; b < p.size() && !lifted; ++b)
          if (eta[b] == d && p.leq(a, b)) lifted = true;
      }
      if (!lifted) return false;
    }
  return true;
}

GradedPoset fiber_poset(const GradedPoset& p, const GradedPoset& q,
                        const std::vector<int>& eta) {
  if (static_cast<int>(eta.size()) != p.size())
    throw std::invalid_argument("map size does not match poset");
  std::map<int, std::vector<int>> fibers;
  for (int a = 0; a < p.size(); ++a) {
    if (eta[a] < 0 || eta[a] >= q.size()) throw std::invalid_argument("map value out of range");
    fibers[eta[a]].push_back(a);
  }
  std::vector<int> keys;
  std::vector<std::string> labels;
  for (const auto& [c, members] : fibers) {
    keys.push_back(c);
    std::string l = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) l += ",";
      l += p.label(members[i]);
    }
    labels.push_back(l + "}");
  }
  int n = static_cast<int>(keys.size());
  std::vector<Bitset> rel(n, Bitset(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        rel[i].set(j);
        continue;
      }
      bool related = false;
      for (int a : fibers[keys[i]])
        for (int b : fibers[keys[j]])
          if (p.leq(a, b)) related = true;
      if (related) rel[i].set(j);
    }
  return poset_from_relation(rel, std::move(labels));  // validates the order axioms
}

namespace {

std::uint64_t mix_hash(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::vector<std::uint64_t> refine_signatures(const GradedPoset& p) {
  int n = p.size();
  std::vector<std::uint64_t> sig(n);
  for (int x = 0; x < n; ++x)
    sig[x] = mix_hash(mix_hash(mix_hash(7, p.rank(x)), p.upper_covers(x).size()),
                      p.lower_covers(x).size());
  for (int round = 0; round < 3; ++round) {
    std::vector<std::uint64_t> next(n);
    for (int x = 0; x < n; ++x) {
      std::vector<std::uint64_t> ups, downs;
      for (int y : p.upper_covers(x)) ups.push_back(sig[y]);
      for (int y : p.lower_covers(x)) downs.push_back(sig[y]);
      std::sort(ups.begin(), ups.end());
      std::sort(downs.begin(), downs.end());
      std::uint64_t h = mix_hash(11, sig[x]);
      for (auto v : ups) h = mix_hash(h, v);
      h = mix_hash(h, 13);
      for (auto v : downs) h = mix_hash(h, v);
      next[x] = h;
    }
    sig = std::move(next);
  }
  return sig;
}

}  // namespace

std::optional<std::vector<int>> isomorphism(const GradedPoset& p, const GradedPoset& q) {
  int n = p.size();
  if (n != q.size() || p.height() != q.height() || p.covers().size() != q.covers().size())
    return std::nullopt;

  auto sp = refine_signatures(p);
  auto sq = refine_signatures(q);
  {
    auto a = sp, b = sq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  std::unordered_map<std::uint64_t, std::vector<int>> classes;
  for (int v = 0; v < n; ++v) classes[sq[v]].push_back(v);
  std::vector<const std::vector<int>*> cand(n);
  for (int u = 0; u < n; ++u) {
    auto it = classes.find(sp[u]);
    if (it == classes.end()) return std::nullopt;
    cand[u] = &it->second;
  }

  std::vector<Bitset> qup(n, Bitset(n)), qdown(n, Bitset(n));
  for (const auto& [a, b] : q.covers()) {
    qup[a].set(b);
    qdown[b].set(a);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (cand[a]->size() != cand[b]->size()) return cand[a]->size() < cand[b]->size();
    return a < b;
  });

  std::vector<int> pi(n, -1);
  std::vector<bool> used(n, false);
  auto consistent = [&](int u, int v) {
    if (p.upper_covers(u).size() != qup[v].count()) return false;
    if (p.lower_covers(u).size() != qdown[v].count()) return false;
    for (int uc : p.upper_covers(u))
      if (pi[uc] >= 0 && !qup[v].test(pi[uc])) return false;
    for (int dc : p.lower_covers(u))
      if (pi[dc] >= 0 && !qdown[v].test(pi[dc])) return false;
    return true;
  };
  auto dfs = [&](auto&& self, int depth) -> bool {
    if (depth == n) return true;
    int u = order[depth];
    for (int v : *cand[u]) {
      if (used[v] || !consistent(u, v)) continue;
      pi[u] = v;
      used[v] = true;
      if (self(self, depth + 1)) return true;
      pi[u] = -1;
      used[v] = false;
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;

  // Cover counts match and every cover maps to a cover, so pi is exact.
  for (const auto& [a, b] : p.covers())
    if (!qup[pi[a]].test(pi[b])) throw std::logic_error("isomorphism search broke");
  return pi;
}

OrderComplexStats order_complex_stats(const GradedPoset& p) {
  if (!p.has_bounds()) throw std::invalid_argument("order complex needs a bounded poset");
  std::vector<int> open;
  for (int x = 0; x < p.size(); ++x)
    if (x != p.bottom() && x != p.top()) open.push_back(x);
  std::sort(open.begin(), open.end(), [&](int a, int b) { return p.rank(a) < p.rank(b); });

  int maxlen = 0;
  std::unordered_map<int, std::vector<long long>> cnt;  // cnt[x][k] = chains of k elements ending at x
  for (std::size_t i = 0; i < open.size(); ++i) {
    int x = open[i];
    std::vector<long long> cx{0, 1};  // index by chain size
    for (std::size_t j = 0; j < i; ++j) {
      int y = open[j];
      if (!p.less(y, x)) continue;
      const auto& cy = cnt[y];
      if (cx.size() < cy.size() + 1) cx.resize(cy.size() + 1, 0);
      for (std::size_t k = 1; k < cy.size(); ++k)
        cx[k + 1] = checked_add(cx[k + 1], cy[k]);
    }
    maxlen = std::max(maxlen, static_cast<int>(cx.size()) - 1);
    cnt[x] = std::move(cx);
  }

  OrderComplexStats out;
  out.faces.assign(maxlen, 0);
  for (const auto& [x, cx] : cnt)
    for (std::size_t k = 1; k < cx.size(); ++k)
      out.faces[k - 1] = checked_add(out.faces[k - 1], cx[k]);
  out.reduced_euler = -1;
  for (std::size_t i = 0; i < out.faces.size(); ++i)
    out.reduced_euler += (i % 2 == 0 ? out.faces[i] : -out.faces[i]);
  return out;
}

}  // namespace bruhat::poset
